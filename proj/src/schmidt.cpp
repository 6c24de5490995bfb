#include "entsort/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entsort/error.hpp"

namespace entsort {

namespace {

std::size_t numerical_rank(const RealVector& singular, const Tolerances& tol) {
  if (singular.size() == 0 || !(singular(0) > 0.0)) return 0;
  const double cutoff = tol.rank * singular(0);
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(singular.size()) && singular(static_cast<Eigen::Index>(r)) > cutoff) ++r;
  return r;
}

void check_basis(const std::vector<ComplexMatrix>& basis, std::size_t d, const char* which) {
  const auto n = static_cast<Eigen::Index>(d);
  if (basis.size() != d * d)
    throw DimensionError(std::string("schmidt_operator: basis ") + which + " needs " +
                         std::to_string(d * d) + " members");
  for (const auto& f : basis)
    if (f.rows() != n || f.cols() != n)
      throw DimensionError(std::string("schmidt_operator: basis ") + which + " member has wrong shape");
}

bool all_hermitean(const std::vector<ComplexMatrix>& basis, const Tolerances& tol) {
  return std::all_of(basis.begin(), basis.end(),
                     [&](const ComplexMatrix& f) { return hermiticity_defect(f) <= tol.ortho; });
}

// Columns are the row-major vectorizations of the basis members.
ComplexMatrix stack_vectorized(const std::vector<ComplexMatrix>& basis) {
  const Eigen::Index d = basis.front().rows();
  ComplexMatrix out(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) out(a * d + b, static_cast<Eigen::Index>(k)) = basis[k](a, b);
  return out;
}

// Realignment: R(a*dA + b, c*dB + e) = rho(a*dB + c, b*dB + e), so that
// tr((F^A (x) F^B)^H rho) = vec(F^A)^H R conj(vec(F^B)).
ComplexMatrix realign(const ComplexMatrix& rho, Eigen::Index da, Eigen::Index db) {
  ComplexMatrix r(da * da, db * db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < da; ++b)
      for (Eigen::Index c = 0; c < db; ++c)
        for (Eigen::Index e = 0; e < db; ++e) r(a * da + b, c * db + e) = rho(a * db + c, b * db + e);
  return r;
}

bool semidefinite(const ComplexMatrix& m, double sign, const Tolerances& tol) {
  if (hermiticity_defect(m) > tol.ortho) return false;
  const RealVector values = eigh(m, tol).values;
  const double slack = tol.recon * std::max(1.0, values.cwiseAbs().maxCoeff());
  return ((sign * values).array() >= -slack).all();
}

}  // namespace

ComplexVector PureSchmidt::reconstruct() const {
  if (rank == 0) return {};
  const Eigen::Index db = right.front().size();
  ComplexVector out = ComplexVector::Zero(left.front().size() * db);
  for (std::size_t a = 0; a < rank; ++a)
    for (Eigen::Index i = 0; i < left[a].size(); ++i)
      out.segment(i * db, db) += coefficients[a] * left[a](i) * right[a];
  return out;
}

ComplexMatrix OperatorSchmidt::reconstruct() const {
  if (rank == 0) return {};
  const Eigen::Index n = left_ops.front().rows() * right_ops.front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < rank; ++a) out += coefficients[a] * kron(left_ops[a], right_ops[a]);
  return out;
}

double OperatorSchmidt::coefficient_sum() const {
  return std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
}

PureSchmidt schmidt_pure(const PureState& psi, const Tolerances& tol) {
  const SvdResult s = svd(psi.coefficient_matrix());
  PureSchmidt out;
  out.rank = numerical_rank(s.singular, tol);
  for (std::size_t a = 0; a < out.rank; ++a) {
    const auto k = static_cast<Eigen::Index>(a);
    out.coefficients.push_back(s.singular(k));
    out.left.push_back(s.left.col(k));
    out.right.push_back(s.right.col(k).conjugate());
  }
  return out;
}

std::vector<ComplexMatrix> hermitean_basis(std::size_t d) {
  if (d < 2) throw DomainError("hermitean_basis: d must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);

  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  basis.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(d)));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = s(k, j) = inv_sqrt2;
      basis.push_back(std::move(s));
    }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(j, k) = -i_unit * inv_sqrt2;
      a(k, j) = i_unit * inv_sqrt2;
      basis.push_back(std::move(a));
    }
  for (Eigen::Index l = 1; l < n; ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    ComplexMatrix g = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < l; ++j) g(j, j) = scale;
    g(l, l) = -static_cast<double>(l) * scale;
    basis.push_back(std::move(g));
  }
  return basis;
}

OperatorSchmidt schmidt_operator(const DensityState& rho, const Tolerances& tol) {
  return schmidt_operator(rho, hermitean_basis(rho.dim_a()), hermitean_basis(rho.dim_b()), tol);
}

OperatorSchmidt schmidt_operator(const DensityState& rho, const std::vector<ComplexMatrix>& basis_a,
                                 const std::vector<ComplexMatrix>& basis_b, const Tolerances& tol) {
  check_basis(basis_a, rho.dim_a(), "A");
  check_basis(basis_b, rho.dim_b(), "B");
  const auto da = static_cast<Eigen::Index>(rho.dim_a());
  const auto db = static_cast<Eigen::Index>(rho.dim_b());

  const ComplexMatrix vec_a = stack_vectorized(basis_a);
  const ComplexMatrix vec_b = stack_vectorized(basis_b);
  const ComplexMatrix c = vec_a.adjoint() * realign(rho.matrix(), da, db) * vec_b.conjugate();

  OperatorSchmidt out;
  out.hermitean_basis_used = all_hermitean(basis_a, tol) && all_hermitean(basis_b, tol);

  // Hermitean bases and a hermitean rho give a real C; a real SVD then keeps
  // every factor operator hermitean.
  SvdResult s;
  if (out.hermitean_basis_used && c.imag().cwiseAbs().maxCoeff() <= tol.ortho * std::max(1.0, c.cwiseAbs().maxCoeff())) {
    const Eigen::MatrixXd real_c = c.real();
    Eigen::JacobiSVD<Eigen::MatrixXd> solver(real_c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success) throw NumericError("schmidt_operator: SVD did not converge");
    s = SvdResult{solver.matrixU().cast<Complex>(), solver.singularValues(),
                  solver.matrixV().cast<Complex>()};
  } else {
    s = svd(c);
  }

  out.rank = numerical_rank(s.singular, tol);
  for (std::size_t a = 0; a < out.rank; ++a) {
    const auto k = static_cast<Eigen::Index>(a);
    out.coefficients.push_back(s.singular(k));
    ComplexMatrix left = ComplexMatrix::Zero(da, da);
    for (std::size_t i = 0; i < basis_a.size(); ++i) left += s.left(static_cast<Eigen::Index>(i), k) * basis_a[i];
    ComplexMatrix right = ComplexMatrix::Zero(db, db);
    for (std::size_t j = 0; j < basis_b.size(); ++j)
      right += std::conj(s.right(static_cast<Eigen::Index>(j), k)) * basis_b[j];
    out.left_ops.push_back(std::move(left));
    out.right_ops.push_back(std::move(right));
  }
  return out;
}

CrossNormVerdict cross_norm_verdict(const OperatorSchmidt& decomposition, const Tolerances& tol) {
  return decomposition.coefficient_sum() > 1.0 + tol.cross ? CrossNormVerdict::entangled
                                                           : CrossNormVerdict::inconclusive;
}

CrossNormVerdict cross_norm_check(const DensityState& rho, const Tolerances& tol) {
  return cross_norm_verdict(schmidt_operator(rho, tol), tol);
}

bool factors_nonnegative(const OperatorSchmidt& decomposition, const Tolerances& tol) {
  for (std::size_t a = 0; a < decomposition.rank; ++a) {
    const auto& ea = decomposition.left_ops[a];
    const auto& eb = decomposition.right_ops[a];
    const bool both_positive = semidefinite(ea, 1.0, tol) && semidefinite(eb, 1.0, tol);
    const bool both_negative = semidefinite(ea, -1.0, tol) && semidefinite(eb, -1.0, tol);
    if (!both_positive && !both_negative) return false;
  }
  return true;
}

SchmidtData schmidt_of(const PureState& psi, const Tolerances& tol) {
  PureSchmidt s = schmidt_pure(psi, tol);
  return SchmidtData{StateKind::pure, s.rank, std::move(s.coefficients)};
}

SchmidtData schmidt_of(const DensityState& rho, const Tolerances& tol) {
  OperatorSchmidt s = schmidt_operator(rho, tol);
  return SchmidtData{StateKind::density, s.rank, std::move(s.coefficients)};
}

SchmidtData schmidt_of(const AnyState& state, const Tolerances& tol) {
  return std::visit([&](const auto& s) { return schmidt_of(s, tol); }, state);
}

const char* to_string(CrossNormVerdict v) {
  return v == CrossNormVerdict::entangled ? "Entangled" : "Inconclusive";
}

const char* to_string(StateKind k) { return k == StateKind::pure ? "pure" : "density"; }

}  // namespace entsort
