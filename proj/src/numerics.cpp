#include "entsort/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entsort/error.hpp"

namespace entsort {

namespace {

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: shape mismatch " + shape(a) + " vs " + shape(b));
  Complex acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc += std::conj(a(i, j)) * b(i, j);
  return acc;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<ComplexMatrix> gram_schmidt(const std::vector<ComplexMatrix>& system,
                                        const Tolerances& tol) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(system.size());
  for (std::size_t k = 0; k < system.size(); ++k) {
    const ComplexMatrix& e = system[k];
    if (!basis.empty() && (e.rows() != basis.front().rows() || e.cols() != basis.front().cols()))
      throw DimensionError("gram_schmidt: member " + std::to_string(k) + " has shape " + shape(e));

    const double scale = e.norm();
    ComplexMatrix r = e;
    // Two sweeps of modified Gram-Schmidt; the second removes the components
    // reintroduced by rounding in the first.
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const auto& f : basis) r -= hs_inner(f, r) * f;

    const double residual = r.norm();
    if (!(scale > 0.0) || residual <= tol.drop * scale)
      throw DependentSystemError(k, "gram_schmidt: member " + std::to_string(k) +
                                        " is linearly dependent on its predecessors");
    basis.push_back(r / residual);
  }
  return basis;
}

SvdResult svd(const ComplexMatrix& m) {
  if (!all_finite(m)) throw NumericError("svd: non-finite input");
  if (m.size() == 0) throw DimensionError("svd: empty matrix");

  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) throw NumericError("svd: did not converge");

  // JacobiSVD already orders singular values decreasingly.
  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!all_finite(out.left) || !all_finite(out.right) || !out.singular.allFinite())
    throw NumericError("svd: non-finite output");
  return out;
}

EighResult eigh(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols()) throw DimensionError("eigh: matrix is " + shape(h));
  if (!all_finite(h)) throw NumericError("eigh: non-finite input");
  if (hermiticity_defect(h) > tol.ortho) throw DomainError("eigh: matrix is not hermitean");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("eigh: did not converge");

  // Eigen returns ascending order; flip to nonincreasing.
  const Eigen::Index n = h.rows();
  EighResult out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  if (dim_a == 0 || dim_b == 0 || rho.rows() != n || rho.cols() != n)
    throw DimensionError("partial_trace: " + shape(rho) + " does not match " +
                         std::to_string(dim_a) + "x" + std::to_string(dim_b));

  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index j = 0; j < db; ++j) out(i, k) += rho(i * db + j, k * db + j);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(j, l) += rho(i * db + j, i * db + l);
  return out;
}

}  // namespace entsort
