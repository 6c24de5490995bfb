#include "entsort/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "entsort/error.hpp"

namespace entsort {

namespace {

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

void check_bell_indices(std::size_t d, std::size_t p, std::size_t q) {
  if (d < 2) throw DomainError("bell_state: d must be at least 2");
  if (p >= d || q >= d)
    throw DomainError("bell_state: indices p=" + std::to_string(p) + ", q=" + std::to_string(q) +
                      " out of range for d=" + std::to_string(d));
}

// Time-ordered Bell preparation: X^q on B, `local` on A, Z^p on A, CNOT A->B.
ComplexVector run_bell_circuit(const QuditGateSet& g, const ComplexMatrix& local, std::size_t p,
                               std::size_t q) {
  const auto d = static_cast<Eigen::Index>(g.d);
  ComplexVector state = ComplexVector::Zero(d * d);
  state(0) = 1.0;

  const ComplexMatrix id = identity(g.d);
  const ComplexMatrix shift_b = kron(id, g.x);
  for (std::size_t k = 0; k < q; ++k) state = shift_b * state;
  state = kron(local, id) * state;
  const ComplexMatrix phase_a = kron(g.z, id);
  for (std::size_t k = 0; k < p; ++k) state = phase_a * state;
  return g.cnot * state;
}

double gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = gaussian(rng);
      const double im = gaussian(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

// e^{2 pi i k / d}, exact at quarter turns.
Complex root_of_unity(std::size_t k, std::size_t d) {
  k %= d;
  if ((4 * k) % d == 0) {
    switch ((4 * k) / d) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
}

}  // namespace

PureState::PureState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes,
                     const Tolerances& tol)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
  if (dim_a_ == 0 || dim_b_ == 0) throw DimensionError("PureState: zero dimension");
  if (static_cast<std::size_t>(amplitudes_.size()) != dim_a_ * dim_b_)
    throw DimensionError("PureState: expected " + std::to_string(dim_a_ * dim_b_) +
                         " amplitudes, got " + std::to_string(amplitudes_.size()));
  if (!all_finite(amplitudes_)) throw DomainError("PureState: non-finite amplitude");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol.ortho)
    throw DomainError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
}

ComplexMatrix PureState::coefficient_matrix() const {
  const auto da = static_cast<Eigen::Index>(dim_a_);
  const auto db = static_cast<Eigen::Index>(dim_b_);
  ComplexMatrix m(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) m(i, j) = amplitudes_(i * db + j);
  return m;
}

DensityState::DensityState(std::size_t dim_a, std::size_t dim_b, ComplexMatrix matrix,
                           const Tolerances& tol)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(dim_a_ * dim_b_);
  if (n == 0) throw DimensionError("DensityState: zero dimension");
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw DimensionError("DensityState: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " + std::to_string(n) +
                         "x" + std::to_string(n));
  if (!all_finite(matrix_)) throw DomainError("DensityState: non-finite entry");
  if (hermiticity_defect(matrix_) > tol.ortho) throw DomainError("DensityState: not hermitean");
  const Complex trace = matrix_.trace();
  if (std::abs(trace - 1.0) > tol.ortho)
    throw DomainError("DensityState: trace " + std::to_string(trace.real()) + " is not 1");
  const double smallest = eigh(matrix_, tol).values(n - 1);
  if (smallest < -tol.recon)
    throw DomainError("DensityState: negative eigenvalue " + std::to_string(smallest));
}

std::size_t dim_a(const AnyState& s) {
  return std::visit([](const auto& v) { return v.dim_a(); }, s);
}

std::size_t dim_b(const AnyState& s) {
  return std::visit([](const auto& v) { return v.dim_b(); }, s);
}

QuditGateSet qudit_gates(std::size_t d) {
  if (d < 2) throw DomainError("qudit_gates: d must be at least 2");
  const auto n = static_cast<Eigen::Index>(d);
  auto omega = [&](std::size_t power) { return root_of_unity(power, d); };

  QuditGateSet g{d, ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix(n, n),
                 ComplexMatrix::Zero(n * n, n * n)};
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    g.x(static_cast<Eigen::Index>((j + 1) % d), jj) = 1.0;
    g.z(jj, jj) = omega(j);
    for (std::size_t k = 0; k < d; ++k) g.h(jj, static_cast<Eigen::Index>(k)) = omega(j * k) * inv_sqrt;
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      g.cnot(static_cast<Eigen::Index>(i * d + (i + j) % d), static_cast<Eigen::Index>(i * d + j)) = 1.0;
  return g;
}

PureState bell_state(std::size_t d, std::size_t p, std::size_t q) {
  check_bell_indices(d, p, q);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t j = 0; j < d; ++j)
    v(static_cast<Eigen::Index>(j * d + (j + q) % d)) =
        amp * root_of_unity(j * p, d);
  return PureState(d, d, std::move(v));
}

PureState bell_state_circuit(std::size_t d, std::size_t p, std::size_t q) {
  check_bell_indices(d, p, q);
  const QuditGateSet g = qudit_gates(d);
  return PureState(d, d, run_bell_circuit(g, g.h, p, q));
}

Eigen::MatrixXd random_orthogonal(std::size_t d, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(d);
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = gaussian(rng);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k)
    if (r(k, k) < 0.0) q.col(k) = -q.col(k);
  return q;
}

PureState random_entangled_state(std::size_t d, std::size_t p, std::size_t q, std::uint64_t seed) {
  check_bell_indices(d, p, q);
  const QuditGateSet g = qudit_gates(d);
  const ComplexMatrix rotation = random_orthogonal(d, seed).cast<Complex>();
  ComplexVector v = run_bell_circuit(g, rotation, p, q);
  v.normalize();
  return PureState(d, d, std::move(v));
}

PureState product_state(const ComplexVector& psi_a, const ComplexVector& psi_b,
                        const Tolerances& tol) {
  if (std::abs(psi_a.squaredNorm() - 1.0) > tol.ortho ||
      std::abs(psi_b.squaredNorm() - 1.0) > tol.ortho)
    throw DomainError("product_state: factors must be unit vectors");
  const auto da = psi_a.size();
  const auto db = psi_b.size();
  ComplexVector v(da * db);
  for (Eigen::Index i = 0; i < da; ++i) v.segment(i * db, db) = psi_a(i) * psi_b;
  return PureState(static_cast<std::size_t>(da), static_cast<std::size_t>(db), std::move(v), tol);
}

DensityState density_from_pure(const PureState& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityState(psi.dim_a(), psi.dim_b(), v * v.adjoint());
}

DensityState mix(std::span<const DensityState> states, std::span<const double> weights,
                 const Tolerances& tol) {
  if (states.empty()) throw DomainError("mix: no states");
  if (states.size() != weights.size()) throw DomainError("mix: one weight per state required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("mix: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol.ortho) throw DomainError("mix: weights do not sum to 1");

  const std::size_t da = states.front().dim_a();
  const std::size_t db = states.front().dim_b();
  ComplexMatrix acc = ComplexMatrix::Zero(states.front().matrix().rows(), states.front().matrix().cols());
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].dim_a() != da || states[k].dim_b() != db)
      throw DimensionError("mix: state " + std::to_string(k) + " has different dimensions");
    acc += weights[k] * states[k].matrix();
  }
  return DensityState(da, db, std::move(acc), tol);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
  ComplexVector v = ginibre(dim, 1, seed).col(0);
  v.normalize();
  return v;
}

PureState random_pure_state(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  return PureState(dim_a, dim_b, random_unit_vector(dim_a * dim_b, seed));
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  const ComplexMatrix a = ginibre(dim, dim, seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

DensityState random_density(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  const std::size_t n = dim_a * dim_b;
  const ComplexMatrix g = ginibre(n, n, seed);
  ComplexMatrix rho = g * g.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();
  return DensityState(dim_a, dim_b, std::move(rho));
}

DensityState random_separable_density(std::size_t dim_a, std::size_t dim_b, std::size_t terms,
                                      std::uint64_t seed) {
  if (terms == 0) throw DomainError("random_separable_density: need at least one term");
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<DensityState> parts;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t k = 0; k < terms; ++k) {
    const ComplexVector a = random_unit_vector(dim_a, derive_seed(seed, 2 * k + 1));
    const ComplexVector b = random_unit_vector(dim_b, derive_seed(seed, 2 * k + 2));
    parts.push_back(density_from_pure(product_state(a, b)));
    weights.push_back(unit(rng) + 1e-3);
    total += weights.back();
  }
  for (double& w : weights) w /= total;
  return mix(parts, weights);
}

}  // namespace entsort
