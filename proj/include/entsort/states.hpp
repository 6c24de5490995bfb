#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "entsort/numerics.hpp"
#include "entsort/tolerance.hpp"

namespace entsort {

/// Unit vector in H_A (x) H_B; amplitude of |i>_A|j>_B sits at i*dim_b + j.
class PureState {
 public:
  /// Throws DimensionError on a length mismatch and DomainError when the norm
  /// deviates from 1 by more than tol.ortho.
  PureState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes,
            const Tolerances& tol = kDefaultTolerances);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  /// Amplitudes reshaped to the dim_a x dim_b coefficient matrix.
  ComplexMatrix coefficient_matrix() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexVector amplitudes_;
};

/// Hermitean, trace-one, positive semidefinite operator on H_A (x) H_B.
class DensityState {
 public:
  DensityState(std::size_t dim_a, std::size_t dim_b, ComplexMatrix matrix,
               const Tolerances& tol = kDefaultTolerances);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix matrix_;
};

using AnyState = std::variant<PureState, DensityState>;

std::size_t dim_a(const AnyState& s);
std::size_t dim_b(const AnyState& s);

/// Generalized Pauli and Clifford gates for a d-level system.
struct QuditGateSet {
  std::size_t d;
  ComplexMatrix x;     // |j> -> |j+1 mod d>
  ComplexMatrix z;     // diag(omega^j)
  ComplexMatrix h;     // discrete Fourier transform, omega^(jk)/sqrt(d)
  ComplexMatrix cnot;  // |i>|j> -> |i>|i+j mod d>, on d^2
};

QuditGateSet qudit_gates(std::size_t d);

/// (1/sqrt d) sum_j e^{2 pi i j p/d} |j>|j+q mod d>.
PureState bell_state(std::size_t d, std::size_t p, std::size_t q);

/// Same state prepared by the gate sequence X^q on B, H on A, Z^p on A,
/// CNOT(A -> B), starting from |00>.
PureState bell_state_circuit(std::size_t d, std::size_t p, std::size_t q);

/// Random real orthogonal d x d matrix: QR of a Gaussian matrix with the
/// diagonal of R made positive. Deterministic in the seed.
Eigen::MatrixXd random_orthogonal(std::size_t d, std::uint64_t seed);

/// The Bell circuit with the Hadamard replaced by random_orthogonal(d, seed).
/// Schmidt coefficients are |first column of the rotation|, generically unequal.
PureState random_entangled_state(std::size_t d, std::size_t p, std::size_t q,
                                 std::uint64_t seed);

PureState product_state(const ComplexVector& psi_a, const ComplexVector& psi_b,
                        const Tolerances& tol = kDefaultTolerances);

DensityState density_from_pure(const PureState& psi);

/// Convex combination. Weights must be nonnegative and sum to 1.
DensityState mix(std::span<const DensityState> states, std::span<const double> weights,
                 const Tolerances& tol = kDefaultTolerances);

// Seeded fixtures used by tests, the CLI generator and benchmarks.

/// Independent seed for sub-stream `stream` of `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Complex Gaussian unit vector (Haar distributed).
ComplexVector random_unit_vector(std::size_t dim, std::uint64_t seed);

PureState random_pure_state(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed);

/// Haar-random unitary (QR of a complex Ginibre matrix, phase-fixed).
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

/// G G^H / tr(G G^H) for a complex Ginibre G; full rank with probability one.
DensityState random_density(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed);

/// Convex mixture of `terms` random product pure states with random weights.
DensityState random_separable_density(std::size_t dim_a, std::size_t dim_b, std::size_t terms,
                                      std::uint64_t seed);

}  // namespace entsort
