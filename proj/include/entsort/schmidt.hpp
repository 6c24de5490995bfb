#pragma once

#include <cstddef>
#include <vector>

#include "entsort/numerics.hpp"
#include "entsort/states.hpp"
#include "entsort/tolerance.hpp"

namespace entsort {

struct PureSchmidt {
  std::size_t rank = 0;
  std::vector<double> coefficients;   // strictly positive, nonincreasing
  std::vector<ComplexVector> left;    // orthonormal in H_A
  std::vector<ComplexVector> right;   // orthonormal in H_B

  /// sum_a lambda_a left_a (x) right_a
  ComplexVector reconstruct() const;
};

struct OperatorSchmidt {
  std::size_t rank = 0;
  std::vector<double> coefficients;
  std::vector<ComplexMatrix> left_ops;   // HS-orthonormal on H_A
  std::vector<ComplexMatrix> right_ops;  // HS-orthonormal on H_B
  bool hermitean_basis_used = false;

  /// sum_a lambda_a E^A_a (x) E^B_a
  ComplexMatrix reconstruct() const;

  double coefficient_sum() const;
};

enum class StateKind { pure, density };

/// Rank and coefficients of either decomposition, as consumed by the
/// semiorder oracle.
struct SchmidtData {
  StateKind kind = StateKind::pure;
  std::size_t rank = 0;
  std::vector<double> coefficients;
};

enum class CrossNormVerdict { entangled, inconclusive };

PureSchmidt schmidt_pure(const PureState& psi, const Tolerances& tol = kDefaultTolerances);

/// Generalized Gell-Mann basis of d x d hermitean matrices, HS-normalized:
/// I/sqrt(d), then the symmetric, antisymmetric and diagonal families.
std::vector<ComplexMatrix> hermitean_basis(std::size_t d);

/// Canonical operator Schmidt decomposition using the Gell-Mann bases.
OperatorSchmidt schmidt_operator(const DensityState& rho,
                                 const Tolerances& tol = kDefaultTolerances);

/// Same decomposition over caller-supplied complete HS-orthonormal bases of
/// H_A and H_B operators.
OperatorSchmidt schmidt_operator(const DensityState& rho,
                                 const std::vector<ComplexMatrix>& basis_a,
                                 const std::vector<ComplexMatrix>& basis_b,
                                 const Tolerances& tol = kDefaultTolerances);

/// Entangled when the coefficient sum exceeds 1 + tol.cross. The criterion is
/// one-sided: it never certifies separability.
CrossNormVerdict cross_norm_check(const DensityState& rho,
                                  const Tolerances& tol = kDefaultTolerances);
CrossNormVerdict cross_norm_verdict(const OperatorSchmidt& decomposition,
                                    const Tolerances& tol = kDefaultTolerances);

/// True when every term pairs two positive semidefinite factors (up to a
/// joint sign flip). Diagnostic only; not used as a separability verdict.
bool factors_nonnegative(const OperatorSchmidt& decomposition,
                         const Tolerances& tol = kDefaultTolerances);

SchmidtData schmidt_of(const AnyState& state, const Tolerances& tol = kDefaultTolerances);
SchmidtData schmidt_of(const PureState& psi, const Tolerances& tol = kDefaultTolerances);
SchmidtData schmidt_of(const DensityState& rho, const Tolerances& tol = kDefaultTolerances);

const char* to_string(CrossNormVerdict v);
const char* to_string(StateKind k);

}  // namespace entsort
