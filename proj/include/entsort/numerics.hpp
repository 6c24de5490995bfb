#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "entsort/tolerance.hpp"

namespace entsort {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

struct SvdResult {
  ComplexMatrix left;   // columns orthonormal
  RealVector singular;  // nonincreasing, nonnegative
  ComplexMatrix right;  // columns orthonormal; m = left * diag(singular) * right^H
};

struct EighResult {
  RealVector values;     // nonincreasing
  ComplexMatrix vectors; // column k pairs with values[k]
};

/// Hilbert-Schmidt inner product tr(a^H b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Modified Gram-Schmidt with one re-orthogonalization pass over the HS inner
/// product. Throws DependentSystemError naming the first member whose residual
/// norm falls below tol.drop relative to its own norm.
std::vector<ComplexMatrix> gram_schmidt(const std::vector<ComplexMatrix>& system,
                                        const Tolerances& tol = kDefaultTolerances);

/// Thin SVD with singular values sorted nonincreasing.
SvdResult svd(const ComplexMatrix& m);

/// Eigendecomposition of a hermitean matrix, eigenvalues nonincreasing.
/// Throws DomainError when max|h - h^H| exceeds tol.ortho.
EighResult eigh(const ComplexMatrix& h, const Tolerances& tol = kDefaultTolerances);

/// Reduced operator on the kept factor of H_A (x) H_B, basis index i*dim_b + j.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep);

/// max_ij |m_ij - conj(m_ji)|; infinity for non-square input.
double hermiticity_defect(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

}  // namespace entsort
