#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "entsort/numerics.hpp"
#include "entsort/states.hpp"
#include "entsort/tolerance.hpp"

namespace entsort {

struct EntropyRecord {
  std::size_t state_id = 0;  // position in the input collection
  double entropy = 0.0;      // bits
};

/// -sum_k l_k log2 l_k over eigenvalues above tol.eigen_floor.
double von_neumann_entropy(const ComplexMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// Entropy of the A-reduced state of |psi><psi|.
double entanglement_entropy(const PureState& psi, const Tolerances& tol = kDefaultTolerances);

/// Entropy of the A-reduced state. For mixed input this is not an
/// entanglement measure; it is what the linear sort ranks by.
double reduced_entropy(const AnyState& state, const Tolerances& tol = kDefaultTolerances);

/// Linear sort by entropy: least entangled first, ties (within
/// tol.entropy_tie) kept in input order. Failures carry the state index.
std::vector<EntropyRecord> lsea_sort(std::span<const AnyState> states,
                                     const Tolerances& tol = kDefaultTolerances);

/// Stable ascending sort of precomputed records with the same tie rule.
void sort_entropy_records(std::vector<EntropyRecord>& records,
                          const Tolerances& tol = kDefaultTolerances);

}  // namespace entsort
