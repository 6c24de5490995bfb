#pragma once

#include <span>
#include <vector>

#include "entsort/order.hpp"
#include "entsort/schmidt.hpp"
#include "entsort/states.hpp"
#include "entsort/tolerance.hpp"

// Batch kernels over state collections. `parallel` runs the per-element work
// under OpenMP; `serial` is the reference the tests compare it against. Both
// throw StateError for the lowest failing index.

namespace entsort::serial {

std::vector<SchmidtData> schmidt_data(std::span<const AnyState> states,
                                      const Tolerances& tol = kDefaultTolerances);
std::vector<double> reduced_entropies(std::span<const AnyState> states,
                                      const Tolerances& tol = kDefaultTolerances);
/// Row-major n x n table of sd_query_oracle(data[i], data[j]).
std::vector<Comparison> oracle_table(std::span<const SchmidtData> data,
                                     const Tolerances& tol = kDefaultTolerances);

}  // namespace entsort::serial

namespace entsort::parallel {

std::vector<SchmidtData> schmidt_data(std::span<const AnyState> states,
                                      const Tolerances& tol = kDefaultTolerances);
std::vector<double> reduced_entropies(std::span<const AnyState> states,
                                      const Tolerances& tol = kDefaultTolerances);
std::vector<Comparison> oracle_table(std::span<const SchmidtData> data,
                                     const Tolerances& tol = kDefaultTolerances);

int max_threads();

}  // namespace entsort::parallel
