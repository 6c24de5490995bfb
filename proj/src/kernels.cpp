#include "entsort/kernels.hpp"

#include <exception>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "entsort/entanglement.hpp"
#include "entsort/error.hpp"

namespace entsort {

namespace {

constexpr std::size_t kNoFailure = std::numeric_limits<std::size_t>::max();

// Runs body(i) for i in [0, n) and rethrows the failure with the lowest index
// as a StateError.
template <typename Body>
void for_each_index_serial(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (const StateError&) {
      throw;
    } catch (const std::exception& e) {
      throw StateError(i, e.what());
    }
  }
}

template <typename Body>
void for_each_index_parallel(std::size_t n, Body&& body) {
  std::vector<std::string> messages(n);
  std::size_t first_failure = kNoFailure;
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      body(i);
    } catch (const std::exception& e) {
      messages[i] = e.what();
#pragma omp critical(entsort_kernel_failure)
      first_failure = std::min(first_failure, i);
    }
  }
  if (first_failure != kNoFailure) throw StateError(first_failure, messages[first_failure]);
}

}  // namespace

namespace serial {

std::vector<SchmidtData> schmidt_data(std::span<const AnyState> states, const Tolerances& tol) {
  std::vector<SchmidtData> out(states.size());
  for_each_index_serial(states.size(), [&](std::size_t i) { out[i] = schmidt_of(states[i], tol); });
  return out;
}

std::vector<double> reduced_entropies(std::span<const AnyState> states, const Tolerances& tol) {
  std::vector<double> out(states.size());
  for_each_index_serial(states.size(), [&](std::size_t i) { out[i] = reduced_entropy(states[i], tol); });
  return out;
}

std::vector<Comparison> oracle_table(std::span<const SchmidtData> data, const Tolerances& tol) {
  const std::size_t n = data.size();
  std::vector<Comparison> out(n * n);
  for_each_index_serial(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = sd_query_oracle(data[i], data[j], tol);
  });
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<SchmidtData> schmidt_data(std::span<const AnyState> states, const Tolerances& tol) {
  std::vector<SchmidtData> out(states.size());
  for_each_index_parallel(states.size(), [&](std::size_t i) { out[i] = schmidt_of(states[i], tol); });
  return out;
}

std::vector<double> reduced_entropies(std::span<const AnyState> states, const Tolerances& tol) {
  std::vector<double> out(states.size());
  for_each_index_parallel(states.size(),
                          [&](std::size_t i) { out[i] = reduced_entropy(states[i], tol); });
  return out;
}

std::vector<Comparison> oracle_table(std::span<const SchmidtData> data, const Tolerances& tol) {
  const std::size_t n = data.size();
  std::vector<Comparison> out(n * n);
  for_each_index_parallel(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = sd_query_oracle(data[i], data[j], tol);
  });
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace parallel

}  // namespace entsort
