#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "entsort/state_file.hpp"
#include "entsort/tolerance.hpp"

namespace entsort::cli {

enum ExitCode : int {
  kOk = 0,
  kPartialFailure = 1,
  kUsage = 2,
  kMissingReference = 3,
};

struct GenerateRequest {
  std::string kind = "bell";  // bell | random | product | mixture
  std::size_t d = 2;
  std::size_t count = 4;
  std::uint64_t seed = 1;
};

/// Deterministic ensemble for a request. Throws std::invalid_argument on a
/// bad request.
StateFile generate(const GenerateRequest& request);

struct BenchRow {
  std::size_t n_registers = 0;
  double wall_time_seconds = 0.0;
  std::size_t query_count = 0;  // poset mode only
};

struct BenchRequest {
  std::string mode = "linear";  // linear | poset
  std::vector<std::size_t> sizes{10, 100, 1000};
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::size_t repeat = 1;  // reported time is the median over repeats
};

/// Times the sort (not the generation) of n seeded random states per size.
std::vector<BenchRow> bench(const BenchRequest& request, const Tolerances& tol);

std::string bench_csv(const std::vector<BenchRow>& rows, bool with_queries);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entsort::cli
