// Serial reference kernels vs their OpenMP counterparts on seeded ensembles.
//
//   entsort_bench_kernels [n] [d] [repeat]
//
// Prints one CSV row per kernel: kernel,n,d,threads,serial_s,parallel_s,speedup

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "entsort/kernels.hpp"
#include "entsort/states.hpp"

namespace {

double best_of(std::size_t repeat, const std::function<void()>& body) {
  double best = 1e300;
  for (std::size_t r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* kernel, std::size_t n, std::size_t d, double serial, double parallel) {
  std::printf("%s,%zu,%zu,%d,%.6e,%.6e,%.3f\n", kernel, n, d, entsort::parallel::max_threads(), serial,
              parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const std::size_t d = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
  const std::size_t repeat = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 3;

  std::vector<entsort::AnyState> pure;
  std::vector<entsort::AnyState> mixed;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t cell = k % (d * d);
    pure.emplace_back(entsort::random_entangled_state(d, cell / d, cell % d, entsort::derive_seed(7, k)));
    if (k < n / 10) mixed.emplace_back(entsort::random_density(d, d, entsort::derive_seed(11, k)));
  }

  std::printf("kernel,n,d,threads,serial_s,parallel_s,speedup\n");

  report("reduced_entropies", n, d,
         best_of(repeat, [&] { entsort::serial::reduced_entropies(pure); }),
         best_of(repeat, [&] { entsort::parallel::reduced_entropies(pure); }));

  report("schmidt_data_pure", n, d,
         best_of(repeat, [&] { entsort::serial::schmidt_data(pure); }),
         best_of(repeat, [&] { entsort::parallel::schmidt_data(pure); }));

  report("schmidt_data_density", mixed.size(), d,
         best_of(repeat, [&] { entsort::serial::schmidt_data(mixed); }),
         best_of(repeat, [&] { entsort::parallel::schmidt_data(mixed); }));

  const auto data = entsort::parallel::schmidt_data(pure);
  const std::size_t table_n = std::min<std::size_t>(n, 500);
  const std::span<const entsort::SchmidtData> head(data.data(), table_n);
  report("oracle_table", table_n, d,
         best_of(repeat, [&] { entsort::serial::oracle_table(head); }),
         best_of(repeat, [&] { entsort::parallel::oracle_table(head); }));
  return 0;
}
