#include "entsort/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "entsort/entanglement.hpp"
#include "entsort/order.hpp"
#include "entsort/schmidt.hpp"
#include "entsort/states.hpp"

namespace entsort::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string record_id(const char* prefix, std::size_t k) {
  return std::string(prefix) + "-" + std::to_string(k);
}

// Records that validated as states, plus the ones that did not.
struct LoadedStates {
  std::vector<std::string> ids;
  std::vector<AnyState> states;
  std::size_t failures = 0;
};

LoadedStates load_states(const StateFile& file, const Tolerances& tol, std::ostream& err) {
  LoadedStates out;
  for (const auto& record : file.states) {
    try {
      out.states.push_back(to_state(record, tol));
      out.ids.push_back(record.id);
    } catch (const std::exception& e) {
      err << "error: record '" << record.id << "': " << e.what() << '\n';
      ++out.failures;
    }
  }
  return out;
}

// Writes to --output when given, otherwise to out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct Common {
  std::string input;
  std::string output;
  std::string format = "text";
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int cmd_generate(const GenerateRequest& request, const std::string& output, std::ostream& out) {
  const StateFile file = generate(request);
  Sink sink(output, out);
  sink.stream() << serialize(file);
  return kOk;
}

int cmd_schmidt(const Common& opts, const std::string& id, const Tolerances& tol, std::ostream& out,
                std::ostream& err) {
  const StateFile file = read_state_file(opts.input);
  const auto it = std::find_if(file.states.begin(), file.states.end(),
                               [&](const StateRecord& r) { return r.id == id; });
  if (it == file.states.end()) {
    err << "error: no state with id '" << id << "' in " << opts.input << '\n';
    return kMissingReference;
  }

  AnyState state = [&] {
    try {
      return to_state(*it, tol);
    } catch (const std::exception& e) {
      throw std::runtime_error("record '" + id + "': " + e.what());
    }
  }();

  Json report;
  report["id"] = id;
  report["kind"] = to_string(it->kind);
  report["dim_a"] = it->dim_a;
  report["dim_b"] = it->dim_b;
  std::vector<double> coefficients;
  std::optional<double> entropy;
  std::optional<CrossNormVerdict> verdict;
  std::optional<bool> nonnegative;
  std::size_t rank = 0;
  if (const auto* psi = std::get_if<PureState>(&state)) {
    const PureSchmidt s = schmidt_pure(*psi, tol);
    rank = s.rank;
    coefficients = s.coefficients;
    entropy = entanglement_entropy(*psi, tol);
  } else {
    const OperatorSchmidt s = schmidt_operator(std::get<DensityState>(state), tol);
    rank = s.rank;
    coefficients = s.coefficients;
    verdict = cross_norm_verdict(s, tol);
    nonnegative = factors_nonnegative(s, tol);
  }
  double sum = 0.0;
  for (double l : coefficients) sum += l;

  report["rank"] = rank;
  report["coefficients"] = coefficients;
  report["coefficient_sum"] = sum;
  if (entropy) report["entropy"] = *entropy;
  if (verdict) report["cross_norm"] = to_string(*verdict);
  if (nonnegative) report["nonnegative_factors"] = *nonnegative;

  Sink sink(opts.output, out);
  auto& os = sink.stream();
  if (opts.format == "json") {
    os << report.dump() << '\n';
    return kOk;
  }
  os << "id: " << id << '\n' << "kind: " << to_string(it->kind) << '\n'
     << "dims: " << it->dim_a << " x " << it->dim_b << '\n' << "rank: " << rank << '\n'
     << "coefficients:";
  for (double l : coefficients) os << ' ' << format_double(l);
  os << '\n' << "coefficient_sum: " << format_double(sum) << '\n';
  if (entropy) os << "entropy_bits: " << format_double(*entropy) << '\n';
  if (verdict) os << "cross_norm: " << to_string(*verdict) << '\n';
  if (nonnegative) os << "nonnegative_factors: " << (*nonnegative ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_sort_linear(const Common& opts, const Tolerances& tol, std::ostream& out, std::ostream& err) {
  const StateFile file = read_state_file(opts.input);
  const LoadedStates loaded = load_states(file, tol, err);
  const std::vector<EntropyRecord> order = lsea_sort(loaded.states, tol);

  Sink sink(opts.output, out);
  auto& os = sink.stream();
  if (opts.format == "json") {
    Json report;
    report["order"] = Json::array();
    for (const auto& r : order)
      report["order"].push_back(Json{{"id", loaded.ids[r.state_id]}, {"entropy", r.entropy}});
    report["failed"] = loaded.failures;
    os << report.dump() << '\n';
  } else if (opts.format == "csv") {
    os << "id,entropy\n";
    for (const auto& r : order) os << loaded.ids[r.state_id] << ',' << format_double(r.entropy) << '\n';
  } else {
    for (std::size_t k = 0; k < order.size(); ++k)
      os << k << '\t' << loaded.ids[order[k].state_id] << '\t' << format_double(order[k].entropy) << '\n';
  }
  return loaded.failures == 0 ? kOk : kPartialFailure;
}

int cmd_sort_poset(const Common& opts, std::optional<std::uint64_t> shuffle_seed,
                   const Tolerances& tol, std::ostream& out, std::ostream& err) {
  const StateFile file = read_state_file(opts.input);
  LoadedStates loaded = load_states(file, tol, err);

  // One semiorder per run: if any density is present, pure states join it
  // as rank-one projectors.
  const bool any_density = std::any_of(loaded.states.begin(), loaded.states.end(), [](const AnyState& s) {
    return std::holds_alternative<DensityState>(s);
  });
  if (any_density)
    for (auto& s : loaded.states)
      if (const auto* psi = std::get_if<PureState>(&s)) s = density_from_pure(*psi);

  PosetOptions options;
  options.tol = tol;
  options.shuffle_seed = shuffle_seed;
  const PosetResult result = chain_merge_sort(std::span<const AnyState>(loaded.states), options);

  Sink sink(opts.output, out);
  auto& os = sink.stream();
  if (opts.format == "json") {
    Json report;
    report["semiorder"] = any_density ? "operator" : "pure";
    report["buckets"] = Json::array();
    for (std::size_t b = 0; b < result.buckets.size(); ++b) {
      Json chains = Json::array();
      for (const auto& chain : result.indexes[b].chains()) {
        Json ids = Json::array();
        for (StateId s : chain) ids.push_back(loaded.ids[s]);
        chains.push_back(std::move(ids));
      }
      report["buckets"].push_back(Json{{"rank", result.buckets[b].rank},
                                       {"chains", std::move(chains)},
                                       {"queries", result.bucket_queries[b]}});
    }
    report["query_count"] = result.query_count;
    report["failed"] = loaded.failures;
    os << report.dump() << '\n';
  } else {
    os << "# chain elements are listed from more to less entangled\n";
    for (std::size_t b = 0; b < result.buckets.size(); ++b) {
      os << "bucket rank " << result.buckets[b].rank << ": " << result.buckets[b].members.size()
         << " state(s)\n";
      const auto& chains = result.indexes[b].chains();
      for (std::size_t c = 0; c < chains.size(); ++c) {
        os << "  chain " << c << ':';
        for (std::size_t k = 0; k < chains[c].size(); ++k)
          os << (k == 0 ? " " : " < ") << loaded.ids[chains[c][k]];
        os << '\n';
      }
    }
    os << "queries: " << result.query_count << '\n';
  }
  return loaded.failures == 0 ? kOk : kPartialFailure;
}

}  // namespace

StateFile generate(const GenerateRequest& request) {
  const std::size_t d = request.d;
  if (d < 2) throw std::invalid_argument("--d must be at least 2");

  StateFile file;
  for (std::size_t k = 0; k < request.count; ++k) {
    const std::size_t cell = k % (d * d);
    const std::size_t p = cell / d;
    const std::size_t q = cell % d;
    const std::uint64_t seed = derive_seed(request.seed, k);
    if (request.kind == "bell") {
      file.states.push_back(to_record(record_id("bell", k), bell_state(d, p, q)));
    } else if (request.kind == "random") {
      file.states.push_back(to_record(record_id("random", k), random_entangled_state(d, p, q, seed)));
    } else if (request.kind == "product") {
      ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(d));
      ComplexVector b = ComplexVector::Zero(static_cast<Eigen::Index>(d));
      a(static_cast<Eigen::Index>(p)) = 1.0;
      b(static_cast<Eigen::Index>(q)) = 1.0;
      file.states.push_back(to_record(record_id("product", k), product_state(a, b)));
    } else if (request.kind == "mixture") {
      const std::size_t terms = 1 + derive_seed(seed, 99) % 10;
      file.states.push_back(
          to_record(record_id("mixture", k), random_separable_density(d, d, terms, seed)));
    } else {
      throw std::invalid_argument("unknown --kind '" + request.kind +
                                  "' (expected bell, random, product or mixture)");
    }
  }
  return file;
}

std::vector<BenchRow> bench(const BenchRequest& request, const Tolerances& tol) {
  if (request.mode != "linear" && request.mode != "poset")
    throw std::invalid_argument("--mode must be linear or poset");
  if (request.sizes.empty()) throw std::invalid_argument("--sizes must not be empty");
  if (!std::is_sorted(request.sizes.begin(), request.sizes.end()))
    throw std::invalid_argument("--sizes must be ascending");
  if (request.d < 2) throw std::invalid_argument("--d must be at least 2");
  const std::size_t repeat = std::max<std::size_t>(request.repeat, 1);

  std::vector<BenchRow> rows;
  for (std::size_t n : request.sizes) {
    std::vector<AnyState> states;
    states.reserve(n);
    const std::size_t d = request.d;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t cell = k % (d * d);
      states.emplace_back(random_entangled_state(d, cell / d, cell % d, derive_seed(request.seed, k)));
    }

    BenchRow row;
    row.n_registers = n;
    std::vector<double> times;
    for (std::size_t r = 0; r < repeat; ++r) {
      const auto start = std::chrono::steady_clock::now();
      if (request.mode == "linear") {
        const auto order = lsea_sort(states, tol);
        if (order.size() != n) throw std::logic_error("bench: sort lost states");
      } else {
        PosetOptions options;
        options.tol = tol;
        row.query_count = chain_merge_sort(std::span<const AnyState>(states), options).query_count;
      }
      const auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
    row.wall_time_seconds = median(times);
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool with_queries) {
  std::string out = with_queries ? "n_registers,wall_time_seconds,query_count\n"
                                 : "n_registers,wall_time_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n_registers) + ',' + format_double(r.wall_time_seconds);
    if (with_queries) out += ',' + std::to_string(r.query_count);
    out += '\n';
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entsort: order bipartite quantum states by entanglement"};
  app.require_subcommand(1);

  Common common;
  GenerateRequest gen;
  std::string output;
  auto* generate_cmd = app.add_subcommand("generate", "write a seeded state ensemble");
  generate_cmd->add_option("--kind", gen.kind, "bell | random | product | mixture")
      ->check(CLI::IsMember({"bell", "random", "product", "mixture"}));
  generate_cmd->add_option("--d", gen.d, "levels per subsystem");
  generate_cmd->add_option("--count", gen.count, "number of states");
  generate_cmd->add_option("--seed", gen.seed, "base seed");
  generate_cmd->add_option("--output", output, "state file to write (default stdout)");

  std::string id;
  auto* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt decomposition report for one state");
  schmidt_cmd->add_option("--input", common.input, "state file")->required();
  schmidt_cmd->add_option("--id", id, "state id")->required();
  schmidt_cmd->add_option("--output", common.output, "report file (default stdout)");
  schmidt_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));

  auto* linear_cmd = app.add_subcommand("sort-linear", "sort by entropy of the reduced state");
  linear_cmd->add_option("--input", common.input, "state file")->required();
  linear_cmd->add_option("--output", common.output, "report file (default stdout)");
  linear_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json", "csv"}));

  bool shuffle = false;
  std::uint64_t shuffle_seed = 1;
  auto* poset_cmd = app.add_subcommand("sort-poset", "rank buckets and chains of the Schmidt semiorder");
  poset_cmd->add_option("--input", common.input, "state file")->required();
  poset_cmd->add_option("--output", common.output, "report file (default stdout)");
  poset_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));
  poset_cmd->add_flag("--shuffle", shuffle, "insert each bucket in seeded random order");
  poset_cmd->add_option("--seed", shuffle_seed, "seed for --shuffle");

  BenchRequest bench_req;
  auto* bench_cmd = app.add_subcommand("bench", "time sorts of seeded random ensembles (CSV)");
  bench_cmd->add_option("--mode", bench_req.mode)->check(CLI::IsMember({"linear", "poset"}));
  bench_cmd->add_option("--sizes", bench_req.sizes, "ascending ensemble sizes")->delimiter(',');
  bench_cmd->add_option("--d", bench_req.d, "levels per subsystem");
  bench_cmd->add_option("--seed", bench_req.seed, "base seed");
  bench_cmd->add_option("--repeat", bench_req.repeat, "runs per size; the median is reported");
  bench_cmd->add_option("--output", common.output, "CSV file (default stdout)");
  bench_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Tolerances tol;
  try {
    tol = tolerances_from_env();
  } catch (const std::invalid_argument& e) {
    err << "error: ENTSORT_TOLERANCE: " << e.what() << '\n';
    return kUsage;
  }

  if (!common.input.empty() && !std::filesystem::exists(common.input)) {
    err << "error: input file " << common.input << " does not exist\n";
    return kUsage;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(gen, output, out);
    if (schmidt_cmd->parsed()) return cmd_schmidt(common, id, tol, out, err);
    if (linear_cmd->parsed()) return cmd_sort_linear(common, tol, out, err);
    if (poset_cmd->parsed())
      return cmd_sort_poset(common, shuffle ? std::optional<std::uint64_t>(shuffle_seed) : std::nullopt,
                            tol, out, err);
    if (bench_cmd->parsed()) {
      const auto rows = bench(bench_req, tol);
      Sink sink(common.output, out);
      sink.stream() << bench_csv(rows, bench_req.mode == "poset");
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << common.input << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kPartialFailure;
  }
  return kUsage;
}

}  // namespace entsort::cli
