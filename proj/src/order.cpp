#include "entsort/order.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "entsort/error.hpp"
#include "entsort/kernels.hpp"

namespace entsort {

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::precedes: return "precedes";
    case Comparison::succeeds: return "succeeds";
    case Comparison::non_comparable: return "non-comparable";
  }
  return "?";
}

void validate_schmidt_data(const SchmidtData& data, const Tolerances& tol) {
  if (data.rank == 0 || data.rank != data.coefficients.size())
    throw DomainError("Schmidt data: rank does not match coefficient count");
  double squares = 0.0;
  for (std::size_t i = 0; i < data.coefficients.size(); ++i) {
    const double l = data.coefficients[i];
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("Schmidt data: coefficients must be positive");
    if (i > 0 && l > data.coefficients[i - 1])
      throw DomainError("Schmidt data: coefficients must be nonincreasing");
    squares += l * l;
  }
  if (data.kind == StateKind::pure && std::abs(squares - 1.0) > tol.pure_norm)
    throw DomainError("Schmidt data: squared coefficients sum to " + std::to_string(squares) +
                      ", not 1");
}

namespace {

// Partial sums of the squared coefficients; operator data is rescaled to a
// unit total so that majorization compares distributions.
std::vector<double> cumulative_weights(const SchmidtData& s) {
  std::vector<double> sums(s.coefficients.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    acc += s.coefficients[i] * s.coefficients[i];
    sums[i] = acc;
  }
  if (s.kind == StateKind::density)
    for (double& v : sums) v /= acc;
  return sums;
}

bool majorized_by(const std::vector<double>& lower, const std::vector<double>& upper, double slack) {
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (lower[j] > upper[j] + slack) return false;
  return true;
}

}  // namespace

Comparison sd_query_oracle(const SchmidtData& first, const SchmidtData& second, const Tolerances& tol) {
  validate_schmidt_data(first, tol);
  validate_schmidt_data(second, tol);
  if (first.kind != second.kind)
    throw DomainError("sd_query_oracle: cannot compare pure and operator Schmidt data");

  if (first.rank > second.rank) return Comparison::precedes;
  if (second.rank > first.rank) return Comparison::succeeds;

  const auto a = cumulative_weights(first);
  const auto b = cumulative_weights(second);
  if (majorized_by(a, b, tol.majorization)) return Comparison::precedes;
  if (majorized_by(b, a, tol.majorization)) return Comparison::succeeds;
  return Comparison::non_comparable;
}

Oracle QueryCounter::wrap(Oracle inner) {
  return [this, inner = std::move(inner)](StateId a, StateId b) {
    count_.fetch_add(1, std::memory_order_relaxed);
    return inner(a, b);
  };
}

std::vector<RankBucket> rank_partition(std::span<const SchmidtData> data) {
  std::map<std::size_t, std::vector<StateId>> by_rank;
  for (std::size_t i = 0; i < data.size(); ++i) by_rank[data[i].rank].push_back(i);
  std::vector<RankBucket> out;
  out.reserve(by_rank.size());
  for (auto& [rank, members] : by_rank) out.push_back(RankBucket{rank, std::move(members)});
  return out;
}

bool ChainMergeIndex::contains(StateId s) const { return slot_.count(s) != 0; }

std::size_t ChainMergeIndex::slot_of(StateId s) const {
  const auto it = slot_.find(s);
  if (it == slot_.end()) throw std::out_of_range("ChainMergeIndex: unknown state " + std::to_string(s));
  return it->second;
}

void ChainMergeIndex::insert(StateId s, const Oracle& oracle) {
  if (contains(s)) throw std::invalid_argument("ChainMergeIndex: state " + std::to_string(s) + " already present");
  const std::size_t x = ids_.size();

  // Relation of s to every member, learned before any state is modified.
  std::vector<char> below_s(x, 0);
  std::vector<char> above_s(x, 0);
  for (const auto& chain : chain_slots_) {
    const std::size_t len = chain.size();
    std::vector<std::optional<Comparison>> seen(len);
    auto probe = [&](std::size_t pos) {
      if (!seen[pos]) seen[pos] = oracle(ids_[chain[pos]], s);
      return *seen[pos];
    };

    // I2: the chain elements below s form a prefix; find its length.
    std::size_t lo = 0;
    std::size_t hi = len;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (probe(mid) == Comparison::precedes) lo = mid + 1;
      else hi = mid;
    }
    const std::size_t below_count = lo;

    // I1: the elements above s form a suffix; find where it starts.
    hi = len;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (probe(mid) == Comparison::succeeds) hi = mid;
      else lo = mid + 1;
    }
    const std::size_t above_from = lo;

    for (std::size_t pos = 0; pos < below_count; ++pos) below_s[chain[pos]] = 1;
    for (std::size_t pos = above_from; pos < len; ++pos) above_s[chain[pos]] = 1;
  }

  ids_.push_back(s);
  slot_.emplace(s, x);
  for (std::size_t a = 0; a < x; ++a) below_[a].push_back(below_s[a]);
  above_s.push_back(0);
  below_.push_back(std::move(above_s));
  next_.push_back(npos);
  prev_.push_back(npos);

  // The old matching was maximum and the new vertex raises the maximum by at
  // most one, so a single phase of augmenting searches suffices.
  std::vector<char> visited(x + 1, 0);
  if (!augment(x, visited)) {
    for (std::size_t u = 0; u < x; ++u)
      if (next_[u] == npos && augment(u, visited)) break;
  }
  rebuild_chains();
}

bool ChainMergeIndex::augment(std::size_t from, std::vector<char>& visited) {
  const auto& row = below_[from];
  for (std::size_t v = 0; v < row.size(); ++v) {
    if (!row[v] || visited[v]) continue;
    visited[v] = 1;
    if (prev_[v] == npos || augment(prev_[v], visited)) {
      next_[from] = v;
      prev_[v] = from;
      return true;
    }
  }
  return false;
}

void ChainMergeIndex::rebuild_chains() {
  const std::size_t n = ids_.size();
  chain_slots_.clear();
  chains_.clear();
  chain_of_.assign(n, npos);

  auto walk = [&](std::size_t head) {
    std::vector<std::size_t> chain;
    for (std::size_t u = head; u != npos && chain_of_[u] == npos; u = next_[u]) {
      chain_of_[u] = chain_slots_.size();
      chain.push_back(u);
    }
    std::vector<StateId> ids;
    ids.reserve(chain.size());
    for (std::size_t u : chain) ids.push_back(ids_[u]);
    chain_slots_.push_back(std::move(chain));
    chains_.push_back(std::move(ids));
  };

  for (std::size_t u = 0; u < n; ++u)
    if (prev_[u] == npos) walk(u);
  // Only reachable if an inconsistent oracle produced a cyclic relation.
  for (std::size_t u = 0; u < n; ++u)
    if (chain_of_[u] == npos) walk(u);
}

std::optional<std::size_t> ChainMergeIndex::dominance(StateId s, std::size_t chain) const {
  const std::size_t x = slot_of(s);
  const auto& slots = chain_slots_.at(chain);
  std::size_t lo = 0;
  std::size_t hi = slots.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (below_[slots[mid]][x]) lo = mid + 1;
    else hi = mid;
  }
  if (lo == 0) return std::nullopt;
  return lo - 1;
}

std::vector<std::vector<std::optional<std::size_t>>> ChainMergeIndex::dominance_table() const {
  std::vector<std::vector<std::optional<std::size_t>>> table(ids_.size());
  for (std::size_t x = 0; x < ids_.size(); ++x)
    for (std::size_t c = 0; c < chains_.size(); ++c) table[x].push_back(dominance(ids_[x], c));
  return table;
}

bool ChainMergeIndex::precedes(StateId a, StateId b) const {
  return below_[slot_of(a)][slot_of(b)] != 0;
}

ChainMergeIndex chain_insert(ChainMergeIndex index, StateId s, const Oracle& oracle) {
  index.insert(s, oracle);
  return index;
}

PosetResult chain_merge_sort(std::span<const SchmidtData> data, const PosetOptions& options) {
  const Tolerances& tol = options.tol;
  for (std::size_t i = 0; i < data.size(); ++i) {
    try {
      validate_schmidt_data(data[i], tol);
    } catch (const std::exception& e) {
      throw StateError(i, e.what());
    }
    if (data[i].kind != data.front().kind)
      throw StateError(i, "pure and density states cannot be sorted together");
  }

  PosetResult result;
  result.buckets = rank_partition(data);
  const std::size_t n_buckets = result.buckets.size();
  result.indexes.resize(n_buckets);
  result.bucket_queries.assign(n_buckets, 0);
  std::vector<std::exception_ptr> failures(n_buckets);

  const Oracle oracle = [&](StateId a, StateId b) { return sd_query_oracle(data[a], data[b], tol); };
  const auto count = static_cast<std::ptrdiff_t>(n_buckets);

#pragma omp parallel for schedule(dynamic, 1) if (options.parallel_buckets)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto b = static_cast<std::size_t>(k);
    try {
      std::vector<StateId> order = result.buckets[b].members;
      if (options.shuffle_seed) {
        std::mt19937_64 rng(derive_seed(*options.shuffle_seed, result.buckets[b].rank));
        std::shuffle(order.begin(), order.end(), rng);
      }
      QueryCounter counter;
      const Oracle counted = counter.wrap(oracle);
      for (StateId id : order) result.indexes[b].insert(id, counted);
      result.bucket_queries[b] = counter.count();
    } catch (...) {
      failures[b] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (std::size_t q : result.bucket_queries) result.query_count += q;
  return result;
}

PosetResult chain_merge_sort(std::span<const AnyState> states, const PosetOptions& options) {
  const std::vector<SchmidtData> data = parallel::schmidt_data(states, options.tol);
  return chain_merge_sort(std::span<const SchmidtData>(data), options);
}

}  // namespace entsort
