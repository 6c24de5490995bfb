#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "entsort/schmidt.hpp"
#include "entsort/states.hpp"
#include "entsort/tolerance.hpp"

namespace entsort {

/// Outcome of one semiorder query on (first, second).
enum class Comparison {
  precedes,        // first < second
  succeeds,        // second < first
  non_comparable,
};

const char* to_string(Comparison c);

/// Semiorder on Schmidt data: the higher Schmidt rank precedes; within equal
/// rank, first precedes second when the squared coefficients of first are
/// majorized by those of second (partial sums within tol.majorization).
///
/// Pure data must satisfy sum lambda^2 = 1 within tol.pure_norm (DomainError
/// otherwise). Operator data is compared on lambda^2 normalized to unit sum.
/// Mixing pure and operator data is a DomainError.
Comparison sd_query_oracle(const SchmidtData& first, const SchmidtData& second,
                           const Tolerances& tol = kDefaultTolerances);

/// Throws DomainError unless the data is a valid oracle operand.
void validate_schmidt_data(const SchmidtData& data, const Tolerances& tol = kDefaultTolerances);

using StateId = std::size_t;
using Oracle = std::function<Comparison(StateId, StateId)>;

/// Counts calls made through oracles obtained from wrap(). Thread-safe.
class QueryCounter {
 public:
  QueryCounter() = default;
  QueryCounter(const QueryCounter&) = delete;
  QueryCounter& operator=(const QueryCounter&) = delete;

  /// The returned oracle references this counter and must not outlive it.
  Oracle wrap(Oracle inner);
  std::size_t count() const noexcept { return count_.load(std::memory_order_relaxed); }
  void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::size_t> count_{0};
};

struct RankBucket {
  std::size_t rank = 0;
  std::vector<StateId> members;
};

/// Groups states by Schmidt rank, buckets in increasing rank, members in
/// input order.
std::vector<RankBucket> rank_partition(std::span<const SchmidtData> data);

/// Incrementally built chain decomposition of a poset known only through an
/// oracle.
///
/// Inserting an element binary-searches every current chain twice: once for
/// the last chain element below it and once for the first element above it.
/// Chains are totally ordered, so these two positions give the element's
/// relation to every member without further queries. The chains are then
/// re-derived as a minimum chain cover (Dilworth) of the known order, kept
/// up to date with one augmenting-path search per insertion, so the number of
/// chains never exceeds the width of the poset inserted so far.
///
/// Elements the oracle reports as mutually preceding (equal coefficient
/// vectors) are ordered by insertion time.
class ChainMergeIndex {
 public:
  /// Inserts s (not already present). Oracle failures propagate and leave
  /// the index unchanged.
  void insert(StateId s, const Oracle& oracle);

  std::size_t size() const noexcept { return ids_.size(); }
  bool contains(StateId s) const;

  /// Chains, each ordered so that earlier elements precede later ones.
  /// Chains are listed by the insertion time of their first element.
  const std::vector<std::vector<StateId>>& chains() const noexcept { return chains_; }

  /// Position in chains()[chain] of the largest element strictly preceding s,
  /// or nullopt when none does. For s inside that chain this is its
  /// predecessor.
  std::optional<std::size_t> dominance(StateId s, std::size_t chain) const;

  /// dominance() for every (member, chain) pair, members in insertion order.
  std::vector<std::vector<std::optional<std::size_t>>> dominance_table() const;

  /// Strict order implied by the index: a is below b.
  bool precedes(StateId a, StateId b) const;

  /// Members in insertion order.
  const std::vector<StateId>& members() const noexcept { return ids_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t slot_of(StateId s) const;
  bool augment(std::size_t from, std::vector<char>& visited);
  void rebuild_chains();

  std::vector<StateId> ids_;                // slot -> id
  std::unordered_map<StateId, std::size_t> slot_;
  std::vector<std::vector<char>> below_;    // below_[a][b]: slot a precedes slot b
  std::vector<std::size_t> next_;           // matched successor slot (chain link)
  std::vector<std::size_t> prev_;           // matched predecessor slot
  std::vector<std::vector<StateId>> chains_;
  std::vector<std::vector<std::size_t>> chain_slots_;
  std::vector<std::size_t> chain_of_;       // slot -> chain index
};

/// Copying form of ChainMergeIndex::insert.
ChainMergeIndex chain_insert(ChainMergeIndex index, StateId s, const Oracle& oracle);

struct PosetOptions {
  /// Process each bucket in a seeded random order instead of input order.
  std::optional<std::uint64_t> shuffle_seed;
  /// Build distinct buckets concurrently.
  bool parallel_buckets = true;
  Tolerances tol = kDefaultTolerances;
};

struct PosetResult {
  std::vector<RankBucket> buckets;        // strictly increasing rank
  std::vector<ChainMergeIndex> indexes;   // one per bucket
  std::vector<std::size_t> bucket_queries;
  std::size_t query_count = 0;
};

/// Rank partition followed by per-bucket chain-merge insertion. State ids are
/// positions in `data`. Invalid data throws StateError naming the index.
PosetResult chain_merge_sort(std::span<const SchmidtData> data, const PosetOptions& options = {});

PosetResult chain_merge_sort(std::span<const AnyState> states, const PosetOptions& options = {});

}  // namespace entsort
