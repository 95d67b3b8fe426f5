#ifndef MAGSET_SEARCH_HPP_
#define MAGSET_SEARCH_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "magset/residue_set.hpp"

namespace magset {

// Vertices are residues whose lambda multiples are distinct and nonzero;
// x ~ y when e*x == e'*y (mod q) for some magnitudes e, e'. Valid sets are
// exactly the independent sets of this graph.
struct ConflictGraph {
  std::uint64_t q = 1;
  unsigned lambda = 4;
  std::vector<std::uint64_t> vertices;                // ascending
  std::vector<std::vector<std::uint32_t>> adjacency;  // indices into vertices, ascending
};

bool is_admissible(std::uint64_t x, std::uint64_t q, unsigned lambda);

ConflictGraph conflict_graph(std::uint64_t q, unsigned lambda);

// Graph induced on the admissible members of `allowed`.
ConflictGraph conflict_graph(std::uint64_t q, unsigned lambda,
                             std::span<const std::uint64_t> allowed);

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  std::chrono::milliseconds max_time{60'000};
};

struct SearchResult {
  std::uint64_t q = 1;
  unsigned lambda = 4;
  std::uint64_t max_size = 0;
  ResidueSet witness;
  std::uint64_t nodes_expanded = 0;
  std::chrono::milliseconds elapsed{0};
  // False when the budget ran out: max_size is then only a lower bound and
  // upper_bound caps the true maximum.
  bool exact = true;
  std::uint64_t upper_bound = 0;
};

// Exact maximum B1[lambda](q) set by branch and bound over the connected
// components of the conflict graph. Deterministic: identical inputs give
// identical witnesses and node counts (unless the time budget intervenes).
SearchResult exact_max(std::uint64_t q, unsigned lambda, const SearchBudget& budget = {});

// Same, using only residues from `allowed`.
SearchResult exact_max_in_subset(std::uint64_t q, unsigned lambda,
                                 std::span<const std::uint64_t> allowed,
                                 const SearchBudget& budget = {});

// The cache location: $MAGSET_CACHE if set, else ./magset-cache.jsonl.
std::string default_cache_path();

// Append-only JSONL store of full-range search results keyed by (q, lambda).
// Only exact records are served back.
class SearchCache {
 public:
  // Loads existing records; a missing file is an empty cache.
  explicit SearchCache(std::string path);

  const std::string& path() const noexcept { return path_; }
  std::optional<SearchResult> find(std::uint64_t q, unsigned lambda) const;
  void store(const SearchResult& result);

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::uint64_t, unsigned>, SearchResult> records_;
};

// exact_max through the cache (when non-null): a cached exact record is
// returned as is, a fresh result is appended.
SearchResult cached_exact_max(std::uint64_t q, unsigned lambda, SearchCache* cache,
                              const SearchBudget& budget = {});

std::string search_result_to_json(const SearchResult& result);

}  // namespace magset

#endif  // MAGSET_SEARCH_HPP_
