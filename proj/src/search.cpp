#include "magset/search.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bitset.hpp"
#include "magset/errors.hpp"
#include "magset/number_theory.hpp"
#include "magset/verifier.hpp"

namespace magset {

namespace {

using detail::Bitset;
using Clock = std::chrono::steady_clock;

// Products e*x mod q for e = 1..lambda.
std::vector<std::uint64_t> syndromes_of(std::uint64_t x, std::uint64_t q, unsigned lambda) {
  std::vector<std::uint64_t> out;
  out.reserve(lambda);
  for (unsigned e = 1; e <= lambda; ++e) out.push_back(nt::mul_mod(e, x, q));
  return out;
}

ConflictGraph build_graph(std::uint64_t q, unsigned lambda, std::vector<std::uint64_t> candidates) {
  if (q == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  if (lambda == 0) throw_error(ErrorCode::kInvalidArgument, "lambda must be at least 1");
  ConflictGraph graph;
  graph.q = q;
  graph.lambda = lambda;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::uint64_t x : candidates) {
    if (x >= q) {
      throw_error(ErrorCode::kInvalidArgument,
                  "residue " + std::to_string(x) + " is not below q = " + std::to_string(q));
    }
    if (is_admissible(x, q, lambda)) graph.vertices.push_back(x);
  }
  // Vertices sharing a syndrome value conflict pairwise.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> owners;
  owners.reserve(graph.vertices.size() * lambda);
  for (std::uint32_t v = 0; v < graph.vertices.size(); ++v) {
    for (std::uint64_t s : syndromes_of(graph.vertices[v], q, lambda)) owners.emplace_back(s, v);
  }
  std::sort(owners.begin(), owners.end());
  graph.adjacency.assign(graph.vertices.size(), {});
  for (std::size_t lo = 0; lo < owners.size();) {
    std::size_t hi = lo;
    while (hi < owners.size() && owners[hi].first == owners[lo].first) ++hi;
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < hi; ++j) {
        graph.adjacency[owners[i].second].push_back(owners[j].second);
        graph.adjacency[owners[j].second].push_back(owners[i].second);
      }
    }
    lo = hi;
  }
  for (auto& list : graph.adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return graph;
}

// Node and time accounting shared by all components of one search.
class Control {
 public:
  explicit Control(const SearchBudget& budget) : budget_(budget), start_(Clock::now()) {}

  // Counts a node; returns true once the budget is exhausted.
  bool tick() {
    if (aborted_) return true;
    ++nodes_;
    if (nodes_ > budget_.max_nodes) aborted_ = true;
    if ((nodes_ & 0xfff) == 0 && Clock::now() - start_ > budget_.max_time) aborted_ = true;
    return aborted_;
  }

  bool aborted() const noexcept { return aborted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
  }

 private:
  SearchBudget budget_;
  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

// Maximum independent set of one connected component. Vertices are local
// indices 0..n-1; each carries its lambda syndrome ids, so that a candidate
// pool P can hold at most |syndromes(P)| / lambda more vertices.
class ComponentSolver {
 public:
  ComponentSolver(std::vector<Bitset> adjacency, std::vector<std::uint32_t> syndromes,
                  std::size_t syndrome_count, unsigned lambda, Control& control)
      : adjacency_(std::move(adjacency)),
        syndromes_(std::move(syndromes)),
        lambda_(lambda),
        stamp_(syndrome_count, 0),
        control_(control) {}

  struct Outcome {
    std::vector<std::uint32_t> members;
    bool exact = true;
    std::size_t upper_bound = 0;
  };

  Outcome solve() {
    const std::size_t n = adjacency_.size();
    Bitset all(n);
    all.set_all();
    seed_greedy(all);
    const std::size_t root_bound = std::min(n, bound(all));
    std::vector<std::uint32_t> chosen;
    if (best_.size() < root_bound) expand(all, chosen);
    Outcome outcome;
    outcome.members = best_;
    std::sort(outcome.members.begin(), outcome.members.end());
    outcome.exact = !control_.aborted();
    outcome.upper_bound = outcome.exact ? best_.size() : root_bound;
    return outcome;
  }

 private:
  std::size_t degree(std::size_t v, const Bitset& pool) const {
    return adjacency_[v].count_and(pool);
  }

  void take(std::size_t v, Bitset& pool, std::vector<std::uint32_t>& chosen) const {
    chosen.push_back(static_cast<std::uint32_t>(v));
    pool -= adjacency_[v];
    pool.reset(v);
  }

  // Minimum-degree greedy, giving the first incumbent.
  void seed_greedy(Bitset pool) {
    std::vector<std::uint32_t> chosen;
    while (!pool.none()) {
      std::size_t pick = Bitset::npos;
      std::size_t pick_degree = 0;
      pool.for_each([&](std::size_t v) {
        const std::size_t d = degree(v, pool);
        if (pick == Bitset::npos || d < pick_degree) {
          pick = v;
          pick_degree = d;
        }
      });
      take(pick, pool, chosen);
    }
    best_ = std::move(chosen);
  }

  // min(syndrome packing bound, greedy clique cover size).
  std::size_t bound(const Bitset& pool) {
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    std::size_t distinct = 0;
    std::vector<Bitset> commons;
    pool.for_each([&](std::size_t v) {
      for (unsigned e = 0; e < lambda_; ++e) {
        std::uint32_t& mark = stamp_[syndromes_[v * lambda_ + e]];
        if (mark != generation_) {
          mark = generation_;
          ++distinct;
        }
      }
      for (Bitset& common : commons) {
        if (common.test(v)) {
          common &= adjacency_[v];
          return;
        }
      }
      commons.push_back(adjacency_[v]);
    });
    return std::min(distinct / lambda_, commons.size());
  }

  void expand(Bitset pool, std::vector<std::uint32_t>& chosen) {
    if (control_.tick()) return;
    const std::size_t base = chosen.size();
    // Vertices of degree 0 or 1 belong to some maximum independent set.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = pool.first(); v != Bitset::npos; v = pool.next(v + 1)) {
        if (degree(v, pool) <= 1) {
          take(v, pool, chosen);
          changed = true;
        }
      }
    }
    if (pool.none()) {
      if (chosen.size() > best_.size()) best_ = chosen;
      chosen.resize(base);
      return;
    }
    if (chosen.size() + bound(pool) <= best_.size()) {
      chosen.resize(base);
      return;
    }
    std::size_t branch = Bitset::npos;
    std::size_t branch_degree = 0;
    pool.for_each([&](std::size_t v) {
      const std::size_t d = degree(v, pool);
      if (branch == Bitset::npos || d > branch_degree) {
        branch = v;
        branch_degree = d;
      }
    });
    {
      Bitset with = pool;
      take(branch, with, chosen);
      expand(std::move(with), chosen);
      chosen.pop_back();
    }
    pool.reset(branch);
    expand(std::move(pool), chosen);
    chosen.resize(base);
  }

  std::vector<Bitset> adjacency_;
  std::vector<std::uint32_t> syndromes_;
  unsigned lambda_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
  Control& control_;
  std::vector<std::uint32_t> best_;
};

SearchResult solve_graph(const ConflictGraph& graph, const SearchBudget& budget) {
  Control control(budget);
  const std::size_t n = graph.vertices.size();
  // Connected components, discovered in ascending order of smallest vertex.
  std::vector<int> component(n, -1);
  std::vector<std::vector<std::uint32_t>> components;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.push_back({s});
    component[s] = id;
    for (std::size_t i = 0; i < components.back().size(); ++i) {
      for (std::uint32_t w : graph.adjacency[components.back()[i]]) {
        if (component[w] < 0) {
          component[w] = id;
          components.back().push_back(w);
        }
      }
    }
    std::sort(components.back().begin(), components.back().end());
  }

  std::vector<std::uint64_t> witness;
  std::uint64_t upper_bound = 0;
  bool exact = true;
  for (const auto& members : components) {
    std::vector<std::uint32_t> local(n, 0);
    for (std::uint32_t i = 0; i < members.size(); ++i) local[members[i]] = i;
    std::vector<Bitset> adjacency(members.size(), Bitset(members.size()));
    std::vector<std::uint64_t> values;
    for (std::uint32_t i = 0; i < members.size(); ++i) {
      for (std::uint32_t w : graph.adjacency[members[i]]) adjacency[i].set(local[w]);
      for (std::uint64_t s : syndromes_of(graph.vertices[members[i]], graph.q, graph.lambda)) {
        values.push_back(s);
      }
    }
    std::vector<std::uint64_t> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::uint32_t> syndrome_ids;
    syndrome_ids.reserve(values.size());
    for (std::uint64_t s : values) {
      syndrome_ids.push_back(static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), s) - distinct.begin()));
    }
    ComponentSolver solver(std::move(adjacency), std::move(syndrome_ids), distinct.size(),
                           graph.lambda, control);
    const ComponentSolver::Outcome outcome = solver.solve();
    for (std::uint32_t v : outcome.members) witness.push_back(graph.vertices[members[v]]);
    upper_bound += outcome.upper_bound;
    exact = exact && outcome.exact;
  }

  SearchResult result;
  result.q = graph.q;
  result.lambda = graph.lambda;
  result.witness = ResidueSet(graph.q, std::move(witness));
  result.max_size = result.witness.size();
  result.nodes_expanded = control.nodes();
  result.elapsed = control.elapsed();
  result.exact = exact;
  result.upper_bound = exact ? result.max_size : upper_bound;
  if (!is_b1_set(result.witness, graph.lambda).valid) {
    throw_error(ErrorCode::kInternal, "search produced an invalid witness");
  }
  return result;
}

}  // namespace

bool is_admissible(std::uint64_t x, std::uint64_t q, unsigned lambda) {
  std::vector<std::uint64_t> products = syndromes_of(x, q, lambda);
  if (std::find(products.begin(), products.end(), 0) != products.end()) return false;
  std::sort(products.begin(), products.end());
  return std::adjacent_find(products.begin(), products.end()) == products.end();
}

ConflictGraph conflict_graph(std::uint64_t q, unsigned lambda) {
  if (q == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  std::vector<std::uint64_t> all(q - 1);
  std::iota(all.begin(), all.end(), 1);
  return build_graph(q, lambda, std::move(all));
}

ConflictGraph conflict_graph(std::uint64_t q, unsigned lambda,
                             std::span<const std::uint64_t> allowed) {
  return build_graph(q, lambda, std::vector<std::uint64_t>(allowed.begin(), allowed.end()));
}

SearchResult exact_max(std::uint64_t q, unsigned lambda, const SearchBudget& budget) {
  return solve_graph(conflict_graph(q, lambda), budget);
}

SearchResult exact_max_in_subset(std::uint64_t q, unsigned lambda,
                                 std::span<const std::uint64_t> allowed,
                                 const SearchBudget& budget) {
  return solve_graph(conflict_graph(q, lambda, allowed), budget);
}

}  // namespace magset
