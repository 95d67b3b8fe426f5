#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "magset/errors.hpp"
#include "magset/residue_structure.hpp"
#include "magset/search.hpp"
#include "magset/verifier.hpp"
#include "oracles.hpp"

using u64 = std::uint64_t;

TEST_CASE("conflict graph structure") {
  CHECK(magset::conflict_graph(2, 4).vertices.empty());
  const auto g5 = magset::conflict_graph(5, 4);
  CHECK(g5.vertices == std::vector<u64>{1, 2, 3, 4});
  for (const auto& row : g5.adjacency) CHECK(row.size() == 3);
  const auto g9 = magset::conflict_graph(9, 4);
  CHECK(std::find(g9.vertices.begin(), g9.vertices.end(), 3) == g9.vertices.end());
  CHECK(std::find(g9.vertices.begin(), g9.vertices.end(), 6) == g9.vertices.end());

  for (u64 q = 1; q <= 60; ++q) {
    const auto g = magset::conflict_graph(q, 4);
    for (u64 x = 1; x < q; ++x) {
      const bool listed = std::binary_search(g.vertices.begin(), g.vertices.end(), x);
      CHECK(listed == oracle::is_b1({x}, q, 4));
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      for (std::size_t j = 0; j < g.vertices.size(); ++j) {
        if (i == j) continue;
        const auto& row = g.adjacency[i];
        const bool edge = std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(j));
        CHECK(edge == !oracle::is_b1({g.vertices[i], g.vertices[j]}, q, 4));
      }
    }
  }
}

TEST_CASE("exact maximum on examples") {
  CHECK(magset::exact_max(40, 4).max_size == 6);
  CHECK(magset::exact_max(20, 4).max_size == 4);
  CHECK(magset::exact_max(44, 4).max_size == 10);
  CHECK(magset::exact_max(5, 4).max_size == 1);
  CHECK(magset::exact_max(2, 4).max_size == 0);
  CHECK(magset::exact_max(1, 4).max_size == 0);
}

TEST_CASE("exact maximum agrees with brute force on small moduli") {
  for (unsigned lambda : {1u, 2u, 3u, 4u}) {
    for (u64 q = 1; q <= 42; ++q) {
      const auto result = magset::exact_max(q, lambda);
      CHECK(result.exact);
      REQUIRE_MESSAGE(result.max_size == oracle::brute_max(q, lambda), "q=" << q << " lambda=" << lambda);
      CHECK(result.witness.size() == result.max_size);
      CHECK(oracle::is_b1(result.witness.elements(), q, lambda));
      CHECK(result.max_size <= (q - 1) / lambda);
    }
  }
}

TEST_CASE("search is deterministic") {
  const auto a = magset::exact_max(98, 4);
  const auto b = magset::exact_max(98, 4);
  CHECK(a.witness == b.witness);
  CHECK(a.nodes_expanded == b.nodes_expanded);
}

TEST_CASE("restricted search within one divisor class") {
  const auto inst = magset::make_instance(190);
  const auto v19 = magset::decompose_divisor(inst, 19).V;
  CHECK(magset::exact_max_in_subset(190, 4, v19).max_size == 9);
  const auto v5 = magset::decompose_divisor(inst, 5).V;
  CHECK(magset::exact_max_in_subset(190, 4, v5).max_size == 2);
  CHECK(magset::exact_max_in_subset(190, 4, std::vector<u64>{}).max_size == 0);
}

TEST_CASE("maximum splits over divisor classes") {
  for (u64 r = 1; r <= 53; r += 2) {
    if (r % 3 == 0) continue;
    const auto inst = magset::make_instance(2 * r);
    u64 total = 0;
    for (const auto& part : magset::decompose(inst)) total += magset::exact_max_in_subset(2 * r, 4, part.V).max_size;
    CHECK_MESSAGE(total == magset::exact_max(2 * r, 4).max_size, "r=" << r);
  }
}

TEST_CASE("exhausted budget is reported, not thrown") {
  magset::SearchBudget tiny;
  tiny.max_nodes = 5;
  const auto result = magset::exact_max(104, 4, tiny);
  CHECK_FALSE(result.exact);
  CHECK(result.upper_bound >= result.max_size);
  CHECK(result.upper_bound <= 103 / 4);
  CHECK(oracle::is_b1(result.witness.elements(), 104, 4));
}

TEST_CASE("cache serves exact records only") {
  const auto path = std::filesystem::temp_directory_path() / "magset-search-cache-test.jsonl";
  std::filesystem::remove(path);
  {
    magset::SearchCache cache(path.string());
    const auto first = magset::cached_exact_max(44, 4, &cache);
    CHECK(first.max_size == 10);
    magset::SearchBudget tiny;
    tiny.max_nodes = 5;
    const auto partial = magset::cached_exact_max(104, 4, &cache, tiny);
    CHECK_FALSE(partial.exact);
  }
  {
    magset::SearchCache cache(path.string());
    const auto hit = cache.find(44, 4);
    REQUIRE(hit.has_value());
    CHECK(hit->max_size == 10);
    CHECK_FALSE(cache.find(104, 4).has_value());
  }
  {
    std::ofstream out(path, std::ios::app);
    out << R"({"q":9,"lambda":4,"max_size":2,"witness":[1,2],"nodes":0,"ms":0,"exact":true})" << "\n";
  }
  CHECK_THROWS_AS(magset::SearchCache(path.string()), magset::Error);
  std::filesystem::remove(path);
}
