#include <set>
#include <vector>

#include "doctest.h"
#include "magset/errors.hpp"
#include "magset/residue_structure.hpp"
#include "oracles.hpp"

using u64 = std::uint64_t;
using magset::make_instance;

namespace {

// Independent membership rule: x lies in V_d exactly when gcd(x, r) = r/d.
u64 class_of(u64 x, u64 r) { return r / oracle::gcd(x, r); }

}  // namespace

TEST_CASE("instance splits q into 2^k r") {
  const auto inst = make_instance(160);
  CHECK(inst.k == 5);
  CHECK(inst.r == 5);
  CHECK(inst.lambda == 4);
  CHECK(magset::construction_eligible(make_instance(40)));
  CHECK_FALSE(magset::construction_eligible(make_instance(42)));
  CHECK_THROWS_AS(magset::require_construction_eligible(make_instance(21)), magset::Error);
  CHECK_THROWS_AS(make_instance(0), magset::Error);
}

TEST_CASE("V_d and U_i for q = 10") {
  const auto inst = make_instance(10);
  const auto v5 = magset::decompose_divisor(inst, 5);
  CHECK(v5.V == std::vector<u64>{1, 2, 3, 4, 6, 7, 8, 9});
  CHECK(v5.U[0] == std::vector<u64>{1, 3, 7, 9});
  CHECK(v5.U[1] == std::vector<u64>{2, 4, 6, 8});
  const auto v1 = magset::decompose_divisor(inst, 1);
  CHECK(v1.V == std::vector<u64>{0, 5});
  CHECK(v1.U[0] == std::vector<u64>{5});
  CHECK(v1.U[1] == std::vector<u64>{0});
  CHECK_THROWS_AS(magset::decompose_divisor(inst, 3), magset::Error);
}

TEST_CASE("divisor classes partition Z_q") {
  for (u64 q = 1; q <= 1500; ++q) {
    const auto inst = make_instance(q);
    if (!magset::construction_eligible(inst)) continue;
    std::vector<int> hits(q, 0);
    for (const auto& part : magset::decompose(inst)) {
      for (u64 x : part.V) {
        ++hits[x];
        CHECK(class_of(x, inst.r) == part.d);
      }
      std::set<u64> from_u;
      for (unsigned i = 0; i < part.U.size(); ++i) {
        for (u64 x : part.U[i]) {
          CHECK(from_u.insert(x).second);
          const u64 g = oracle::gcd(x, u64{1} << inst.k);
          CHECK(g == (u64{1} << i));
        }
      }
      CHECK(from_u == std::set<u64>(part.V.begin(), part.V.end()));
      CHECK(part.V.size() == (u64{1} << inst.k) * oracle::phi(part.d));
      if (inst.k == 1 && part.d > 1) {
        CHECK(part.U[0].size() == oracle::phi(part.d));
        CHECK(part.U[1].size() == oracle::phi(part.d));
      }
    }
    for (u64 x = 0; x < q; ++x) CHECK(hits[x] == 1);
  }
}

TEST_CASE("valuation partitions") {
  const auto k3 = magset::n_partition_k3(make_instance(40));
  CHECK(k3[2] == std::vector<u64>{4, 12, 20, 28, 36});
  CHECK(k3[3] == std::vector<u64>{8, 16, 24, 32});
  std::set<u64> all;
  for (const auto& part : k3) {
    for (u64 x : part) CHECK(all.insert(x).second);
  }
  CHECK(all.size() == 39);
  CHECK(*all.begin() == 1);
  CHECK_THROWS_AS(magset::n_partition_k3(make_instance(20)), magset::Error);

  const auto k2 = magset::n_partition_k2(make_instance(20));
  CHECK(k2[2] == std::vector<u64>{4, 8, 12, 16});
  CHECK(k2[0].size() == 10);
  CHECK(k2[1].size() == 5);
  CHECK(magset::n_partition_k2(make_instance(4))[2].empty());
  CHECK_THROWS_AS(magset::n_partition_k2(make_instance(40)), magset::Error);

  for (u64 q = 8; q <= 3000; q += 8) {
    const auto inst = make_instance(q);
    const auto parts = magset::n_partition_k3(inst);
    CHECK(parts[2].size() == (u64{1} << (inst.k - 3)) * inst.r);
    u64 total = 0;
    for (const auto& p : parts) total += p.size();
    CHECK(total == q - 1);
  }
}

TEST_CASE("doubling map") {
  CHECK(magset::theta2(3, 10) == 6);
  CHECK_THROWS_AS(magset::theta2(3, 9), magset::Error);
  const auto v5 = magset::decompose_divisor(make_instance(10), 5);
  std::set<u64> image0, image1;
  for (u64 x : v5.U[0]) image0.insert(magset::theta2(x, 10));
  for (u64 x : v5.U[1]) image1.insert(magset::theta2(x, 10));
  const std::set<u64> u1(v5.U[1].begin(), v5.U[1].end());
  CHECK(image0 == u1);
  CHECK(image1 == u1);
}
