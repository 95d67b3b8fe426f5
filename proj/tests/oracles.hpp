#ifndef MAGSET_TESTS_ORACLES_HPP_
#define MAGSET_TESTS_ORACLES_HPP_

// Deliberately naive reference implementations. They share no code with the
// library and are used to cross-check it.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

// Smallest n > 0 with l^n = 1 (mod d), by repeated multiplication.
inline u64 order(u64 l, u64 d) {
  if (d == 1) return 1;
  u64 x = l % d, n = 1;
  while (x != 1) {
    x = x * (l % d) % d;
    ++n;
  }
  return n;
}

inline u64 phi(u64 n) {
  u64 count = 0;
  for (u64 a = 1; a <= n; ++a) count += gcd(a, n) == 1 ? 1 : 0;
  return count;
}

// All products e*b (1 <= e <= lambda) distinct and nonzero, via a hash set.
inline bool is_b1(const std::vector<u64>& set, u64 q, unsigned lambda) {
  std::unordered_set<u64> seen;
  for (u64 b : set) {
    for (unsigned e = 1; e <= lambda; ++e) {
      const u64 s = e * b % q;
      if (s == 0 || !seen.insert(s).second) return false;
    }
  }
  return true;
}

// Orbit {l^i * beta mod q}.
inline std::set<u64> orbit(u64 l, u64 beta, u64 q) {
  std::set<u64> out;
  u64 x = beta % q;
  while (out.insert(x).second) x = x * l % q;
  return out;
}

// Smallest s >= 1 with 3^s = target (mod d), or 0 if none.
inline u64 dlog3(u64 target, u64 d) {
  u64 x = 3 % d;
  for (u64 s = 1; s <= d; ++s) {
    if (x == target % d) return s;
    x = x * 3 % d;
  }
  return 0;
}

inline std::set<u64> subgroup(const std::vector<u64>& generators, u64 modulus) {
  std::set<u64> group{1 % modulus};
  bool grew = true;
  while (grew) {
    grew = false;
    for (u64 x : std::vector<u64>(group.begin(), group.end())) {
      for (u64 g : generators) grew |= group.insert(x * g % modulus).second;
    }
  }
  return group;
}

// Largest valid set by plain backtracking over candidates in ascending order.
// Only for tiny q.
class BruteMax {
 public:
  BruteMax(u64 q, unsigned lambda) : q_(q), lambda_(lambda), used_(q, false) {
    for (u64 x = 1; x < q; ++x) {
      if (is_b1({x}, q, lambda)) candidates_.push_back(x);
    }
  }

  u64 run() {
    best_ = 0;
    recurse(0, 0);
    return best_;
  }

 private:
  void recurse(std::size_t index, u64 size) {
    best_ = std::max(best_, size);
    if (size + (candidates_.size() - index) <= best_) return;
    const u64 free_slots = static_cast<u64>(std::count(used_.begin() + 1, used_.end(), false));
    if (size + free_slots / lambda_ <= best_) return;
    for (std::size_t i = index; i < candidates_.size(); ++i) {
      const u64 x = candidates_[i];
      bool ok = true;
      for (unsigned e = 1; e <= lambda_ && ok; ++e) ok = !used_[e * x % q_];
      if (!ok) continue;
      for (unsigned e = 1; e <= lambda_; ++e) used_[e * x % q_] = true;
      recurse(i + 1, size + 1);
      for (unsigned e = 1; e <= lambda_; ++e) used_[e * x % q_] = false;
    }
  }

  u64 q_;
  unsigned lambda_;
  std::vector<bool> used_;
  std::vector<u64> candidates_;
  u64 best_ = 0;
};

inline u64 brute_max(u64 q, unsigned lambda) { return BruteMax(q, lambda).run(); }

}  // namespace oracle

#endif  // MAGSET_TESTS_ORACLES_HPP_
