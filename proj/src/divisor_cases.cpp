#include "divisor_cases.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "magset/errors.hpp"

namespace magset::detail {

namespace {

using i64 = std::int64_t;

// Exact halving of a range endpoint; every endpoint in the case table is an
// integer under the parity conditions that select the case.
i64 half(i64 x) {
  if (x % 2 != 0) {
    throw_error(ErrorCode::kConstructionFailure,
                "non-integral range endpoint " + std::to_string(x) + "/2");
  }
  return x / 2;
}

// 3^(2i) b^j for lo <= i < hi.
Run even(i64 lo, i64 hi, i64 j) { return Run{lo, hi, 2, 0, static_cast<std::uint64_t>(j)}; }
// 3^(2i+1) b^j for lo <= i < hi.
Run odd(i64 lo, i64 hi, i64 j) { return Run{lo, hi, 2, 1, static_cast<std::uint64_t>(j)}; }
// The single element 3^e b^j.
Run single(i64 e, i64 j) { return Run{0, 1, 1, e, static_cast<std::uint64_t>(j)}; }

class PlanBuilder {
 public:
  PlanBuilder(std::string prefix, bool over_lambda) : prefix_(std::move(prefix)), over_lambda_(over_lambda) {}

  CasePlan& add(const std::string& condition, i64 per_rep_doubled, bool exact, std::vector<Run> runs,
                std::string variant = {}) {
    CasePlan plan;
    plan.label = prefix_ + condition;
    plan.variant = std::move(variant);
    plan.runs = std::move(runs);
    plan.per_rep_doubled = static_cast<std::uint64_t>(per_rep_doubled);
    plan.exact = exact;
    plan.over_lambda_reps = over_lambda_;
    plans_.push_back(std::move(plan));
    return plans_.back();
  }

  std::vector<CasePlan> take() { return std::move(plans_); }

 private:
  std::string prefix_;
  bool over_lambda_;
  std::vector<CasePlan> plans_;
};

void append(std::vector<Run>& dst, const std::vector<Run>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

std::vector<CasePlan> plans_two_in_three(const DivisorContext& c) {
  const i64 n = static_cast<i64>(c.n);
  const i64 s = static_cast<i64>(c.s);
  const i64 m = static_cast<i64>(c.m);
  const i64 kp = static_cast<i64>(c.k_prime);
  const i64 rp = static_cast<i64>(c.r_prime);
  PlanBuilder plans("2 in <3>: ", false);

  // Alternating blocks of length m: even powers then odd powers, j < count.
  const auto blocks = [&](i64 count) {
    std::vector<Run> runs;
    for (i64 j = 0; j < count; ++j) {
      runs.push_back(even(j * m, half(m) + j * m, 0));
      runs.push_back(odd(half(m) + j * m, m + j * m - 1, 0));
    }
    return runs;
  };

  if (n % 2 == 0 && s % 2 == 1) {
    plans.add("n even, s odd", n, true, {even(0, half(n), 0)});
  } else if (n % 2 == 0 && m == 2) {
    plans.add("n even, s even, m = 2", 2 * (n / 3), true, {Run{0, n / 3, 3, 0, 0}});
  } else if (n % 2 == 0) {
    if (rp == 0) {
      plans.add("n even, s even, r' = 0", 2 * (m - 1) * kp, false, blocks(kp));
    } else if (rp == 2) {
      const i64 size = 2 * (kp * m - kp + 1);
      auto stated = blocks(kp);
      stated.push_back(single(n - 1, 0));
      plans.add("n even, s even, r' = 2", size, false, stated);
      auto adjusted = blocks(kp);
      adjusted.push_back(single(n - 3, 0));
      plans.add("n even, s even, r' = 2", size, false, adjusted, "extra element 3^(n-3)");
    } else if (rp <= m && kp == 1) {
      plans.add("n even, s even, 2 < r' <= m, k' = 1", 2 * m, false, {even(0, half(m), 0), odd(half(m), m, 0)});
    } else if (rp <= m) {
      auto runs = blocks(kp - 1);
      append(runs, {even(kp * m - m + 1, kp * m - half(m) + 1, 0), odd(kp * m - half(m) + 1, kp * m + 1, 0),
                    single(2 * kp * m - 2 * m - 1, 0)});
      plans.add("n even, s even, 2 < r' <= m, k' >= 2", 2 * (kp * m - kp + 2), false, runs);
    } else {
      const i64 size = 2 * (kp * m + rp - m - kp);
      auto head = blocks(kp - 1);
      append(head, {even(kp * m - m, kp * m + half(rp - 3 * m), 0),
                    odd(kp * m - half(m + 2), kp * m + half(rp - 2 * m - 2), 0),
                    even(kp * m + half(rp - 2 * m), kp * m + half(rp - m), 0)});
      auto stated = head;
      stated.push_back(odd(kp * m + half(rp - m), kp * m + half(rp), 0));
      plans.add("n even, s even, r' > m", size, false, stated);
      auto adjusted = head;
      adjusted.push_back(odd(kp * m + half(rp - m), kp * m + half(rp) - 1, 0));
      plans.add("n even, s even, r' > m", size, false, adjusted, "last odd run ends one step earlier");
    }
  } else if (m % 2 == 1) {
    plans.add("n odd, m odd", n - m, false, {even(0, half(n - m), 0)});
  } else if (rp <= m) {
    auto runs = blocks(kp - 1);
    append(runs, {even(kp * m - m, kp * m - half(m), 0), odd(kp * m - half(m), half(n - m - 1), 0),
                  even(kp * m, half(n - 1), 0)});
    plans.add("n odd, m even, r' <= m", n + rp - m - 2 * kp, false, runs);
  } else {
    auto runs = blocks(kp - 1);
    append(runs, {even(kp * m - m, kp * m - half(m), 0), odd(kp * m - half(m), kp * m, 0),
                  even(half(n - m - 1), half(n - 3) + 1, 0)});
    plans.add("n odd, m even, r' > m", 2 * kp * m + m - 2 * kp + 2, false, runs);
  }
  return plans.take();
}

std::vector<CasePlan> plans_two_not_in_three(const DivisorContext& c) {
  const i64 n = static_cast<i64>(c.n);
  const i64 s = static_cast<i64>(c.s);
  const i64 t = static_cast<i64>(c.t);
  PlanBuilder plans("2 not in <3>: ", true);

  // Number of j in [0, (t - x) / 2] for the upper limit (t - x) / 2.
  const auto count = [](i64 top) { return top < 0 ? i64{0} : top + 1; };

  if (n % 2 == 0 && (t + s) % 2 == 0) {
    std::vector<Run> runs;
    if (t % 2 == 0) {
      for (i64 j = 0; j < count((t - 2) / 2); ++j) {
        runs.push_back(even(0, half(n), 2 * j));
        runs.push_back(odd(0, half(n), 2 * j + 1));
      }
      plans.add("n even, t even, s even", n * t, true, runs);
    } else {
      for (i64 j = 0; j < count((t - 1) / 2); ++j) runs.push_back(even(0, half(n), 2 * j));
      for (i64 j = 0; t >= 3 && j < count((t - 3) / 2); ++j) runs.push_back(odd(0, half(n), 2 * j + 1));
      plans.add("n even, t odd, s odd", n * t, true, runs);
    }
  } else if (n % 2 == 0 && t % 2 == 1) {
    const i64 loops = t >= 3 ? count((t - 3) / 2) : 0;
    // Shared block of the t-odd, s-even cases with split point `cut`.
    const auto body = [&](i64 cut) {
      std::vector<Run> runs;
      for (i64 j = 0; j < loops; ++j) {
        append(runs, {even(0, cut, 2 * j), odd(cut, half(n - 2), 2 * j), odd(0, cut, 2 * j + 1),
                      even(cut + 1, half(n), 2 * j + 1)});
      }
      return runs;
    };
    if (t - 1 < s && 2 * s < n) {
      auto runs = body(half(s));
      append(runs, {even(0, half(s), t - 1), odd(half(s), s, t - 1)});
      plans.add("n even, t odd, s even, t-1 < s < n/2", (n - 2) * (t - 1) + 2 * s, false, runs);
    } else if (t < s && 2 * s == n) {
      auto runs = body(half(s));
      append(runs, {even(0, half(s), t - 1), odd(half(s), s - 1, t - 1)});
      plans.add("n even, t odd, s even, t < s = n/2", (n - 2) * t, false, runs);
    } else if (2 * s > n && s < n - t + 1) {
      auto runs = body(half(n - s));
      append(runs, {even(0, half(n - s), t - 1), odd(half(s - 2), half(n - 2), t - 1)});
      plans.add("n even, t odd, s even, n/2 < s < n-t+1", (n - 2) * (t - 1) + 2 * n - 2 * s, false, runs);
    } else {
      std::vector<Run> runs;
      for (i64 j = 0; j < loops; ++j) {
        append(runs, {even(0, half(n), 2 * j), odd(0, half(n), 2 * j + 1)});
      }
      plans.add("n even, t odd, s even, other s", n * (t - 1), false, runs);
    }
  } else if (n % 2 == 0) {
    const i64 loops1 = count((t - 2) / 2);
    const i64 loops2 = t >= 4 ? count((t - 4) / 2) : 0;
    const std::string prefix = "n even, t even, s odd, ";
    if (t - 2 < s && 2 * s < n - 2) {
      const i64 cut = half(s + 1);
      std::vector<Run> runs;
      for (i64 j = 0; j < loops1; ++j) append(runs, {odd(0, cut, 2 * j), even(half(s + 3), half(n), 2 * j)});
      for (i64 j = 0; j < loops2; ++j) append(runs, {even(0, cut, 2 * j + 1), odd(cut, half(n - 2), 2 * j + 1)});
      append(runs, {even(0, cut, t - 1), odd(cut, s + 1, t - 1)});
      plans.add(prefix + "t-2 < s < (n-2)/2", (n - 2) * (t - 1) + 2 * s + 2, false, runs);
    } else if (2 * t < n && 2 * s == n - 2) {
      const i64 quarter = half(half(n));
      std::vector<Run> runs;
      for (i64 j = 0; j < loops1; ++j) append(runs, {odd(0, quarter, 2 * j), even(quarter + 1, half(n), 2 * j)});
      for (i64 j = 0; j < loops2; ++j) {
        append(runs, {even(0, quarter, 2 * j + 1), odd(quarter, half(n - 2), 2 * j + 1)});
      }
      append(runs, {even(0, quarter, t - 1), odd(quarter, half(n - 2), t - 1)});
      plans.add(prefix + "t < n/2, s = (n-2)/2", (n - 2) * t, false, runs);
    } else if (t < s && 2 * s == n) {
      const i64 cut = half(s + 1);
      std::vector<Run> runs;
      for (i64 j = 0; j < loops1; ++j) append(runs, {odd(0, cut, 2 * j), even(half(s + 3), half(n), 2 * j)});
      for (i64 j = 0; j < loops2; ++j) append(runs, {even(0, cut, 2 * j + 1), odd(cut, half(n - 2), 2 * j + 1)});
      append(runs, {even(0, cut, t - 1), odd(cut, half(n - 2), t - 1)});
      plans.add(prefix + "t < s = n/2", (n - 2) * t, false, runs);
    } else if (2 * t < n && 2 * s == n + 2) {
      const i64 quarter = half(half(n));
      std::vector<Run> stated;
      for (i64 j = 0; j < loops1; ++j) append(stated, {even(0, quarter, 2 * j), odd(quarter + 1, half(n), 2 * j)});
      for (i64 j = 0; j < loops2; ++j) {
        append(stated, {odd(0, quarter, 2 * j + 1), even(quarter, half(n - 2), 2 * j + 1)});
      }
      append(stated, {odd(0, quarter, t - 1), even(quarter, half(n - 2), t - 1)});
      plans.add(prefix + "t < n/2, s = (n+2)/2", (n - 2) * t, false, stated);

      std::vector<Run> swapped;
      for (i64 j = 0; j < loops1; ++j) append(swapped, {even(0, quarter, 2 * j), odd(quarter, half(n - 2), 2 * j)});
      for (i64 j = 0; j < loops2; ++j) {
        append(swapped, {odd(0, quarter, 2 * j + 1), even(quarter + 1, half(n), 2 * j + 1)});
      }
      append(swapped, {odd(0, quarter, t - 1), even(quarter + 1, half(n), t - 1)});
      plans.add(prefix + "t < n/2, s = (n+2)/2", (n - 2) * t, false, swapped, "upper index ranges exchanged");
    } else if (2 * s > n + 2 && s < n - t + 1) {
      const i64 cut = half(n - s + 1);
      const auto build = [&](bool fixed_power) {
        std::vector<Run> runs;
        for (i64 j = 0; j < loops1; ++j) append(runs, {even(0, cut, 2 * j), odd(cut, half(n - 2), 2 * j)});
        for (i64 j = 0; j < loops2; ++j) {
          append(runs, {odd(0, cut, 2 * j + 1), even(half(n - s + 3), half(n), fixed_power ? 2 * j + 1 : 2 * j)});
        }
        append(runs, {odd(0, cut, t - 1), even(half(s - 1), half(n), t - 1)});
        return runs;
      };
      const i64 size = (n - 2) * (t - 1) + 2 * n - 2 * s + 2;
      plans.add(prefix + "(n+2)/2 < s < n-t+1", size, false, build(false));
      plans.add(prefix + "(n+2)/2 < s < n-t+1", size, false, build(true), "b^(2j+1) in the upper even run");
    } else {
      std::vector<Run> runs;
      for (i64 j = 0; j < loops1; ++j) runs.push_back(even(0, half(n), 2 * j));
      for (i64 j = 0; j < loops2; ++j) runs.push_back(odd(0, half(n), 2 * j + 1));
      plans.add(prefix + "other s", n * (t - 1), false, runs);
    }
  } else {
    const i64 h = half(n - 1);
    if (t % 2 == 1) {
      const i64 loops = t >= 3 ? count((t - 3) / 2) : 0;
      const auto body = [&] {
        std::vector<Run> runs;
        for (i64 j = 0; j < loops; ++j) append(runs, {even(0, h, 2 * j), odd(0, h, 2 * j + 1)});
        return runs;
      };
      if (s == 1) {
        std::vector<Run> runs;
        for (i64 j = 0; j < count((t - 1) / 2); ++j) runs.push_back(even(0, h, 2 * j));
        for (i64 j = 0; j < loops; ++j) runs.push_back(odd(0, h, 2 * j + 1));
        plans.add("n odd, t odd, s = 1", (n - 1) * t, false, runs);
      } else if (s % 2 == 1) {
        auto runs = body();
        runs.push_back(even(half(s - 1), h + 1, t - 1));
        plans.add("n odd, t odd, s odd > 1", (n - 1) * (t - 1) + n - s + 2, false, runs);
      } else if (s == 0) {
        auto runs = body();
        runs.push_back(single(n - 1, t - 1));
        plans.add("n odd, t odd, s = 0", (n - 1) * (t - 1) + 2, false, runs);
      } else {
        auto runs = body();
        runs.push_back(even(0, half(s), t - 1));
        plans.add("n odd, t odd, s even > 0", (n - 1) * (t - 1) + s, false, runs);
      }
    } else {
      const i64 loops1 = count((t - 2) / 2);
      const i64 loops2 = t >= 4 ? count((t - 4) / 2) : 0;
      const auto body = [&] {
        std::vector<Run> runs;
        for (i64 j = 0; j < loops1; ++j) runs.push_back(odd(0, h, 2 * j));
        for (i64 j = 0; j < loops2; ++j) runs.push_back(even(0, h, 2 * j + 1));
        return runs;
      };
      if (s % 2 == 1) {
        auto runs = body();
        runs.push_back(even(0, half(s + 1), t - 1));
        plans.add("n odd, t even, s odd", (n - 1) * (t - 1) + s + 1, false, runs);
      } else if (s == 0) {
        std::vector<Run> runs;
        for (i64 j = 0; j < loops1; ++j) append(runs, {odd(0, h, 2 * j), even(0, h, 2 * j + 1)});
        plans.add("n odd, t even, s = 0", (n - 1) * t, false, runs);
      } else {
        auto runs = body();
        runs.push_back(even(half(s), h + 1, t - 1));
        plans.add("n odd, t even, s even > 0", (n - 1) * (t - 1) + n - s + 1, false, runs);
      }
    }
  }
  return plans.take();
}

}  // namespace

std::vector<CasePlan> case_plans(const DivisorContext& context) {
  if (context.trivial()) return {};
  return context.two_in_three ? plans_two_in_three(context) : plans_two_not_in_three(context);
}

}  // namespace magset::detail
