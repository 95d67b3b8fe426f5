#ifndef MAGSET_SRC_DIVISOR_CASES_HPP_
#define MAGSET_SRC_DIVISOR_CASES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "magset/constructions.hpp"

namespace magset::detail {

// {3^(step*i + offset) * b^b_power * a : lo <= i < hi} for each coset
// representative a, in Z_{2d}. Exponents of 3 are taken modulo ord(3).
struct Run {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t step = 2;
  std::int64_t offset = 0;
  std::uint64_t b_power = 0;
};

struct CasePlan {
  std::string label;
  std::string variant;  // empty for the formula as stated
  std::vector<Run> runs;
  std::uint64_t per_rep_doubled = 0;  // twice the promised count per representative
  bool exact = false;
  bool over_lambda_reps = false;  // representatives from <3,b> instead of <3>
};

// The stated formula for the context's case followed by its corrected
// readings, in the order they are to be tried.
std::vector<CasePlan> case_plans(const DivisorContext& context);

}  // namespace magset::detail

#endif  // MAGSET_SRC_DIVISOR_CASES_HPP_
