#include "magset/constructions.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divisor_cases.hpp"
#include "json.hpp"
#include "magset/errors.hpp"
#include "magset/number_theory.hpp"
#include "magset/verifier.hpp"

namespace magset {

namespace {

constexpr unsigned kLambda = 4;

// Accepts `raw` as a set mod q only if it has exactly `expected` distinct
// nonzero members and passes the syndrome check.
std::optional<ResidueSet> accept(std::uint64_t q, std::vector<std::uint64_t> raw, std::uint64_t expected) {
  if (raw.size() != expected) return std::nullopt;
  std::sort(raw.begin(), raw.end());
  if (std::adjacent_find(raw.begin(), raw.end()) != raw.end()) return std::nullopt;
  if (!raw.empty() && raw.front() == 0) return std::nullopt;
  ResidueSet set(q, std::move(raw));
  if (!is_b1_set(set, kLambda).valid) return std::nullopt;
  return set;
}

std::string with_variant(const std::string& label, const std::string& variant) {
  return variant.empty() ? label : label + " [adjusted: " + variant + "]";
}

void require_r(std::uint64_t r) {
  if (r == 0 || nt::gcd(r, 6) != 1) {
    throw_error(ErrorCode::kInvalidArgument, "r = " + std::to_string(r) + " must be coprime to 6");
  }
}

void finish(ConstructionReport& report) {
  report.upper_bound = std::min(report.upper_bound == 0 ? hamming_upper_bound(report.instance.q, kLambda)
                                                        : report.upper_bound,
                                hamming_upper_bound(report.instance.q, kLambda));
  report.verified = report.result.size() == report.claimed_size && is_b1_set(report.result, kLambda).valid;
}

}  // namespace

std::uint64_t hamming_upper_bound(std::uint64_t q, unsigned lambda) {
  if (q == 0 || lambda == 0) throw_error(ErrorCode::kInvalidArgument, "q and lambda must be positive");
  return (q - 1) / lambda;
}

std::optional<std::uint64_t> closed_form_size(const Instance& instance) {
  if (instance.k % 3 != 2) return std::nullopt;
  return (instance.q + 3 * instance.r - 7) / 7;
}

DivisorContext divisor_context(std::uint64_t d, std::uint64_t q) {
  if (d == 0 || nt::gcd(d, 6) != 1) {
    throw_error(ErrorCode::kInvalidArgument, "divisor d = " + std::to_string(d) + " must be coprime to 6");
  }
  if (q % (2 * d) != 0) {
    throw_error(ErrorCode::kInvalidArgument, "2d = " + std::to_string(2 * d) + " must divide q = " + std::to_string(q));
  }
  DivisorContext c;
  c.d = d;
  c.q = q;
  c.phi = nt::euler_phi(d);
  const std::uint64_t three[] = {3};
  c.gamma = nt::coset_reps(three, 2 * d);
  c.lambda_reps = c.gamma;
  if (d == 1) return c;

  c.n = nt::mult_order(3, d);
  if (const auto s = nt::dlog3(2, d)) {
    c.two_in_three = true;
    c.s = *s;
    c.m = std::min(c.s, c.n - c.s);
    c.k_prime = c.n / (2 * c.m);
    c.r_prime = c.n % (2 * c.m);
    return c;
  }

  c.two_in_three = false;
  c.b = d + 2;
  const std::uint64_t two_three[] = {2, 3};
  c.t = nt::generated_subgroup(two_three, d).size() / c.n;
  const std::uint64_t two_t = nt::pow_mod(2, c.t, d);
  std::uint64_t power = 1;
  bool found = false;
  for (std::uint64_t s = 0; s < c.n; ++s, power = nt::mul_mod(power, 3, d)) {
    if (nt::mul_mod(two_t, power, d) == 1) {
      c.s = s;
      found = true;
      break;
    }
  }
  if (!found) throw_error(ErrorCode::kInternal, "no s with 2^t 3^s = 1 mod " + std::to_string(d));
  const std::uint64_t three_b[] = {3, c.b};
  c.lambda_reps = nt::coset_reps(three_b, 2 * d);
  if (c.lambda_reps.representatives.size() * c.t * c.n != c.phi) {
    throw_error(ErrorCode::kInternal, "coset count mismatch for d = " + std::to_string(d));
  }
  return c;
}

DivisorPiece build_divisor_piece(const DivisorContext& c) {
  DivisorPiece piece;
  piece.d = c.d;
  piece.elements = ResidueSet(c.q);
  if (c.trivial()) {
    piece.case_label = "d = 1";
    piece.exact = true;
    return piece;
  }
  const std::uint64_t mod = 2 * c.d;
  const std::uint64_t scale = c.q / mod;
  const std::uint64_t b = c.b % mod;
  const auto plans = detail::case_plans(c);
  if (plans.empty()) throw_error(ErrorCode::kInternal, "no case applies to d = " + std::to_string(c.d));

  std::string tried;
  for (const auto& plan : plans) {
    const auto& reps = plan.over_lambda_reps ? c.lambda_reps.representatives : c.gamma.representatives;
    const std::uint64_t doubled = plan.per_rep_doubled * reps.size();
    if (doubled % 2 != 0) throw_error(ErrorCode::kInternal, "odd size numerator in " + plan.label);
    const std::uint64_t bound = doubled / 2;

    std::vector<std::uint64_t> raw;
    for (std::uint64_t a : reps) {
      for (const auto& run : plan.runs) {
        const std::uint64_t bj = nt::pow_mod(b, run.b_power, mod);
        for (std::int64_t i = run.lo; i < run.hi; ++i) {
          const std::int64_t exponent = run.step * i + run.offset;
          const std::uint64_t e = nt::reduce(exponent, c.n);
          const std::uint64_t x = nt::mul_mod(nt::mul_mod(nt::pow_mod(3, e, mod), bj, mod), a, mod);
          raw.push_back(x * scale);
        }
      }
    }
    if (auto set = accept(c.q, std::move(raw), bound)) {
      piece.elements = std::move(*set);
      piece.case_label = with_variant(plan.label, plan.variant);
      piece.bound = bound;
      piece.exact = plan.exact;
      return piece;
    }
    tried += tried.empty() ? "" : "; ";
    tried += with_variant(plan.label, plan.variant);
  }
  throw_error(ErrorCode::kConstructionFailure,
              "no valid set of the promised size for d = " + std::to_string(c.d) + " (tried: " + tried + ")");
}

ConstructionReport build_two_r(std::uint64_t r) {
  require_r(r);
  ConstructionReport report;
  report.instance = make_instance(2 * r);
  report.method = "divisor sum, q = 2r";
  report.result = ResidueSet(2 * r);
  bool all_exact = true;
  for (std::uint64_t d : nt::divisors(r)) {
    DivisorPiece piece = build_divisor_piece(divisor_context(d, 2 * r));
    report.result = report.result.merged(piece.elements);
    report.claimed_size += piece.bound;
    all_exact = all_exact && piece.exact;
    report.pieces.push_back(std::move(piece));
  }
  if (all_exact) report.tight = true;
  finish(report);
  return report;
}

ConstructionReport build_four_r(std::uint64_t r) {
  require_r(r);
  const std::uint64_t q = 4 * r;
  ConstructionReport report;
  report.instance = make_instance(q);
  report.method = "cyclotomic orbits, q = 4r";
  report.result = ResidueSet(q);
  const std::uint64_t three[] = {3};
  for (std::uint64_t d : nt::divisors(r)) {
    if (d == 1) continue;
    const std::uint64_t n1 = nt::mult_order(3, 2 * d);
    const auto gamma = nt::coset_reps(three, 2 * d);
    std::vector<std::uint64_t> raw;
    for (std::uint64_t a : gamma.representatives) {
      const std::uint64_t alpha = nt::mul_mod(a, r / d, q);
      if (n1 % 2 == 1) {
        for (std::uint64_t i = 0; i < n1; ++i) raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i, q), alpha, q));
      } else {
        const std::uint64_t shifted = (alpha + 2 * r) % q;
        for (std::uint64_t i = 0; i < n1 / 2; ++i) {
          raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i, q), alpha, q));
          raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i + 1, q), shifted, q));
        }
      }
    }
    DivisorPiece piece;
    piece.d = d;
    piece.bound = nt::euler_phi(d);
    piece.exact = true;
    piece.case_label = n1 % 2 == 1 ? "ord_2d(3) odd: even powers" : "ord_2d(3) even: odd powers shifted by 2r";
    auto set = accept(q, std::move(raw), piece.bound);
    if (!set) {
      throw_error(ErrorCode::kConstructionFailure, "q = 4r orbit set fails for d = " + std::to_string(d));
    }
    piece.elements = std::move(*set);
    report.result = report.result.merged(piece.elements);
    report.claimed_size += piece.bound;
    report.pieces.push_back(std::move(piece));
  }
  report.tight = true;
  finish(report);
  return report;
}

ConstructionReport build_lifted(unsigned k, std::uint64_t r, const ConstructOptions& options) {
  require_r(r);
  if (k < 3 || k > 62) throw_error(ErrorCode::kInvalidArgument, "lift needs 3 <= k <= 62");
  const std::uint64_t q = (std::uint64_t{1} << k) * r;
  if (q / (std::uint64_t{1} << k) != r) throw_error(ErrorCode::kInvalidArgument, "q overflows");
  const std::uint64_t quarter_power = std::uint64_t{1} << (k - 2);
  ConstructionReport report;
  report.instance = make_instance(q);
  report.method = "lift from 2^(k-3) r, q = 2^k r";
  report.result = ResidueSet(q);
  const std::uint64_t three[] = {3};

  for (std::uint64_t d : nt::divisors(r)) {
    const std::uint64_t big = quarter_power * d;
    const std::uint64_t n_low = nt::mult_order(3, big);
    const std::uint64_t n_high = nt::mult_order(3, 2 * big);
    const std::uint64_t expected = (quarter_power / 2) * nt::euler_phi(d);

    const auto orbit = [&](const std::vector<std::uint64_t>& reps, int form) {
      std::vector<std::uint64_t> raw;
      for (std::uint64_t a : reps) {
        const std::uint64_t alpha = nt::mul_mod(a, r / d, q);
        if (form == 0) {
          for (std::uint64_t i = 0; i < n_low; ++i) raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i, q), alpha, q));
        } else if (form == 1) {
          const std::uint64_t shifted = (alpha + quarter_power * r) % q;
          for (std::uint64_t i = 0; i < n_low / 2; ++i) {
            raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i, q), alpha, q));
            raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i + 1, q), shifted, q));
          }
        } else {
          for (std::uint64_t i = 0; i < n_low / 2; ++i) raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i, q), alpha, q));
          for (std::uint64_t i = n_low / 2; i < n_low; ++i) {
            raw.push_back(nt::mul_mod(nt::pow_mod(3, 2 * i + 1, q), alpha, q));
          }
        }
      }
      return raw;
    };

    struct Attempt {
      std::string label;
      std::vector<std::uint64_t> raw;
    };
    std::vector<Attempt> attempts;
    const auto reps_big = nt::coset_reps(three, big).representatives;
    if (n_low % 2 == 1) {
      attempts.push_back({"ord(3) odd: even powers", orbit(reps_big, 0)});
    } else if (n_high == n_low) {
      const std::string label = "ord(3) even and stable under doubling: odd powers shifted by 2^(k-2) r";
      attempts.push_back({label, orbit(nt::coset_reps(three, big / 2).representatives, 1)});
      attempts.push_back({with_variant(label, "representatives modulo 2^(k-2) d"), orbit(reps_big, 1)});
    } else {
      attempts.push_back({"ord(3) doubles: even then odd powers", orbit(reps_big, 2)});
    }

    DivisorPiece piece;
    piece.d = d;
    piece.bound = expected;
    piece.exact = true;
    bool accepted = false;
    for (auto& attempt : attempts) {
      if (auto set = accept(q, std::move(attempt.raw), expected)) {
        piece.elements = std::move(*set);
        piece.case_label = attempt.label;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw_error(ErrorCode::kConstructionFailure, "lifted orbit set fails for d = " + std::to_string(d));
    }
    report.result = report.result.merged(piece.elements);
    report.claimed_size += piece.bound;
    report.pieces.push_back(std::move(piece));
  }

  auto base = std::make_shared<ConstructionReport>(construct(make_instance(q / 8), options));
  if (!base->verified) {
    throw_error(ErrorCode::kConstructionFailure, "base set for q = " + std::to_string(q / 8) + " failed verification");
  }
  report.result = report.result.merged(ResidueSet(q, base->result.elements()).scaled(8));
  report.claimed_size += base->result.size();
  if (base->tight == true) report.tight = true;
  report.base = std::move(base);
  finish(report);
  return report;
}

ConstructionReport construct(const Instance& instance, const ConstructOptions& options) {
  if (instance.lambda != kLambda) {
    throw_error(ErrorCode::kInvalidArgument, "constructions are defined for lambda = 4 only");
  }
  require_construction_eligible(instance);
  ConstructionReport report;
  switch (instance.k) {
    case 0: {
      const SearchResult found = cached_exact_max(instance.q, kLambda, options.cache, options.budget);
      report.instance = instance;
      report.method = "exhaustive search";
      report.result = found.witness;
      report.claimed_size = found.max_size;
      if (found.exact) {
        report.tight = true;
      } else {
        report.upper_bound = found.upper_bound;
      }
      finish(report);
      break;
    }
    case 1:
      report = build_two_r(instance.r);
      break;
    case 2:
      report = build_four_r(instance.r);
      break;
    default:
      report = build_lifted(instance.k, instance.r, options);
      break;
  }
  report.closed_form = closed_form_size(instance);
  if (report.closed_form && *report.closed_form != report.result.size()) {
    throw_error(ErrorCode::kConstructionFailure,
                "size " + std::to_string(report.result.size()) + " differs from the closed form " +
                    std::to_string(*report.closed_form));
  }
  return report;
}

namespace {

nlohmann::json to_json_value(const ConstructionReport& report) {
  using nlohmann::json;
  json pieces = json::array();
  for (const auto& piece : report.pieces) {
    pieces.push_back(json{{"d", piece.d},
                          {"case", piece.case_label},
                          {"size", piece.elements.size()},
                          {"bound", piece.bound},
                          {"exact", piece.exact},
                          {"elements", piece.elements.elements()}});
  }
  json out{{"q", report.instance.q},
           {"k", report.instance.k},
           {"r", report.instance.r},
           {"lambda", report.instance.lambda},
           {"method", report.method},
           {"size", report.result.size()},
           {"claimed_size", report.claimed_size},
           {"upper_bound", report.upper_bound},
           {"verified", report.verified},
           {"tight", nullptr},
           {"closed_form", nullptr},
           {"elements", report.result.elements()},
           {"pieces", std::move(pieces)},
           {"base", nullptr}};
  if (report.tight) out["tight"] = *report.tight;
  if (report.closed_form) out["closed_form"] = *report.closed_form;
  if (report.base) out["base"] = to_json_value(*report.base);
  return out;
}

}  // namespace

std::string report_to_json(const ConstructionReport& report) { return to_json_value(report).dump(); }

}  // namespace magset
