#include "magset/verifier.hpp"

#include <algorithm>
#include <tuple>

#include "magset/errors.hpp"
#include "magset/number_theory.hpp"

namespace magset {

namespace {

// Above this modulus a dense bitset is replaced by sorting the products.
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 26;

void require_lambda(unsigned lambda) {
  if (lambda == 0) throw_error(ErrorCode::kInvalidArgument, "lambda must be at least 1");
}

// Finds the first product equal to `value` in sweep order, stopping before
// (stop_e, stop_b).
Collision first_producer(const ResidueSet& set, unsigned lambda, std::uint64_t value,
                         unsigned stop_e, std::uint64_t stop_b) {
  const std::uint64_t q = set.modulus();
  for (std::uint64_t b : set) {
    for (unsigned e = 1; e <= lambda; ++e) {
      if (b == stop_b && e == stop_e) return {};
      if (nt::mul_mod(e, b, q) == value) return {e, b, stop_e, stop_b};
    }
  }
  return {};
}

Verdict sweep_dense(const ResidueSet& set, unsigned lambda) {
  const std::uint64_t q = set.modulus();
  std::vector<bool> seen(q, false);
  for (std::uint64_t b : set) {
    for (unsigned e = 1; e <= lambda; ++e) {
      const std::uint64_t value = nt::mul_mod(e, b, q);
      if (value == 0) return {false, Collision{e, b, 0, 0}};
      if (seen[value]) return {false, first_producer(set, lambda, value, e, b)};
      seen[value] = true;
    }
  }
  return {true, std::nullopt};
}

Verdict sweep_sorted(const ResidueSet& set, unsigned lambda) {
  const std::uint64_t q = set.modulus();
  // (value, sweep index, e, b)
  std::vector<std::tuple<std::uint64_t, std::size_t, unsigned, std::uint64_t>> products;
  std::size_t index = 0;
  for (std::uint64_t b : set) {
    for (unsigned e = 1; e <= lambda; ++e) {
      products.emplace_back(nt::mul_mod(e, b, q), index++, e, b);
    }
  }
  std::sort(products.begin(), products.end());
  // Report the failure the dense sweep meets first: a zero product, or the
  // later member of a repeated value, whichever has the smaller sweep index.
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < products.size(); ++i) {
    const bool zero = std::get<0>(products[i]) == 0;
    const bool repeat = i > 0 && std::get<0>(products[i]) == std::get<0>(products[i - 1]);
    if (!zero && !repeat) continue;
    if (!best || std::get<1>(products[i]) < std::get<1>(products[*best])) best = i;
  }
  if (!best) return {true, std::nullopt};
  const std::uint64_t value = std::get<0>(products[*best]);
  const unsigned e = std::get<2>(products[*best]);
  const std::uint64_t b = std::get<3>(products[*best]);
  if (value == 0) return {false, Collision{e, b, 0, 0}};
  return {false, first_producer(set, lambda, value, e, b)};
}

}  // namespace

Verdict is_b1_set(const ResidueSet& set, unsigned lambda) {
  require_lambda(lambda);
  return set.modulus() <= kDenseLimit ? sweep_dense(set, lambda) : sweep_sorted(set, lambda);
}

std::string describe(const Collision& collision, std::uint64_t q) {
  const std::string lhs = std::to_string(collision.e1) + "*" + std::to_string(collision.b1);
  const std::string rhs = collision.is_zero_product()
                              ? std::string("0")
                              : std::to_string(collision.e2) + "*" + std::to_string(collision.b2);
  return lhs + " == " + rhs + " (mod " + std::to_string(q) + ")";
}

SyndromeTable::SyndromeTable(const ResidueSet& set, unsigned lambda)
    : q_(set.modulus()), lambda_(lambda) {
  const Verdict verdict = is_b1_set(set, lambda);
  if (!verdict.valid) {
    throw_error(ErrorCode::kInvalidArgument,
                "not a B1[" + std::to_string(lambda) + "](" + std::to_string(q_) +
                    ") set: " + describe(*verdict.witness, q_));
  }
  entries_.reserve(set.size() * lambda);
  std::size_t position = 0;
  for (std::uint64_t b : set) {
    for (unsigned e = 1; e <= lambda; ++e) {
      entries_.push_back({nt::mul_mod(e, b, q_), SyndromeEntry{e, b, position}});
    }
    ++position;
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
}

const SyndromeEntry* SyndromeTable::lookup(std::uint64_t syndrome) const noexcept {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), syndrome,
                                   [](const auto& entry, std::uint64_t s) { return entry.first < s; });
  if (it == entries_.end() || it->first != syndrome) return nullptr;
  return &it->second;
}

SyndromeTable build_syndrome_table(const ResidueSet& set, unsigned lambda) {
  return SyndromeTable(set, lambda);
}

}  // namespace magset
