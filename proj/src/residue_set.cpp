#include "magset/residue_set.hpp"

#include <algorithm>
#include <string>

#include "magset/errors.hpp"
#include "magset/number_theory.hpp"

namespace magset {

ResidueSet::ResidueSet(std::uint64_t q, std::vector<std::uint64_t> elements)
    : q_(q), elements_(std::move(elements)) {
  if (q_ == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const std::uint64_t x = elements_[i];
    if (x == 0 || x >= q_) {
      throw_error(ErrorCode::kInvalidArgument,
                  "element " + std::to_string(x) + " is outside [1, " + std::to_string(q_ - 1) +
                      "]");
    }
    if (i > 0 && elements_[i - 1] == x) {
      throw_error(ErrorCode::kInvalidArgument, "duplicate element " + std::to_string(x));
    }
  }
}

bool ResidueSet::contains(std::uint64_t x) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

ResidueSet ResidueSet::scaled(std::uint64_t factor) const {
  std::vector<std::uint64_t> image;
  image.reserve(elements_.size());
  for (std::uint64_t x : elements_) image.push_back(nt::mul_mod(x, factor, q_));
  return ResidueSet(q_, std::move(image));
}

ResidueSet ResidueSet::merged(const ResidueSet& other) const {
  if (other.q_ != q_) throw_error(ErrorCode::kInvalidArgument, "modulus mismatch in merge");
  std::vector<std::uint64_t> all(elements_);
  all.insert(all.end(), other.elements_.begin(), other.elements_.end());
  return ResidueSet(q_, std::move(all));
}

}  // namespace magset
