#ifndef MAGSET_RESIDUE_SET_HPP_
#define MAGSET_RESIDUE_SET_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace magset {

// A set of distinct nonzero residues modulo q, stored in ascending order.
class ResidueSet {
 public:
  ResidueSet() = default;
  explicit ResidueSet(std::uint64_t q) : q_(q) {}

  // Sorts the elements; throws kInvalidArgument on duplicates, zero, or
  // elements outside [1, q-1].
  ResidueSet(std::uint64_t q, std::vector<std::uint64_t> elements);

  std::uint64_t modulus() const noexcept { return q_; }
  const std::vector<std::uint64_t>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(std::uint64_t x) const noexcept;

  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  // {factor * x mod q : x in this set}; throws if the image is not a valid set.
  ResidueSet scaled(std::uint64_t factor) const;

  // Disjoint union; throws kInvalidArgument on overlap or modulus mismatch.
  ResidueSet merged(const ResidueSet& other) const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  std::uint64_t q_ = 1;
  std::vector<std::uint64_t> elements_;
};

}  // namespace magset

#endif  // MAGSET_RESIDUE_SET_HPP_
