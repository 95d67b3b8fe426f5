#ifndef MAGSET_VERIFIER_HPP_
#define MAGSET_VERIFIER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magset/residue_set.hpp"

namespace magset {

// Why a set fails: e1*b1 == e2*b2 (mod q), or e1*b1 == 0 when e2 == 0.
struct Collision {
  unsigned e1 = 0;
  std::uint64_t b1 = 0;
  unsigned e2 = 0;
  std::uint64_t b2 = 0;

  bool is_zero_product() const noexcept { return e2 == 0; }
  friend bool operator==(const Collision&, const Collision&) = default;
};

struct Verdict {
  bool valid = true;
  std::optional<Collision> witness;
};

// Checks that the products e*b mod q (1 <= e <= lambda, b in B) are pairwise
// distinct and nonzero. Elements are swept in ascending order, magnitudes in
// increasing order; the witness names the earlier product first.
Verdict is_b1_set(const ResidueSet& set, unsigned lambda);

// "e1*b1 == e2*b2 (mod q)" or "e*b == 0 (mod q)".
std::string describe(const Collision& collision, std::uint64_t q);

struct SyndromeEntry {
  unsigned magnitude = 0;
  std::uint64_t element = 0;
  std::size_t position = 0;  // index of element in the ascending set
};

// Injective map syndrome -> (magnitude, element) for a valid set.
class SyndromeTable {
 public:
  SyndromeTable() = default;
  SyndromeTable(const ResidueSet& set, unsigned lambda);

  std::uint64_t modulus() const noexcept { return q_; }
  unsigned lambda() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // nullptr when the syndrome is not produced by any single error.
  const SyndromeEntry* lookup(std::uint64_t syndrome) const noexcept;

  // (syndrome, entry) pairs in ascending syndrome order.
  const std::vector<std::pair<std::uint64_t, SyndromeEntry>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::uint64_t q_ = 1;
  unsigned lambda_ = 0;
  std::vector<std::pair<std::uint64_t, SyndromeEntry>> entries_;
};

// Throws kInvalidArgument (with the collision) when the set is not valid.
SyndromeTable build_syndrome_table(const ResidueSet& set, unsigned lambda);

}  // namespace magset

#endif  // MAGSET_VERIFIER_HPP_
