#ifndef MAGSET_CONSTRUCTIONS_HPP_
#define MAGSET_CONSTRUCTIONS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "magset/number_theory.hpp"
#include "magset/residue_set.hpp"
#include "magset/residue_structure.hpp"
#include "magset/search.hpp"

namespace magset {

// Parameters of one divisor d | r that select and drive the explicit
// construction of the largest set inside V_d for q = 2r. All arithmetic is
// done in Z_{2d}; results are scaled by q / (2d) into Z_q.
struct DivisorContext {
  std::uint64_t d = 1;
  std::uint64_t q = 2;
  std::uint64_t n = 1;    // ord_d(3)
  std::uint64_t phi = 1;  // phi(d)
  bool two_in_three = true;
  // If 2 is a power of 3 mod d: 2 = 3^s (mod d), s in [1, n]. Otherwise
  // b^t * 3^s = 1 (mod d), s in [0, n).
  std::uint64_t s = 0;
  std::uint64_t m = 0;        // min(s, n - s)
  std::uint64_t k_prime = 0;  // n = 2 * k_prime * m + r_prime, 0 <= r_prime < 2m
  std::uint64_t r_prime = 0;
  std::uint64_t t = 1;  // |<2,3>_d| / |<3>_d|
  std::uint64_t b = 0;  // odd residue mod 2d with b = 2 (mod d); 0 when unused
  nt::CosetSystem gamma;        // <3> in the units mod 2d
  nt::CosetSystem lambda_reps;  // <3, b> in the units mod 2d

  bool trivial() const noexcept { return d == 1; }
};

// Requires gcd(d, 6) = 1 and 2d | q.
DivisorContext divisor_context(std::uint64_t d, std::uint64_t q);

struct DivisorPiece {
  std::uint64_t d = 1;
  ResidueSet elements;     // residues mod q
  std::string case_label;  // case conditions, plus the variant that validated
  std::uint64_t bound = 0;  // size promised by the case formula
  bool exact = false;       // the formula is a proven maximum inside V_d
};

// The explicit set inside V_d for the context's q = 2r. Every candidate is
// checked for size and syndrome distinctness before it is accepted; when the
// formula as stated fails, a small list of corrected readings is tried and
// the one used is named in case_label. Throws kConstructionFailure when none
// validates.
DivisorPiece build_divisor_piece(const DivisorContext& context);

struct ConstructionReport {
  Instance instance;
  ResidueSet result;
  std::string method;
  std::vector<DivisorPiece> pieces;
  // For q = 2^k r with k >= 3: the set for 2^(k-3) r whose 8-fold image is
  // part of the result.
  std::shared_ptr<const ConstructionReport> base;
  std::uint64_t claimed_size = 0;
  std::uint64_t upper_bound = 0;
  bool verified = false;
  // true: certified maximum; empty: only a lower bound.
  std::optional<bool> tight;
  // (q + 3r - 7) / 7, reported when k = 2 (mod 3).
  std::optional<std::uint64_t> closed_form;
};

struct ConstructOptions {
  SearchBudget budget;
  SearchCache* cache = nullptr;  // used for odd moduli, which are searched
};

// q = 4r: a set of size r - 1, meeting the counting bound.
ConstructionReport build_four_r(std::uint64_t r);

// q = 2^k r, k >= 3: explicit sets on the residues of 2-adic valuation <= 2,
// plus 8 times the construction for 2^(k-3) r.
ConstructionReport build_lifted(unsigned k, std::uint64_t r, const ConstructOptions& options = {});

// q = 2r: union of build_divisor_piece over all d | r.
ConstructionReport build_two_r(std::uint64_t r);

// Dispatch on k: 0 -> exhaustive search, 1 -> build_two_r, 2 -> build_four_r,
// >= 3 -> build_lifted. Requires lambda = 4 and gcd(r, 6) = 1.
ConstructionReport construct(const Instance& instance, const ConstructOptions& options = {});

// floor((q - 1) / lambda).
std::uint64_t hamming_upper_bound(std::uint64_t q, unsigned lambda);

// (q + 3r - 7) / 7 for k = 2 (mod 3), the size the recursion reaches from
// the q = 4r base.
std::optional<std::uint64_t> closed_form_size(const Instance& instance);

std::string report_to_json(const ConstructionReport& report);

}  // namespace magset

#endif  // MAGSET_CONSTRUCTIONS_HPP_
