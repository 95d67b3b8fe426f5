#ifndef MAGSET_RESIDUE_STRUCTURE_HPP_
#define MAGSET_RESIDUE_STRUCTURE_HPP_

#include <array>
#include <cstdint>
#include <vector>

namespace magset {

// The modulus q = 2^k * r (r odd) together with the error-magnitude bound.
struct Instance {
  std::uint64_t q = 1;
  unsigned k = 0;
  std::uint64_t r = 1;
  unsigned lambda = 4;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Splits q into its 2-power and odd part. Throws on q == 0 or lambda == 0.
Instance make_instance(std::uint64_t q, unsigned lambda = 4);

// Whether the explicit constructions apply, i.e. gcd(r, 6) = 1.
bool construction_eligible(const Instance& instance) noexcept;

// Throws kInvalidArgument with an explanation unless gcd(r, 6) = 1.
void require_construction_eligible(const Instance& instance);

// The divisor class V_d = {a * r/d mod q : a in Z_{2^k d}, gcd(a, d) = 1}
// split by 2-adic valuation: U[i] = {x in V_d : gcd(x, 2^k) = 2^i}.
struct VdDecomposition {
  Instance instance;
  std::uint64_t d = 1;
  std::vector<std::uint64_t> V;               // ascending
  std::vector<std::vector<std::uint64_t>> U;  // U[0..k], each ascending
};

// One class per divisor d of r, ascending in d. The classes partition Z_q.
std::vector<VdDecomposition> decompose(const Instance& instance);

// The class of a single divisor d of r.
VdDecomposition decompose_divisor(const Instance& instance, std::uint64_t d);

// Nonzero residues mod q (k >= 3) by 2-adic valuation: odd, 2*odd, 4*odd,
// and nonzero multiples of 8.
std::array<std::vector<std::uint64_t>, 4> n_partition_k3(const Instance& instance);

// Nonzero residues mod 4r by 2-adic valuation: odd, 2*odd, nonzero multiples
// of 4.
std::array<std::vector<std::uint64_t>, 3> n_partition_k2(const Instance& instance);

// Doubling map x -> 2x mod q (q even).
std::uint64_t theta2(std::uint64_t x, std::uint64_t q);

}  // namespace magset

#endif  // MAGSET_RESIDUE_STRUCTURE_HPP_
