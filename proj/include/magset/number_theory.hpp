#ifndef MAGSET_NUMBER_THEORY_HPP_
#define MAGSET_NUMBER_THEORY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

// Modular arithmetic on 64-bit moduli with 128-bit intermediate products.
namespace magset::nt {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing
};

// Trial division; factorize(1) has no factors. Throws on n == 0.
Factorization factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

// All positive divisors of n in ascending order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// a^-1 mod m, or nothing when gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) noexcept;

// l reduced into [0, d).
std::uint64_t reduce(std::int64_t l, std::uint64_t d) noexcept;

// Largest e with 2^e | n. Throws on n == 0.
unsigned two_adic_valuation(std::uint64_t n);

// Smallest n > 0 with l^n = 1 (mod d). Computed as the lcm over the prime
// powers of d, each lifted from the order modulo the prime; debug builds
// cross-check against mult_order_naive. Throws if gcd(l, d) != 1.
std::uint64_t mult_order(std::int64_t l, std::uint64_t d);

// Reference implementation: iterate powers of l until reaching 1.
std::uint64_t mult_order_naive(std::int64_t l, std::uint64_t d);

// Orbit {l^i * beta mod q : i >= 0}, ascending. Requires l to be a unit
// modulo q / gcd(beta, q).
std::vector<std::uint64_t> cyclotomic_set(std::int64_t l, std::uint64_t beta,
                                          std::uint64_t q);

// Subgroup of the unit group mod `modulus` generated by `generators`, ascending.
std::vector<std::uint64_t> generated_subgroup(std::span<const std::uint64_t> generators,
                                              std::uint64_t modulus);

struct CosetSystem {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> generators;
  std::uint64_t subgroup_order = 1;
  std::vector<std::uint64_t> representatives;  // ascending, 1 first
};

// Transversal of <generators> in the unit group: units are scanned in
// ascending order and each one not yet covered opens a new coset.
// Throws if a generator is not a unit.
CosetSystem coset_reps(std::span<const std::uint64_t> generators, std::uint64_t modulus);

// {1, g, g^2, ..., g^(t-1)} where t is the index of <subgroup_generators>
// inside <subgroup_generators, g>; e.g. g = 2 over <3> gives the powers-of-two
// transversal of <2,3>/<3>.
std::vector<std::uint64_t> power_transversal(std::uint64_t g,
                                             std::span<const std::uint64_t> subgroup_generators,
                                             std::uint64_t modulus);

// Smallest s >= 1 with 3^s = target (mod d) (s = ord_d(3) when target = 1),
// or nullopt when target is not a power of 3. Requires gcd(target, d) = 1
// and gcd(3, d) = 1.
std::optional<std::uint64_t> dlog3(std::uint64_t target, std::uint64_t d);

}  // namespace magset::nt

#endif  // MAGSET_NUMBER_THEORY_HPP_
