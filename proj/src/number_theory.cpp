#include "magset/number_theory.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>
#include <utility>

#include "magset/errors.hpp"

namespace magset::nt {

namespace {

using u128 = unsigned __int128;

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  while (exp-- > 0) result *= base;
  return result;
}

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / gcd(a, b) * b; }

// Order of l modulo the prime p, by testing divisors of p - 1 in increasing
// order.
std::uint64_t order_mod_prime(std::uint64_t l, std::uint64_t p) {
  if (p == 2) return 1;
  for (std::uint64_t e : divisors(p - 1)) {
    if (pow_mod(l, e, p) == 1) return e;
  }
  throw_error(ErrorCode::kInternal, "no order found modulo prime " + std::to_string(p));
}

// Order of l modulo p^k, lifted from the order modulo p: with
// l^ord_p(l) - 1 = p^mu * a and p not dividing a, the order is ord_p(l) while
// k <= mu and p^(k - mu) * ord_p(l) beyond. For p = 2 the lift starts from
// l (l = 1 mod 4) or l^2 (l = 3 mod 4), since the multiplicative group mod
// 2^k is not cyclic.
std::uint64_t order_mod_prime_power(std::uint64_t l, std::uint64_t p, unsigned k) {
  const std::uint64_t pk = ipow(p, k);
  l %= pk;
  if (p == 2) {
    if (k == 1) return 1;
    if (l % 4 == 1) {
      if (l == 1) return 1;
      const unsigned mu = two_adic_valuation(l - 1);
      return std::uint64_t{1} << (k - mu);
    }
    const std::uint64_t sq = mul_mod(l, l, pk);
    if (sq == 1) return 2;
    const unsigned mu = two_adic_valuation(sq - 1);
    return std::uint64_t{1} << (k - mu + 1);
  }
  const std::uint64_t base = order_mod_prime(l % p, p);
  const std::uint64_t lifted = pow_mod(l, base, pk);
  if (lifted == 1) return base;
  unsigned mu = 0;
  for (std::uint64_t x = lifted - 1; x % p == 0; x /= p) ++mu;
  return base * ipow(p, k - mu);
}

}  // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept { return std::gcd(a, b); }

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) noexcept {
  if (m == 0) return std::nullopt;
  // Extended Euclid on signed 128-bit values.
  __int128 old_r = static_cast<__int128>(a % m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    old_r -= quotient * r;
    std::swap(old_r, r);
    old_s -= quotient * s;
    std::swap(old_s, s);
  }
  if (old_r != 1 && m != 1) return std::nullopt;
  if (m == 1) return 0;
  __int128 x = old_s % static_cast<__int128>(m);
  if (x < 0) x += m;
  return static_cast<std::uint64_t>(x);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce(std::int64_t l, std::uint64_t d) noexcept {
  if (l >= 0) return static_cast<std::uint64_t>(l) % d;
  const std::uint64_t magnitude = static_cast<std::uint64_t>(-(l + 1)) + 1;
  const std::uint64_t r = magnitude % d;
  return r == 0 ? 0 : d - r;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw_error(ErrorCode::kInvalidArgument, "cannot factorize 0");
  Factorization f;
  f.value = n;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const PrimePower& pp : factorize(n).factors) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> result{1};
  for (const PrimePower& pp : factorize(n).factors) {
    const std::size_t count = result.size();
    std::uint64_t power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < count; ++i) result.push_back(result[i] * power);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

unsigned two_adic_valuation(std::uint64_t n) {
  if (n == 0) throw_error(ErrorCode::kInvalidArgument, "2-adic valuation of 0");
  return static_cast<unsigned>(__builtin_ctzll(n));
}

std::uint64_t mult_order_naive(std::int64_t l, std::uint64_t d) {
  if (d == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  const std::uint64_t base = reduce(l, d);
  if (gcd(base, d) != 1) {
    throw_error(ErrorCode::kInvalidArgument,
                "gcd(" + std::to_string(l) + ", " + std::to_string(d) + ") != 1");
  }
  if (d == 1) return 1;
  std::uint64_t x = base;
  std::uint64_t n = 1;
  while (x != 1) {
    x = mul_mod(x, base, d);
    ++n;
  }
  return n;
}

std::uint64_t mult_order(std::int64_t l, std::uint64_t d) {
  if (d == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  const std::uint64_t base = reduce(l, d);
  if (gcd(base, d) != 1) {
    throw_error(ErrorCode::kInvalidArgument,
                "gcd(" + std::to_string(l) + ", " + std::to_string(d) + ") != 1");
  }
  std::uint64_t order = 1;
  for (const PrimePower& pp : factorize(d).factors) {
    order = lcm(order, order_mod_prime_power(base, pp.prime, pp.exponent));
  }
  assert(d > 1'000'000 || order == mult_order_naive(l, d));
  return order;
}

std::vector<std::uint64_t> cyclotomic_set(std::int64_t l, std::uint64_t beta, std::uint64_t q) {
  if (q == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  beta %= q;
  const std::uint64_t annihilator = q / gcd(beta, q);
  const std::uint64_t step = reduce(l, q);
  if (gcd(reduce(l, annihilator), annihilator) != 1) {
    throw_error(ErrorCode::kInvalidArgument, "multiplier " + std::to_string(l) +
                                                 " is not a unit modulo " +
                                                 std::to_string(annihilator));
  }
  std::vector<std::uint64_t> orbit{beta};
  for (std::uint64_t x = mul_mod(beta, step, q); x != beta; x = mul_mod(x, step, q)) {
    orbit.push_back(x);
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::uint64_t> generated_subgroup(std::span<const std::uint64_t> generators,
                                              std::uint64_t modulus) {
  if (modulus == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  for (std::uint64_t g : generators) {
    if (gcd(g % modulus, modulus) != 1) {
      throw_error(ErrorCode::kInvalidArgument, "generator " + std::to_string(g) +
                                                   " is not a unit modulo " +
                                                   std::to_string(modulus));
    }
  }
  std::vector<char> member(modulus, 0);
  std::vector<std::uint64_t> elements{1 % modulus};
  member[1 % modulus] = 1;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::uint64_t g : generators) {
      const std::uint64_t y = mul_mod(elements[i], g, modulus);
      if (!member[y]) {
        member[y] = 1;
        elements.push_back(y);
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

CosetSystem coset_reps(std::span<const std::uint64_t> generators, std::uint64_t modulus) {
  const std::vector<std::uint64_t> subgroup = generated_subgroup(generators, modulus);
  CosetSystem system;
  system.modulus = modulus;
  system.generators.assign(generators.begin(), generators.end());
  system.subgroup_order = subgroup.size();
  if (modulus == 1) {
    system.representatives = {0};
    return system;
  }
  std::vector<char> covered(modulus, 0);
  for (std::uint64_t u = 1; u < modulus; ++u) {
    if (covered[u] || gcd(u, modulus) != 1) continue;
    system.representatives.push_back(u);
    for (std::uint64_t h : subgroup) covered[mul_mod(u, h, modulus)] = 1;
  }
  return system;
}

std::vector<std::uint64_t> power_transversal(std::uint64_t g,
                                             std::span<const std::uint64_t> subgroup_generators,
                                             std::uint64_t modulus) {
  const std::vector<std::uint64_t> subgroup = generated_subgroup(subgroup_generators, modulus);
  if (gcd(g % modulus, modulus) != 1) {
    throw_error(ErrorCode::kInvalidArgument,
                "element " + std::to_string(g) + " is not a unit modulo " + std::to_string(modulus));
  }
  std::vector<std::uint64_t> powers{1 % modulus};
  for (std::uint64_t x = g % modulus;
       !std::binary_search(subgroup.begin(), subgroup.end(), x); x = mul_mod(x, g, modulus)) {
    powers.push_back(x);
  }
  return powers;
}

std::optional<std::uint64_t> dlog3(std::uint64_t target, std::uint64_t d) {
  if (d == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  if (gcd(3, d) != 1 || gcd(target % d, d) != 1) {
    throw_error(ErrorCode::kInvalidArgument, "dlog3 needs target and 3 coprime to the modulus");
  }
  target %= d;
  const std::uint64_t n = mult_order(3, d);
  std::uint64_t x = 3 % d;
  for (std::uint64_t s = 1; s <= n; ++s) {
    if (x == target) return s;
    x = mul_mod(x, 3, d);
  }
  return std::nullopt;
}

}  // namespace magset::nt
