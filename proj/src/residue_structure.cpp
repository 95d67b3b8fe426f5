#include "magset/residue_structure.hpp"

#include <algorithm>
#include <string>

#include "magset/errors.hpp"
#include "magset/number_theory.hpp"

namespace magset {

Instance make_instance(std::uint64_t q, unsigned lambda) {
  if (q == 0) throw_error(ErrorCode::kInvalidArgument, "modulus must be positive");
  if (lambda == 0) throw_error(ErrorCode::kInvalidArgument, "lambda must be at least 1");
  Instance instance;
  instance.q = q;
  instance.k = nt::two_adic_valuation(q);
  instance.r = q >> instance.k;
  instance.lambda = lambda;
  return instance;
}

bool construction_eligible(const Instance& instance) noexcept {
  return instance.r % 2 == 1 && instance.r % 3 != 0;
}

void require_construction_eligible(const Instance& instance) {
  if (!construction_eligible(instance)) {
    throw_error(ErrorCode::kInvalidArgument,
                "q = " + std::to_string(instance.q) + " = 2^" + std::to_string(instance.k) +
                    " * " + std::to_string(instance.r) +
                    ": constructions need the odd part r to be coprime to 3");
  }
}

VdDecomposition decompose_divisor(const Instance& instance, std::uint64_t d) {
  if (d == 0 || instance.r % d != 0) {
    throw_error(ErrorCode::kInvalidArgument,
                std::to_string(d) + " does not divide r = " + std::to_string(instance.r));
  }
  VdDecomposition part;
  part.instance = instance;
  part.d = d;
  part.U.resize(instance.k + 1);
  const std::uint64_t scale = instance.r / d;
  const std::uint64_t span = instance.q / scale;  // 2^k * d
  const std::uint64_t two_k = std::uint64_t{1} << instance.k;
  for (std::uint64_t a = 0; a < span; ++a) {
    if (nt::gcd(a, d) != 1) continue;
    const std::uint64_t x = a * scale;  // < q, no reduction needed
    part.V.push_back(x);
    const std::uint64_t g = nt::gcd(x, two_k);
    part.U[nt::two_adic_valuation(g)].push_back(x);
  }
  return part;
}

std::vector<VdDecomposition> decompose(const Instance& instance) {
  std::vector<VdDecomposition> parts;
  for (std::uint64_t d : nt::divisors(instance.r)) parts.push_back(decompose_divisor(instance, d));
  return parts;
}

std::array<std::vector<std::uint64_t>, 4> n_partition_k3(const Instance& instance) {
  if (instance.k < 3) {
    throw_error(ErrorCode::kInvalidArgument, "partition into four classes needs k >= 3");
  }
  std::array<std::vector<std::uint64_t>, 4> classes;
  for (std::uint64_t x = 1; x < instance.q; ++x) {
    classes[std::min(nt::two_adic_valuation(x), 3u)].push_back(x);
  }
  return classes;
}

std::array<std::vector<std::uint64_t>, 3> n_partition_k2(const Instance& instance) {
  if (instance.k != 2) {
    throw_error(ErrorCode::kInvalidArgument, "partition into three classes needs k = 2");
  }
  std::array<std::vector<std::uint64_t>, 3> classes;
  for (std::uint64_t x = 1; x < instance.q; ++x) {
    classes[std::min(nt::two_adic_valuation(x), 2u)].push_back(x);
  }
  return classes;
}

std::uint64_t theta2(std::uint64_t x, std::uint64_t q) {
  if (q == 0 || q % 2 != 0) throw_error(ErrorCode::kInvalidArgument, "doubling map needs even q");
  return nt::mul_mod(x % q, 2, q);
}

}  // namespace magset
