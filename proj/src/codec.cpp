#include "magset/codec.hpp"

#include <charconv>
#include <random>
#include <string>
#include <utility>

#include "json.hpp"
#include "magset/errors.hpp"
#include "magset/number_theory.hpp"

namespace magset {

LinearCode::LinearCode(ResidueSet set, unsigned lambda)
    : set_(std::move(set)), table_(build_syndrome_table(set_, lambda)) {
  const std::uint64_t q = set_.modulus();
  for (std::size_t i = 0; i < set_.size(); ++i) {
    if (auto inverse = nt::inverse_mod(set_.elements()[i], q)) {
      pivot_ = i;
      pivot_inverse_ = *inverse;
      break;
    }
  }
}

void LinearCode::check_length(const Word& word, std::size_t expected) const {
  if (word.size() != expected) {
    throw_error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(expected) + " symbols, got " + std::to_string(word.size()));
  }
}

std::uint64_t LinearCode::syndrome(const Word& word) const {
  check_length(word, length());
  const std::uint64_t q = modulus();
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    s = (s + nt::mul_mod(word[i] % q, set_.elements()[i], q)) % q;
  }
  return s;
}

bool LinearCode::is_codeword(const Word& word) const { return syndrome(word) == 0; }

Word LinearCode::encode(const Word& message) const {
  if (!pivot_) {
    throw_error(ErrorCode::kNoUnitPivot, "no element of the parity row is a unit mod " + std::to_string(modulus()));
  }
  check_length(message, length() - 1);
  const std::uint64_t q = modulus();
  Word word(length(), 0);
  std::uint64_t partial = 0;
  for (std::size_t i = 0, j = 0; i < length(); ++i) {
    if (i == *pivot_) continue;
    word[i] = message[j++] % q;
    partial = (partial + nt::mul_mod(word[i], set_.elements()[i], q)) % q;
  }
  word[*pivot_] = nt::mul_mod((q - partial) % q, pivot_inverse_, q);
  return word;
}

Decoded LinearCode::decode(const Word& received) const {
  const std::uint64_t s = syndrome(received);
  const std::uint64_t q = modulus();
  Decoded out;
  out.word = received;
  for (auto& symbol : out.word) symbol %= q;
  if (s == 0) return out;
  const SyndromeEntry* entry = table_.lookup(s);
  if (entry == nullptr) {
    throw_error(ErrorCode::kUnknownSyndrome, "syndrome " + std::to_string(s) + " matches no single error");
  }
  out.word[entry->position] = (out.word[entry->position] + q - entry->magnitude % q) % q;
  out.error = ErrorLocation{entry->position, entry->magnitude};
  return out;
}

ChannelStats simulate_channel(const LinearCode& code, const ChannelOptions& options) {
  if (!(options.error_rate >= 0.0 && options.error_rate <= 1.0)) {
    throw_error(ErrorCode::kInvalidArgument, "error rate must lie in [0, 1]");
  }
  if (options.double_errors && code.length() < 2) {
    throw_error(ErrorCode::kInvalidArgument, "double errors need a code of length >= 2");
  }
  if (!code.pivot()) throw_error(ErrorCode::kNoUnitPivot, "cannot draw codewords without a unit pivot");
  const std::uint64_t q = code.modulus();
  ChannelStats stats;
  stats.seed = options.seed;
  for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::uint64_t> symbol(0, q - 1);
    std::uniform_int_distribution<std::size_t> position(0, code.length() - 1);
    std::uniform_int_distribution<unsigned> magnitude(1, code.lambda());
    std::bernoulli_distribution corrupt(options.error_rate);

    Word message(code.length() - 1);
    for (auto& x : message) x = symbol(rng);
    const Word sent = code.encode(message);
    Word received = sent;
    const bool inject = corrupt(rng);
    if (inject) {
      const std::size_t first = position(rng);
      received[first] = (received[first] + magnitude(rng)) % q;
      if (options.double_errors) {
        std::size_t second = position(rng);
        while (second == first) second = position(rng);
        received[second] = (received[second] + magnitude(rng)) % q;
      }
    }
    ++stats.trials;
    stats.injected += inject ? 1 : 0;
    try {
      const Decoded decoded = code.decode(received);
      if (decoded.word != sent) {
        ++stats.miscorrected;
      } else if (inject) {
        ++stats.corrected;
      } else {
        ++stats.clean;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnknownSyndrome) throw;
      ++stats.detected;
    }
  }
  return stats;
}

std::string format_word(const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(word[i]);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word word;
  std::size_t pos = 0;
  if (text.find_first_not_of(" \t") == std::string::npos) return word;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::size_t lo = text.find_first_not_of(" \t", pos);
    std::size_t hi = text.find_last_not_of(" \t", end == 0 ? 0 : end - 1);
    if (lo == std::string::npos || lo >= end || hi < lo) {
      throw_error(ErrorCode::kInvalidArgument, "empty entry in list '" + text + "'");
    }
    std::uint64_t value = 0;
    const char* first = text.data() + lo;
    const char* last = text.data() + hi + 1;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw_error(ErrorCode::kInvalidArgument, "not a non-negative integer: '" + std::string(first, last) + "'");
    }
    word.push_back(value);
    pos = end + 1;
  }
  return word;
}

std::string channel_stats_to_json(const ChannelStats& stats) {
  return nlohmann::json{{"trials", stats.trials},       {"clean", stats.clean},
                        {"corrected", stats.corrected}, {"detected", stats.detected},
                        {"miscorrected", stats.miscorrected}, {"injected", stats.injected},
                        {"seed", stats.seed}}
      .dump();
}

}  // namespace magset
