#ifndef MAGSET_CODEC_HPP_
#define MAGSET_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "magset/residue_set.hpp"
#include "magset/verifier.hpp"

namespace magset {

using Word = std::vector<std::uint64_t>;

struct ErrorLocation {
  std::size_t position = 0;
  unsigned magnitude = 0;

  friend bool operator==(const ErrorLocation&, const ErrorLocation&) = default;
};

struct Decoded {
  Word word;
  std::optional<ErrorLocation> error;
};

// The code {x in Z_q^m : sum x_i b_i = 0 (mod q)} whose parity row is a valid
// set B (ascending), correcting one additive error of magnitude 1..lambda.
// Immutable after construction.
class LinearCode {
 public:
  // Throws kInvalidArgument if `set` is not valid for `lambda`.
  LinearCode(ResidueSet set, unsigned lambda);

  std::uint64_t modulus() const noexcept { return set_.modulus(); }
  unsigned lambda() const noexcept { return table_.lambda(); }
  std::size_t length() const noexcept { return set_.size(); }
  const ResidueSet& parity_row() const noexcept { return set_; }
  const SyndromeTable& syndromes() const noexcept { return table_; }

  // Position of the first element coprime to q, if any.
  std::optional<std::size_t> pivot() const noexcept { return pivot_; }

  std::uint64_t syndrome(const Word& word) const;
  bool is_codeword(const Word& word) const;

  // Places the m - 1 message symbols in the non-pivot positions and solves
  // for the pivot symbol. Throws kNoUnitPivot when no element is a unit.
  Word encode(const Word& message) const;

  // Throws kUnknownSyndrome when the syndrome matches no single error.
  Decoded decode(const Word& received) const;

 private:
  void check_length(const Word& word, std::size_t expected) const;

  ResidueSet set_;
  SyndromeTable table_;
  std::optional<std::size_t> pivot_;
  std::uint64_t pivot_inverse_ = 0;
};

struct ChannelOptions {
  std::uint64_t trials = 1000;
  double error_rate = 1.0;
  std::uint64_t seed = 0;
  // Diagnostic mode: every corrupted word receives two errors at distinct
  // positions instead of one.
  bool double_errors = false;
};

struct ChannelStats {
  std::uint64_t trials = 0;
  std::uint64_t clean = 0;         // no error injected, decoded unchanged
  std::uint64_t corrected = 0;     // error injected and removed exactly
  std::uint64_t detected = 0;      // syndrome matched no single error
  std::uint64_t miscorrected = 0;  // decoded to a different word
  std::uint64_t injected = 0;      // trials that received an error
  std::uint64_t seed = 0;
};

// Trial i draws a uniform codeword and its error from a generator seeded by
// (seed, i), so results do not depend on evaluation order. Needs a unit
// pivot to draw codewords.
ChannelStats simulate_channel(const LinearCode& code, const ChannelOptions& options);

std::string format_word(const Word& word);
Word parse_word(const std::string& text);
std::string channel_stats_to_json(const ChannelStats& stats);

}  // namespace magset

#endif  // MAGSET_CODEC_HPP_
