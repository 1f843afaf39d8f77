#ifndef OASM_TYPES_HPP
#define OASM_TYPES_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "oasm/alphabet.hpp"

namespace oasm {

using StreamIndex = std::uint64_t;

/// Query string bound to an alphabet, plus its inexactness threshold.
/// Immutable after construction; cheap to copy and safe to share across threads.
class Pattern {
public:
  /// Requires 0 <= threshold < length and all codes in the alphabet.
  Pattern(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> symbols,
          int threshold);

  static Pattern from_text(std::shared_ptr<const Alphabet> alphabet,
                           std::string_view text, int threshold);

  const Alphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const Alphabet>& alphabet_ptr() const { return alphabet_; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  int length() const { return static_cast<int>(symbols_.size()); }
  int threshold() const { return threshold_; }
  std::string text() const;

private:
  std::shared_ptr<const Alphabet> alphabet_;
  std::vector<Symbol> symbols_;
  int threshold_ = 0;
};

/// A substring hit: t[start, length] at edit distance `distance` from the pattern.
struct Candidate {
  StreamIndex start = 0;
  int length = 0;
  int distance = 0;

  StreamIndex end() const { return start + static_cast<StreamIndex>(length) - 1; }
  friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

/// A candidate that survived the priority rules and validation.
struct Occurrence {
  StreamIndex start = 0;
  int length = 0;
  int distance = 0;
  std::string pattern_id;

  StreamIndex end() const { return start + static_cast<StreamIndex>(length) - 1; }
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// Worst-case number of processed symbols before an occurrence of priority
/// k_min can be reported: l_p*(k_min+1) + k_min*(k_min-1)/2.
/// Sizes the engine's history buffer and stream-end diagnostics.
std::uint64_t worst_case_delay(int l_p, int k_min);

/// Upper bound on the tracking-store footprint, evaluated exactly:
/// l_p*(K+1) + K*(K-1)/2 * (2K+1). Documentation / audit value, not an
/// allocation size.
std::uint64_t mem_space_bound(int l_p, int K);

}  // namespace oasm

#endif
