#ifndef OASM_BASELINES_HPP
#define OASM_BASELINES_HPP

#include <span>
#include <string>
#include <vector>

#include "oasm/levdist.hpp"
#include "oasm/types.hpp"

namespace oasm::baselines {

/// Hit of the brute-force scan: every (start, length) whose distance is
/// within the threshold.
struct NaiveHit {
  StreamIndex start = 0;
  int length = 0;
  int distance = 0;
  friend auto operator<=>(const NaiveHit&, const NaiveHit&) = default;
};

/// Hit of the zero-row scan: a position where some substring ending there is
/// within the threshold; distance is the minimum over those substrings.
struct EndPositionHit {
  StreamIndex end = 0;
  int distance = 0;
  friend auto operator<=>(const EndPositionHit&, const EndPositionHit&) = default;
};

struct NaiveOptions {
  /// Restrict the enumeration to lengths in [l_p-K, l_p+K]. Lengths outside
  /// that band can never satisfy the threshold, so the hit set is unchanged;
  /// the default is the literal all-lengths scan.
  bool prune = false;
  /// Retain the DP matrix of every hit (debugging aid; memory-hungry).
  bool keep_matrices = false;
};

struct FullyNaiveResult {
  std::vector<NaiveHit> hits;
  std::vector<levdist::LevMatrix> matrices;  // parallel to hits when requested
};

/// Enumerates all adjacent substrings, keeps those within the threshold.
/// Substrings are discarded as soon as their distance is known; only hits are
/// stored. Sorted by (start, length).
std::vector<NaiveHit> fully_naive(const Pattern& p, std::span<const Symbol> t);
FullyNaiveResult fully_naive(const Pattern& p, std::span<const Symbol> t,
                             const NaiveOptions& opts);

/// One DP over the whole text with a zeroed top row; every column whose
/// bottom cell is within the threshold is a hit ending there.
std::vector<EndPositionHit> less_naive(const Pattern& p, std::span<const Symbol> t);

/// Offline re-implementation of the streaming engine's semantics, written
/// independently and naively: one direct distance computation per candidate,
/// plain arrays, a position-by-position replay of the priority and validation
/// rules. Serves as the equivalence oracle for the engine.
std::vector<Occurrence> offline_reference(const Pattern& p, std::span<const Symbol> t,
                                          std::string pattern_id = "p0");

}  // namespace oasm::baselines

#endif
