#ifndef OASM_LEVDIST_HPP
#define OASM_LEVDIST_HPP

#include <optional>
#include <span>
#include <vector>

#include "oasm/types.hpp"

namespace oasm::levdist {

/// Edit distances between a pattern and all window prefixes whose length lies
/// in [l_p-K, l_p+K]. One DP matrix yields all 2K+1 values: the last-row cells
/// at the corresponding columns.
struct WindowDistances {
  StreamIndex start = 0;
  int first_length = 0;  // l_p - K
  /// values[j] = distance for length first_length + j; nullopt when the
  /// window ends before that length (stream-end truncation).
  std::vector<std::optional<int>> values;

  int length_at(std::size_t j) const { return first_length + static_cast<int>(j); }
};

/// Unit-cost edit distance (insertion, deletion, substitution). Either
/// sequence may be empty. Keeps only one DP row.
int wagner_fischer(std::span<const Symbol> a, std::span<const Symbol> b);

/// Alphabet-checked variant: every symbol of s must be a code of the
/// pattern's alphabet, otherwise input_error.
int wagner_fischer(const Pattern& p, std::span<const Symbol> s);

/// Row-wise evaluation over one window (length >= 1, at most l_p+K).
/// Throws input_error on an empty window or foreign symbol codes.
WindowDistances window_distances(const Pattern& p, std::span<const Symbol> window,
                                 StreamIndex start);

/// Reusable buffers for the allocation-free variant below.
struct DpWorkspace {
  std::vector<int> prev;
  std::vector<int> cur;
};

/// Same computation without validation or allocation; `out` is overwritten.
/// For callers that validated their symbols once on entry (the engine).
void window_distances_into(const Pattern& p, std::span<const Symbol> window,
                           StreamIndex start, DpWorkspace& ws, WindowDistances& out);

struct WavefrontResult {
  WindowDistances distances;
  /// Anti-diagonal steps executed: 2*l_p + K - 1 for a full window,
  /// 0 when a truncated window was routed to the row-wise path.
  int step_count = 0;
};

/// Anti-diagonal evaluation: step j computes every interior cell on one
/// anti-diagonal from the previous two. Requires the full l_p+K mask;
/// truncated windows are delegated to window_distances.
WavefrontResult wavefront_distances(const Pattern& p, std::span<const Symbol> window,
                                    StreamIndex start);

/// Fully materialized DP matrix; debugging and test aid.
struct LevMatrix {
  std::size_t rows = 0;  // l_p + 1
  std::size_t cols = 0;  // l + 1
  std::vector<int> cells;

  int at(std::size_t n, std::size_t m) const { return cells[n * cols + m]; }
};

LevMatrix full_matrix(std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace oasm::levdist

#endif
