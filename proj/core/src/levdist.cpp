#include "oasm/levdist.hpp"

#include <algorithm>

#include "oasm/errors.hpp"

namespace oasm::levdist {

namespace {

void check_codes(const Pattern& p, std::span<const Symbol> s) {
  for (Symbol c : s) {
    if (!p.alphabet().contains_code(c))
      throw input_error("stream symbol code " + std::to_string(c) +
                        " not in alphabet");
  }
}

}  // namespace

int wagner_fischer(std::span<const Symbol> a, std::span<const Symbol> b) {
  const std::size_t la = a.size(), lb = b.size();
  std::vector<int> prev(lb + 1), cur(lb + 1);
  for (std::size_t m = 0; m <= lb; ++m) prev[m] = static_cast<int>(m);
  for (std::size_t n = 1; n <= la; ++n) {
    cur[0] = static_cast<int>(n);
    for (std::size_t m = 1; m <= lb; ++m) {
      const int sub = prev[m - 1] + (a[n - 1] != b[m - 1]);
      cur[m] = std::min({prev[m] + 1, cur[m - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[lb];
}

int wagner_fischer(const Pattern& p, std::span<const Symbol> s) {
  check_codes(p, s);
  return wagner_fischer(std::span<const Symbol>(p.symbols()), s);
}

void window_distances_into(const Pattern& p, std::span<const Symbol> window,
                           StreamIndex start, DpWorkspace& ws, WindowDistances& out) {
  const int lp = p.length();
  const int K = p.threshold();
  const int len = static_cast<int>(window.size());

  out.start = start;
  out.first_length = lp - K;
  out.values.assign(static_cast<std::size_t>(2 * K + 1), std::nullopt);

  const auto& pat = p.symbols();
  ws.prev.resize(static_cast<std::size_t>(len) + 1);
  ws.cur.resize(static_cast<std::size_t>(len) + 1);
  for (int m = 0; m <= len; ++m) ws.prev[static_cast<std::size_t>(m)] = m;
  for (int n = 1; n <= lp; ++n) {
    ws.cur[0] = n;
    for (int m = 1; m <= len; ++m) {
      const int sub = ws.prev[m - 1] + (pat[n - 1] != window[m - 1]);
      ws.cur[m] = std::min({ws.prev[m] + 1, ws.cur[m - 1] + 1, sub});
    }
    std::swap(ws.prev, ws.cur);
  }
  for (int l = lp - K; l <= std::min(lp + K, len); ++l) {
    if (l < 1) continue;
    out.values[static_cast<std::size_t>(l - (lp - K))] = ws.prev[l];
  }
}

WindowDistances window_distances(const Pattern& p, std::span<const Symbol> window,
                                 StreamIndex start) {
  if (window.empty()) throw input_error("window_distances requires a non-empty window");
  if (static_cast<int>(window.size()) > p.length() + p.threshold())
    throw input_error("window longer than l_p + K");
  check_codes(p, window);
  WindowDistances out;
  DpWorkspace ws;
  window_distances_into(p, window, start, ws, out);
  return out;
}

WavefrontResult wavefront_distances(const Pattern& p, std::span<const Symbol> window,
                                    StreamIndex start) {
  const int lp = p.length();
  const int K = p.threshold();
  if (static_cast<int>(window.size()) != lp + K) {
    // stream-end truncation: the wave-front needs the fixed mask
    return WavefrontResult{window_distances(p, window, start), 0};
  }
  check_codes(p, window);
  const int len = lp + K;
  const auto& pat = p.symbols();

  WindowDistances out;
  out.start = start;
  out.first_length = lp - K;
  out.values.assign(static_cast<std::size_t>(2 * K + 1), std::nullopt);

  // diag[n] = cell (n, d - n); the first two anti-diagonals hold boundary
  // cells only, so interior steps run d = 2 .. 2*lp + K.
  std::vector<int> prev2(static_cast<std::size_t>(lp) + 1);
  std::vector<int> prev(static_cast<std::size_t>(lp) + 1);
  std::vector<int> cur(static_cast<std::size_t>(lp) + 1);
  prev2[0] = 0;           // d = 0: (0,0)
  prev[0] = 1;            // d = 1: (0,1)
  if (lp >= 1) prev[1] = 1;  // d = 1: (1,0)

  int steps = 0;
  for (int d = 2; d <= 2 * lp + K; ++d) {
    ++steps;
    const int nlo = std::max(0, d - len);
    const int nhi = std::min(lp, d);
    for (int n = nlo; n <= nhi; ++n) {
      const int m = d - n;
      if (n == 0) {
        cur[n] = m;
      } else if (m == 0) {
        cur[n] = n;
      } else {
        const int sub = prev2[n - 1] + (pat[n - 1] != window[m - 1]);
        cur[n] = std::min({prev[n - 1] + 1, prev[n] + 1, sub});
      }
    }
    if (d >= 2 * lp - K) {
      const int m = d - lp;
      if (m >= lp - K && m <= lp + K && m >= 1)
        out.values[static_cast<std::size_t>(m - (lp - K))] = cur[lp];
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return WavefrontResult{std::move(out), steps};
}

LevMatrix full_matrix(std::span<const Symbol> a, std::span<const Symbol> b) {
  LevMatrix mat;
  mat.rows = a.size() + 1;
  mat.cols = b.size() + 1;
  mat.cells.resize(mat.rows * mat.cols);
  auto at = [&](std::size_t n, std::size_t m) -> int& {
    return mat.cells[n * mat.cols + m];
  };
  for (std::size_t m = 0; m < mat.cols; ++m) at(0, m) = static_cast<int>(m);
  for (std::size_t n = 1; n < mat.rows; ++n) {
    at(n, 0) = static_cast<int>(n);
    for (std::size_t m = 1; m < mat.cols; ++m) {
      const int sub = at(n - 1, m - 1) + (a[n - 1] != b[m - 1]);
      at(n, m) = std::min({at(n - 1, m) + 1, at(n, m - 1) + 1, sub});
    }
  }
  return mat;
}

}  // namespace oasm::levdist
