#include "oasm/baselines.hpp"

#include <algorithm>

#include "oasm/errors.hpp"

namespace oasm::baselines {

std::vector<NaiveHit> fully_naive(const Pattern& p, std::span<const Symbol> t) {
  return fully_naive(p, t, NaiveOptions{}).hits;
}

FullyNaiveResult fully_naive(const Pattern& p, std::span<const Symbol> t,
                             const NaiveOptions& opts) {
  const int K = p.threshold();
  const int lp = p.length();
  const auto n = static_cast<StreamIndex>(t.size());
  FullyNaiveResult result;
  for (StreamIndex i = 0; i < n; ++i) {
    const auto remaining = static_cast<int>(
        std::min<StreamIndex>(n - i, static_cast<StreamIndex>(1) << 30));
    int lmin = 1, lmax = remaining;
    if (opts.prune) {
      lmin = std::max(1, lp - K);
      lmax = std::min(remaining, lp + K);
    }
    for (int l = lmin; l <= lmax; ++l) {
      const auto sub = t.subspan(static_cast<std::size_t>(i), static_cast<std::size_t>(l));
      const int d = levdist::wagner_fischer(p, sub);
      if (d > K) continue;
      result.hits.push_back(NaiveHit{i, l, d});
      if (opts.keep_matrices)
        result.matrices.push_back(levdist::full_matrix(p.symbols(), sub));
    }
  }
  return result;
}

std::vector<EndPositionHit> less_naive(const Pattern& p, std::span<const Symbol> t) {
  const int K = p.threshold();
  const int lp = p.length();
  const auto& pat = p.symbols();
  for (Symbol c : t) {
    if (!p.alphabet().contains_code(c))
      throw input_error("stream symbol code " + std::to_string(c) + " not in alphabet");
  }
  const std::size_t n = t.size();
  // dummy top row all zeros: the bottom row then holds, per column, the
  // minimum distance over substrings ending there
  std::vector<int> prev(n + 1, 0), cur(n + 1);
  for (int r = 1; r <= lp; ++r) {
    cur[0] = r;
    for (std::size_t m = 1; m <= n; ++m) {
      const int sub = prev[m - 1] + (pat[r - 1] != t[m - 1]);
      cur[m] = std::min({prev[m] + 1, cur[m - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  std::vector<EndPositionHit> hits;
  for (std::size_t m = 1; m <= n; ++m) {
    if (prev[m] <= K) hits.push_back(EndPositionHit{static_cast<StreamIndex>(m - 1), prev[m]});
  }
  return hits;
}

std::vector<Occurrence> offline_reference(const Pattern& p, std::span<const Symbol> t,
                                          std::string pattern_id) {
  const int K = p.threshold();
  const int lp = p.length();
  const auto n = static_cast<StreamIndex>(t.size());

  struct Row {
    StreamIndex pos = 0;
    int len = 0;
    int counter = 0;
    StreamIndex created = 0;
    bool tracked = false;
  };
  std::vector<Row> mem(static_cast<std::size_t>(K) + 1);
  int idx = K;
  bool tracking = false;
  std::vector<Occurrence> emitted;

  auto flush = [&]() {
    int last_len = mem[idx].len;
    emitted.push_back(Occurrence{mem[idx].pos, mem[idx].len, idx, pattern_id});
    for (int k = idx + 1; k <= K; ++k) {
      if (!mem[k].tracked) continue;
      if (mem[k].counter - last_len > mem[k].len) {
        emitted.push_back(Occurrence{mem[k].pos, mem[k].len, k, pattern_id});
        last_len = mem[k].len;
      }
    }
    for (Row& r : mem) r = Row{};
    idx = K;
    tracking = false;
  };

  for (StreamIndex i = 0; i < n; ++i) {
    const int avail = static_cast<int>(std::min<StreamIndex>(
        n - i, static_cast<StreamIndex>(lp + K)));
    for (int l = std::max(1, lp - K); l <= avail; ++l) {
      const int k = levdist::wagner_fischer(
          p, t.subspan(static_cast<std::size_t>(i), static_cast<std::size_t>(l)));
      if (k > K) continue;
      const bool better = tracking && k < idx;
      const bool rival = tracking && k >= idx && mem[k].tracked;
      if (!tracking || better) {
        mem[k] = Row{i, l, 1, i, true};
        idx = k;
        tracking = true;
      } else if (rival) {
        const StreamIndex cand_end = i + static_cast<StreamIndex>(l) - 1;
        const StreamIndex inc_end =
            mem[k].pos + static_cast<StreamIndex>(mem[k].len) - 1;
        if (cand_end < inc_end || (cand_end == inc_end && l < mem[k].len))
          mem[k] = Row{i, l, 1, i, true};
      }
    }
    if (!tracking) continue;
    for (Row& r : mem) {
      if (r.tracked && r.created < i) ++r.counter;
    }
    if (mem[idx].counter == mem[idx].len) flush();
  }
  if (tracking) flush();
  return emitted;
}

}  // namespace oasm::baselines
