#include "oasm/systolic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "oasm/errors.hpp"
#include "oasm/levdist.hpp"
#include "oasm/occurrence_filter.hpp"

namespace oasm::systolic {

int l_comb(int j, int cnt, const ProcessingElement& pe, const ProcessingElement* prev) {
  // element j at counter cnt computes cell (j+1, m) with m = cnt - j;
  // boundary neighbours are reconstructed from cnt instead of being stored
  const int m = cnt - j;
  if (m < 1) throw internal_error("l_comb invoked on an inactive element");
  if (j > 0 && prev == nullptr)
    throw internal_error("l_comb needs the previous element for j > 0");

  const int c_left = (m == 1) ? j + 1 : pe.a_reg;
  const int c_upper = (j == 0) ? cnt : prev->a_reg;
  int c_upper_left;
  if (j == 0)
    c_upper_left = cnt - 1;
  else if (m == 1)
    c_upper_left = j;
  else
    c_upper_left = prev->a_reg_d;

  const int best = std::min({c_left, c_upper, c_upper_left});
  const int phi = (c_upper_left > best) ? 1 : (pe.p_reg != pe.sh_reg ? 1 : 0);
  return best + phi;
}

namespace {

class Core {
public:
  Core(const Pattern& p, const CoreConfig& cfg)
      : lp_(p.length()),
        k_(p.threshold()),
        window_len_(lp_ + k_),
        steps_per_window_(2 * lp_ + k_ - 1),
        pad_pattern_(p.alphabet().pad_pattern()),
        pad_stream_(p.alphabet().pad_stream()),
        pe_(static_cast<std::size_t>(cfg.l_p_max)) {
    for (std::size_t j = 0; j < pe_.size(); ++j) {
      pe_[j].p_reg = j < p.symbols().size() ? p.symbols()[j] : pad_pattern_;
      pe_[j].sh_reg = pad_stream_;
    }
  }

  /// Runs one window; returns the emitted last-row cells, one per length in
  /// [l_p-K, l_p+K], and optionally records the cycle trace.
  std::vector<int> run_window(std::span<const Symbol> window, CycleTrace* trace) {
    std::vector<int> outputs;
    outputs.reserve(static_cast<std::size_t>(2 * k_ + 1));
    std::vector<int> next(pe_.size(), 0);
    for (int cnt = 1; cnt <= steps_per_window_; ++cnt) {
      // the window symbols shift one element per cycle, pad behind them
      for (std::size_t j = 0; j < pe_.size(); ++j) {
        const int src = cnt - 1 - static_cast<int>(j);
        pe_[j].sh_reg = (src >= 0 && src < static_cast<int>(window.size()))
                            ? window[static_cast<std::size_t>(src)]
                            : pad_stream_;
      }
      for (std::size_t j = 0; j < pe_.size(); ++j) {
        const int m = cnt - static_cast<int>(j);
        next[j] = (m >= 1) ? l_comb(static_cast<int>(j), cnt, pe_[j],
                                    j > 0 ? &pe_[j - 1] : nullptr)
                           : pe_[j].a_reg;
      }
      for (std::size_t j = 0; j < pe_.size(); ++j) {
        pe_[j].a_reg_d = pe_[j].a_reg;
        pe_[j].a_reg = next[j];
      }
      std::optional<int> emitted;
      const int m_out = cnt - (lp_ - 1);
      if (m_out >= lp_ - k_ && m_out <= lp_ + k_)
        emitted = pe_[static_cast<std::size_t>(lp_ - 1)].a_reg;
      if (emitted) outputs.push_back(*emitted);
      if (trace) trace->cycles.push_back(CycleTrace::Cycle{cnt, pe_, emitted});
    }
    return outputs;
  }

  int steps_per_window() const { return steps_per_window_; }
  int window_len() const { return window_len_; }

private:
  int lp_;
  int k_;
  int window_len_;
  int steps_per_window_;
  Symbol pad_pattern_;
  Symbol pad_stream_;
  std::vector<ProcessingElement> pe_;
};

}  // namespace

SimResult simulate_core(const Pattern& p, std::span<const Symbol> t,
                        const CoreConfig& cfg, std::size_t trace_windows,
                        std::string pattern_id) {
  if (p.length() > cfg.l_p_max)
    throw input_error("pattern length exceeds configured l_p_max");
  if (p.threshold() > cfg.k_max)
    throw input_error("threshold exceeds configured k_max");
  if (p.alphabet().code_width_bits() > cfg.l_symb)
    throw input_error("alphabet code width exceeds configured l_symb");
  const Symbol code_limit =
      static_cast<Symbol>((std::uint64_t{1} << cfg.l_symb) - 2);
  if (p.alphabet().size() > code_limit)
    throw input_error("alphabet leaves no room for the pad codes at l_symb=" +
                      std::to_string(cfg.l_symb));
  for (Symbol c : p.symbols()) {
    if (c >= code_limit) throw input_error("pattern uses a reserved pad code");
  }
  for (Symbol c : t) {
    if (c >= code_limit) throw input_error("stream uses a reserved pad code");
    if (!p.alphabet().contains_code(c))
      throw input_error("stream symbol code " + std::to_string(c) + " not in alphabet");
  }

  const int lp = p.length();
  const int K = p.threshold();
  Core core(p, cfg);
  OccurrenceFilter filter(lp, K, pattern_id);

  SimResult result;
  bool last_step_flushed = false;
  const auto n = static_cast<StreamIndex>(t.size());
  for (StreamIndex i = 0; i < n; ++i) {
    const auto avail = static_cast<int>(
        std::min<StreamIndex>(n - i, static_cast<StreamIndex>(core.window_len())));
    const auto window = t.subspan(static_cast<std::size_t>(i),
                                  static_cast<std::size_t>(avail));
    CycleTrace* trace = nullptr;
    if (result.trace.size() < trace_windows) {
      result.trace.push_back(CycleTrace{i, {}});
      trace = &result.trace.back();
    }
    const std::vector<int> raw = core.run_window(window, trace);

    levdist::WindowDistances d;
    d.start = i;
    d.first_length = lp - K;
    d.values.assign(static_cast<std::size_t>(2 * K + 1), std::nullopt);
    for (std::size_t j = 0; j < raw.size(); ++j) {
      const int l = d.first_length + static_cast<int>(j);
      if (l >= 1 && l <= avail) d.values[j] = raw[j];  // mask lengths past stream end
    }
    const std::size_t before = result.occurrences.size();
    filter.step(i, d, result.occurrences);
    last_step_flushed = result.occurrences.size() > before;
    result.total_cycles += static_cast<std::uint64_t>(core.steps_per_window());
    ++result.steps;
  }
  {
    const std::size_t before = result.occurrences.size();
    filter.force_flush(n == 0 ? 0 : n - 1, result.occurrences);
    if (result.occurrences.size() > before) last_step_flushed = true;
  }
  // trailing search latency: the last window's validation drains after the
  // final step_calc; everything earlier is hidden by the pipeline
  if (result.steps > 0)
    result.total_cycles += static_cast<std::uint64_t>(
        last_step_flushed ? 2 * K + 1 : K + 1);
  return result;
}

Duration step_search_duration(int l_p, int K, Duration t_clk) {
  if (l_p < 1 || K < 0 || K >= l_p)
    throw input_error("step_search_duration requires 0 <= K < l_p");
  return t_clk * (2 * l_p + K - 1);
}

Duration exec_time_model(int l_p, int K, std::uint64_t l_t, Duration t_clk) {
  return step_search_duration(l_p, K, t_clk) * static_cast<double>(l_t);
}

std::span<const LeTableRow> le_table() {
  static const LeTableRow rows[] = {
      {4, 8, 1, 557},    {4, 8, 2, 732},    {4, 8, 3, 822},    {4, 8, 4, 880},
      {4, 16, 1, 1122},  {4, 16, 2, 1286},  {4, 16, 3, 1391},  {4, 16, 4, 1472},
      {4, 24, 1, 1687},  {4, 24, 2, 1840},  {4, 24, 3, 1960},  {4, 24, 4, 2064},
      {4, 32, 1, 2252},  {4, 32, 2, 2394},  {4, 32, 3, 2529},  {4, 32, 4, 2656},
      {8, 8, 1, 626},    {8, 8, 2, 799},    {8, 8, 3, 895},    {8, 8, 4, 953},
      {8, 16, 1, 1266},  {8, 16, 2, 1443},  {8, 16, 3, 1536},  {8, 16, 4, 1610},
      {8, 24, 1, 1936},  {8, 24, 2, 2025},  {8, 24, 3, 2151},  {8, 24, 4, 2217},
      {8, 32, 1, 2530},  {8, 32, 2, 2869},  {8, 32, 3, 3002},  {8, 32, 4, 3068},
      {12, 8, 1, 701},   {12, 8, 2, 867},   {12, 8, 3, 962},   {12, 8, 4, 1019},
      {12, 16, 1, 1403}, {12, 16, 2, 1579}, {12, 16, 3, 1670}, {12, 16, 4, 1738},
      {12, 24, 1, 2165}, {12, 24, 2, 2233}, {12, 24, 3, 2352}, {12, 24, 4, 2402},
      {12, 32, 1, 2790}, {12, 32, 2, 3163}, {12, 32, 3, 3269}, {12, 32, 4, 3359},
      {16, 8, 1, 765},   {16, 8, 2, 940},   {16, 8, 3, 1031},  {16, 8, 4, 1090},
      {16, 16, 1, 1543}, {16, 16, 2, 1706}, {16, 16, 3, 1810}, {16, 16, 4, 1865},
      {16, 24, 1, 2349}, {16, 24, 2, 2438}, {16, 24, 3, 2547}, {16, 24, 4, 2616},
      {16, 32, 1, 3067}, {16, 32, 2, 3428}, {16, 32, 3, 3537}, {16, 32, 4, 3616},
  };
  return rows;
}

namespace {

std::array<double, 8> basis_row(double l_symb, double l_p_max, double k) {
  return {1.0, l_p_max, k, l_symb, l_p_max * l_symb, k * l_p_max, k * l_symb, k * k};
}

LeFit compute_le_fit() {
  constexpr int P = 8;
  const auto table = le_table();
  // normal equations, solved by Gaussian elimination with partial pivoting
  double ata[P][P] = {};
  double aty[P] = {};
  for (const LeTableRow& row : table) {
    const auto x = basis_row(row.l_symb, row.l_p_max, row.k);
    for (int a = 0; a < P; ++a) {
      aty[a] += x[a] * row.le;
      for (int b = 0; b < P; ++b) ata[a][b] += x[a] * x[b];
    }
  }
  for (int col = 0; col < P; ++col) {
    int pivot = col;
    for (int r = col + 1; r < P; ++r)
      if (std::abs(ata[r][col]) > std::abs(ata[pivot][col])) pivot = r;
    std::swap(ata[col], ata[pivot]);
    std::swap(aty[col], aty[pivot]);
    if (std::abs(ata[col][col]) < 1e-12) throw internal_error("singular LE fit system");
    for (int r = 0; r < P; ++r) {
      if (r == col) continue;
      const double f = ata[r][col] / ata[col][col];
      for (int c = col; c < P; ++c) ata[r][c] -= f * ata[col][c];
      aty[r] -= f * aty[col];
    }
  }
  LeFit fit{};
  for (int a = 0; a < P; ++a) fit.coeffs[a] = aty[a] / ata[a][a];

  double sq = 0.0;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto x = basis_row(table[r].l_symb, table[r].l_p_max, table[r].k);
    double pred = 0.0;
    for (int a = 0; a < P; ++a) pred += fit.coeffs[a] * x[a];
    const double rel = (pred - table[r].le) / table[r].le;
    fit.residuals[r] = rel;
    fit.max_rel_err = std::max(fit.max_rel_err, std::abs(rel));
    sq += rel * rel;
  }
  fit.rmse_rel = std::sqrt(sq / static_cast<double>(table.size()));
  return fit;
}

}  // namespace

const LeFit& le_fit() {
  static const LeFit fit = compute_le_fit();
  return fit;
}

LeEstimate le_estimate(int l_symb, int l_p_max, int K) {
  const auto x = basis_row(l_symb, l_p_max, K);
  const LeFit& fit = le_fit();
  double pred = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) pred += fit.coeffs[a] * x[a];
  const bool inside = l_symb >= 4 && l_symb <= 16 && l_p_max >= 8 && l_p_max <= 32 &&
                      K >= 1 && K <= 4;
  return LeEstimate{pred, !inside};
}

void write_trace(std::ostream& out, std::span<const CycleTrace> traces,
                 const Alphabet& alphabet) {
  auto symbol_text = [&](Symbol s) -> std::string {
    if (s == alphabet.pad_pattern()) return "$1";
    if (s == alphabet.pad_stream()) return "$2";
    return alphabet.contains_code(s) ? alphabet.decode(s) : std::to_string(s);
  };
  out << "# cycle\tcnt";
  if (!traces.empty() && !traces.front().cycles.empty()) {
    for (std::size_t j = 0; j < traces.front().cycles.front().pe.size(); ++j)
      out << "\tpe" << j << " p:sh:a:a_d";
  }
  out << '\n';
  std::uint64_t cycle = 0;
  for (const CycleTrace& w : traces) {
    out << "# window start=" << w.window_start << '\n';
    for (const auto& cyc : w.cycles) {
      out << ++cycle << '\t' << cyc.cnt;
      for (const ProcessingElement& pe : cyc.pe) {
        out << '\t' << symbol_text(pe.p_reg) << ':' << symbol_text(pe.sh_reg) << ':'
            << pe.a_reg << ':' << pe.a_reg_d;
      }
      out << '\n';
    }
  }
}

}  // namespace oasm::systolic
