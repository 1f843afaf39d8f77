#ifndef OASM_SYSTOLIC_HPP
#define OASM_SYSTOLIC_HPP

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oasm/types.hpp"

namespace oasm::systolic {

using Duration = std::chrono::duration<double, std::nano>;

/// Synthesis-time parameters of one core.
struct CoreConfig {
  int l_p_max = 16;   // processing elements instantiated
  int l_symb = 8;     // bits per symbol, pads included
  int k_max = 4;      // widest threshold supported
  Duration t_clk{10.0};
};

/// Registers of one processing element. p_reg holds the element's pattern
/// symbol (pattern pad when unused) and stays fixed for a whole window;
/// sh_reg holds the stream symbol shifting through (stream pad when empty);
/// a_reg is the cell computed on the previous cycle and a_reg_d the one
/// before that.
struct ProcessingElement {
  Symbol p_reg = 0;
  Symbol sh_reg = 0;
  int a_reg = 0;
  int a_reg_d = 0;
};

/// Combinational rule of element j at counter value cnt: minimum of the
/// left/upper/upper-left neighbours plus the increment term, with boundary
/// cells substituted from cnt. `prev` is element j-1 (ignored for j = 0).
int l_comb(int j, int cnt, const ProcessingElement& pe, const ProcessingElement* prev);

/// Per-cycle snapshot of one window computation.
struct CycleTrace {
  struct Cycle {
    int cnt = 0;
    std::vector<ProcessingElement> pe;   // state after the cycle
    std::optional<int> emitted;          // last-row cell leaving the array
  };
  StreamIndex window_start = 0;
  std::vector<Cycle> cycles;             // exactly 2*l_p + K - 1 per window
};

struct SimResult {
  std::vector<Occurrence> occurrences;
  std::uint64_t total_cycles = 0;   // pipelined: one window per step_search
  std::uint64_t steps = 0;          // step_search count (one per start index)
  std::vector<CycleTrace> trace;    // first trace_windows windows
};

/// Cycle-level run of one core over a finite stream. Occurrence output is
/// identical to the software engine's. Throws input_error when the pattern or
/// alphabet exceed the configuration or a reserved pad code appears in the
/// inputs.
SimResult simulate_core(const Pattern& p, std::span<const Symbol> t,
                        const CoreConfig& cfg, std::size_t trace_windows = 0,
                        std::string pattern_id = "p0");

/// Duration of one search step: (2*l_p + K - 1) * t_clk.
Duration step_search_duration(int l_p, int K, Duration t_clk);

/// Total-time model: (2*l_p + K - 1) * t_clk * l_t.
/// Requires a valid pattern domain (0 <= K < l_p), which subsumes the model's
/// stated validity range for every l_p > 1.
Duration exec_time_model(int l_p, int K, std::uint64_t l_t, Duration t_clk);

/// One synthesis measurement: logic elements used for a parameter triple.
struct LeTableRow {
  int l_symb;
  int l_p_max;
  int k;
  int le;
};

/// The 64 reference synthesis measurements.
std::span<const LeTableRow> le_table();

/// Least-squares model over the synthesis table. Basis: 1, l_p_max, K,
/// l_symb, l_p_max*l_symb, K*l_p_max, K*l_symb, K^2 (the saturation in K and
/// the slope growth with l_symb are both visible in the data).
struct LeFit {
  std::array<double, 8> coeffs;
  double max_rel_err = 0.0;   // over the 64 table rows
  double rmse_rel = 0.0;
  std::array<double, 64> residuals;  // (pred - actual) / actual, table order
};

const LeFit& le_fit();

struct LeEstimate {
  double le = 0.0;
  /// Set when the query lies outside the table hull
  /// (l_symb in [4,16], l_p_max in [8,32], K in [1,4]).
  bool extrapolated = false;
};

LeEstimate le_estimate(int l_symb, int l_p_max, int K);

/// Tab-separated trace dump: one line per cycle with cnt and per-element
/// p:sh:a:a_d fields; one documented header row. Pads print as $1/$2.
void write_trace(std::ostream& out, std::span<const CycleTrace> traces,
                 const Alphabet& alphabet);

}  // namespace oasm::systolic

#endif
