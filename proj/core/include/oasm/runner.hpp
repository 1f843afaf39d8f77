#ifndef OASM_RUNNER_HPP
#define OASM_RUNNER_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oasm/systolic.hpp"
#include "oasm/types.hpp"

namespace oasm::io {

/// Single-pass symbol stream. Implementations either expose a preloaded
/// buffer (files) or hand out chunks as they arrive (stdin pipes).
class SymbolSource {
public:
  virtual ~SymbolSource() = default;
  /// Fills `out` with up to out.size() symbols; returns the count, 0 at EOF.
  virtual std::size_t read(std::span<Symbol> out) = 0;
  /// Non-null when the whole input is already in memory.
  virtual const std::vector<Symbol>* buffered() const { return nullptr; }
};

class BufferSource final : public SymbolSource {
public:
  explicit BufferSource(std::vector<Symbol> data) : data_(std::move(data)) {}
  std::size_t read(std::span<Symbol> out) override;
  const std::vector<Symbol>* buffered() const override { return &data_; }

private:
  std::vector<Symbol> data_;
  std::size_t cursor_ = 0;
};

/// Reads character or whitespace-separated-token text and encodes it on the
/// fly. Whitespace is skipped in character mode.
class TextStreamSource final : public SymbolSource {
public:
  TextStreamSource(std::istream& in, std::shared_ptr<const Alphabet> alphabet);
  std::size_t read(std::span<Symbol> out) override;

private:
  std::istream& in_;
  std::shared_ptr<const Alphabet> alphabet_;
};

/// Identified patterns over a shared alphabet.
class PatternSet {
public:
  void add(std::string id, Pattern pattern);  // input_error on duplicate id
  /// Parses lines "id <whitespace> pattern <whitespace> k". '#' comments and
  /// blank lines are ignored.
  static PatternSet load(std::istream& in, std::shared_ptr<const Alphabet> alphabet);
  static PatternSet load_file(const std::string& path,
                              std::shared_ptr<const Alphabet> alphabet);

  std::size_t size() const { return entries_.size(); }
  const std::pair<std::string, Pattern>& at(std::size_t i) const { return entries_[i]; }

private:
  std::vector<std::pair<std::string, Pattern>> entries_;
};

enum class OutputFormat { tsv, json };

struct OutputOptions {
  OutputFormat format = OutputFormat::tsv;
  bool header = false;        // leading column-name comment line (tsv only)
  bool line_buffered = true;  // flush after every record
};

struct RunReport {
  std::vector<std::pair<std::string, std::uint64_t>> counts;  // per pattern id
  double wall_seconds = 0.0;
  std::uint64_t symbols = 0;
  std::string config;
};

/// Streams one pattern over the input, writing records as they are emitted.
RunReport run_search(const Pattern& pattern, const std::string& pattern_id,
                     SymbolSource& source, std::ostream& out,
                     const OutputOptions& opts);

/// Runs every pattern of the set over the identical symbol sequence using
/// `workers` threads. Records are written sorted by (pattern id position,
/// emission order), so the output is byte-identical for any worker count.
RunReport run_msearch(const PatternSet& patterns, SymbolSource& source, int workers,
                      std::ostream& out, const OutputOptions& opts);

struct BenchConfig {
  std::vector<int> pattern_lengths;
  std::vector<int> thresholds;
  std::uint64_t stream_length = 3104;
  int repetitions = 100;
  std::uint64_t seed = 1;
  systolic::Duration t_clk{10.0};
};

/// Seeded benchmark over uniform random 4-letter streams. For each valid
/// (l_p, K) cell: engine wall time mean +- std over the repetitions, the
/// simulated core's cycle count and the model time. Machine-readable TSV.
void run_bench(const BenchConfig& cfg, std::ostream& tsv_out);

/// Deterministic uniform stream/pattern generation used by the bench and by
/// tests. Rejection-sampled, so the sequence only depends on the seed.
class StreamGen {
public:
  explicit StreamGen(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  std::uint32_t below(std::uint32_t n);  // uniform in [0, n)
  std::vector<Symbol> symbols(std::size_t count, std::uint32_t alphabet_size);

private:
  std::uint64_t state_;
};

/// The four-letter alphabet used by the synthetic benchmarks (A, B, C, D).
std::shared_ptr<const Alphabet> bench_alphabet();

void write_record_tsv(std::ostream& out, const Occurrence& occ, const std::string& match);
void write_record_json(std::ostream& out, const Occurrence& occ, const std::string& match);

}  // namespace oasm::io

#endif
