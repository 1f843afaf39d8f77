// oasm: streaming approximate-pattern search with on-the-fly shadow-hit
// filtering, plus baselines, a cycle-level core model and a bench harness.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "oasm/baselines.hpp"
#include "oasm/engine.hpp"
#include "oasm/errors.hpp"
#include "oasm/fasta.hpp"
#include "oasm/runner.hpp"
#include "oasm/systolic.hpp"

namespace {

using namespace oasm;

struct InputSpec {
  std::string path = "-";
  bool fasta = false;
};

bool looks_like_fasta(const std::string& path) {
  for (const char* ext : {".fa", ".fasta", ".fna", ".mfa"}) {
    const std::string_view sv(path);
    const std::string_view e(ext);
    if (sv.size() > e.size() && sv.substr(sv.size() - e.size()) == e) return true;
  }
  return false;
}

std::shared_ptr<const Alphabet> resolve_alphabet(const std::string& alphabet_file) {
  if (alphabet_file.empty()) return Alphabet::dna();
  return std::make_shared<const Alphabet>(Alphabet::load_file(alphabet_file));
}

/// Collects the records of a non-FASTA input (file or stdin).
std::vector<io::FastaRecord> load_records(const InputSpec& in,
                                          const std::shared_ptr<const Alphabet>& alphabet) {
  std::vector<io::FastaRecord> records;
  if (in.fasta) {
    if (in.path == "-") return io::read_fasta(std::cin);
    return io::read_fasta_file(in.path);
  }
  std::vector<Symbol> symbols;
  auto drain = [&](std::istream& is) {
    io::TextStreamSource source(is, alphabet);
    std::vector<Symbol> chunk(1 << 15);
    for (;;) {
      const std::size_t n = source.read(chunk);
      if (n == 0) break;
      symbols.insert(symbols.end(), chunk.begin(), chunk.begin() + n);
    }
  };
  if (in.path == "-") {
    drain(std::cin);
  } else {
    std::ifstream f(in.path);
    if (!f) throw input_error("cannot open input file '" + in.path + "'");
    drain(f);
  }
  records.push_back(io::FastaRecord{"stream", std::move(symbols)});
  return records;
}

void print_report(const io::RunReport& report) {
  std::cerr << "processed " << report.symbols << " symbols in " << report.wall_seconds
            << " s (" << report.config << ")\n";
  for (const auto& [id, count] : report.counts)
    std::cerr << "  " << id << ": " << count << " occurrences\n";
}

int cmd_search(const std::string& pattern_text, int k, const std::string& id,
               const std::string& alphabet_file, const InputSpec& in,
               const io::OutputOptions& opts) {
  const auto alphabet = resolve_alphabet(alphabet_file);
  const Pattern pattern = Pattern::from_text(alphabet, pattern_text, k);
  if (in.fasta || looks_like_fasta(in.path)) {
    InputSpec resolved = in;
    resolved.fasta = true;
    const auto records = load_records(resolved, alphabet);
    io::RunReport total;
    for (const auto& record : records) {
      if (records.size() > 1) std::cout << "# record: " << record.name << '\n';
      io::BufferSource source(record.sequence);
      auto report = io::run_search(pattern, id, source, std::cout, opts);
      total.symbols += report.symbols;
      total.wall_seconds += report.wall_seconds;
      total.config = report.config;
      for (auto& c : report.counts) total.counts.push_back(std::move(c));
    }
    print_report(total);
    return 0;
  }
  if (in.path == "-") {
    io::TextStreamSource source(std::cin, alphabet);
    print_report(io::run_search(pattern, id, source, std::cout, opts));
    return 0;
  }
  std::ifstream f(in.path);
  if (!f) throw input_error("cannot open input file '" + in.path + "'");
  io::TextStreamSource source(f, alphabet);
  print_report(io::run_search(pattern, id, source, std::cout, opts));
  return 0;
}

int cmd_msearch(const std::string& patterns_file, int workers,
                const std::string& alphabet_file, const InputSpec& in,
                const io::OutputOptions& opts) {
  const auto alphabet = resolve_alphabet(alphabet_file);
  const auto patterns = io::PatternSet::load_file(patterns_file, alphabet);
  if (in.fasta || looks_like_fasta(in.path)) {
    InputSpec resolved = in;
    resolved.fasta = true;
    const auto records = load_records(resolved, alphabet);
    for (const auto& record : records) {
      if (records.size() > 1) std::cout << "# record: " << record.name << '\n';
      io::BufferSource source(record.sequence);
      print_report(io::run_msearch(patterns, source, workers, std::cout, opts));
    }
    return 0;
  }
  if (in.path == "-") {
    io::TextStreamSource source(std::cin, alphabet);
    print_report(io::run_msearch(patterns, source, workers, std::cout, opts));
    return 0;
  }
  std::ifstream f(in.path);
  if (!f) throw input_error("cannot open input file '" + in.path + "'");
  io::TextStreamSource source(f, alphabet);
  print_report(io::run_msearch(patterns, source, workers, std::cout, opts));
  return 0;
}

int cmd_baseline(const std::string& algo, const std::string& pattern_text, int k,
                 const std::string& alphabet_file, const InputSpec& in, bool prune) {
  const auto alphabet = resolve_alphabet(alphabet_file);
  const Pattern pattern = Pattern::from_text(alphabet, pattern_text, k);
  InputSpec resolved = in;
  resolved.fasta = in.fasta || looks_like_fasta(in.path);
  const auto records = load_records(resolved, alphabet);
  for (const auto& record : records) {
    if (records.size() > 1) std::cout << "# record: " << record.name << '\n';
    const auto& t = record.sequence;
    if (algo == "fully-naive") {
      baselines::NaiveOptions nopts;
      nopts.prune = prune;
      const auto result = baselines::fully_naive(pattern, t, nopts);
      for (const auto& hit : result.hits) {
        std::cout << hit.start << '\t' << hit.length << '\t' << hit.distance << '\t'
                  << alphabet->decode_string(std::span(t).subspan(hit.start, hit.length))
                  << '\n';
      }
      std::cerr << record.name << ": " << result.hits.size() << " hits\n";
    } else if (algo == "less-naive") {
      const auto hits = baselines::less_naive(pattern, t);
      for (const auto& hit : hits)
        std::cout << hit.end << '\t' << hit.distance << '\n';
      std::cerr << record.name << ": " << hits.size() << " hits\n";
    } else if (algo == "oracle") {
      const auto occs = baselines::offline_reference(pattern, t, "p0");
      for (const auto& occ : occs) {
        io::write_record_tsv(
            std::cout, occ,
            alphabet->decode_string(std::span(t).subspan(occ.start, occ.length)));
      }
      std::cerr << record.name << ": " << occs.size() << " occurrences\n";
    } else {
      throw input_error("unknown baseline algorithm '" + algo + "'");
    }
  }
  return 0;
}

int cmd_simulate(const std::string& pattern_text, int k, const std::string& alphabet_file,
                 const InputSpec& in, const std::string& trace_path,
                 std::size_t trace_windows, const std::string& ram_dump_path,
                 int lp_max, int lsymb, int kmax, double tclk_ns) {
  const auto alphabet = resolve_alphabet(alphabet_file);
  const Pattern pattern = Pattern::from_text(alphabet, pattern_text, k);
  systolic::CoreConfig cfg;
  cfg.l_p_max = lp_max > 0 ? lp_max : std::max(pattern.length(), 8);
  cfg.l_symb = lsymb > 0 ? lsymb : alphabet->code_width_bits();
  cfg.k_max = kmax > 0 ? kmax : std::max(k, 1);
  cfg.t_clk = systolic::Duration{tclk_ns};

  InputSpec resolved = in;
  resolved.fasta = in.fasta || looks_like_fasta(in.path);
  const auto records = load_records(resolved, alphabet);
  for (const auto& record : records) {
    if (records.size() > 1) std::cout << "# record: " << record.name << '\n';
    const auto result = systolic::simulate_core(
        pattern, record.sequence, cfg, trace_path.empty() ? 0 : trace_windows, "p0");
    for (const auto& occ : result.occurrences) {
      io::write_record_tsv(std::cout, occ,
                           alphabet->decode_string(std::span(record.sequence)
                                                       .subspan(occ.start, occ.length)));
    }
    std::cerr << record.name << ": " << result.occurrences.size() << " occurrences, "
              << result.steps << " steps, " << result.total_cycles << " cycles, model "
              << systolic::exec_time_model(pattern.length(), k, result.steps, cfg.t_clk)
                         .count() *
                     1e-9
              << " s\n";
    if (!trace_path.empty()) {
      std::ofstream tf(trace_path);
      if (!tf) throw input_error("cannot open trace file '" + trace_path + "'");
      systolic::write_trace(tf, result.trace, *alphabet);
    }
    if (!ram_dump_path.empty()) {
      // packed result record: 16-bit start index, 3-bit distance, 5-bit length
      std::ofstream rf(ram_dump_path, std::ios::binary);
      if (!rf) throw input_error("cannot open dump file '" + ram_dump_path + "'");
      for (const auto& occ : result.occurrences) {
        const std::uint32_t word = (static_cast<std::uint32_t>(occ.start) & 0xFFFFu) |
                                   ((static_cast<std::uint32_t>(occ.distance) & 0x7u) << 16) |
                                   ((static_cast<std::uint32_t>(occ.length) & 0x1Fu) << 19);
        const char bytes[3] = {static_cast<char>(word & 0xFF),
                               static_cast<char>((word >> 8) & 0xFF),
                               static_cast<char>((word >> 16) & 0xFF)};
        rf.write(bytes, 3);
      }
    }
  }
  return 0;
}

int cmd_bench(const std::vector<int>& lps, const std::vector<int>& ks, std::uint64_t lt,
              int reps, std::uint64_t seed, double tclk_ns, const std::string& out_path) {
  io::BenchConfig cfg;
  cfg.pattern_lengths = lps;
  cfg.thresholds = ks;
  cfg.stream_length = lt;
  cfg.repetitions = reps;
  cfg.seed = seed;
  cfg.t_clk = systolic::Duration{tclk_ns};
  if (out_path.empty() || out_path == "-") {
    io::run_bench(cfg, std::cout);
  } else {
    std::ofstream f(out_path);
    if (!f) throw input_error("cannot open output file '" + out_path + "'");
    io::run_bench(cfg, f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online approximate string matching toolkit"};
  app.require_subcommand(1);

  std::string alphabet_file;
  app.add_option("--alphabet", alphabet_file,
                 "alphabet declaration file, one token per line (default: a,c,g,t,n)");

  std::string pattern_text, id = "p0", algo = "oracle", patterns_file;
  std::string trace_path, ram_dump_path, out_path, format = "tsv";
  InputSpec in;
  int k = 0, workers = 1, reps = 100;
  int lp_max = 0, lsymb = 0, kmax = 0;
  std::size_t trace_windows = 4;
  std::uint64_t lt = 3104, seed = 1;
  double tclk_ns = 10.0;
  bool prune = false, header = false;
  std::vector<int> lps{5, 7, 10, 15}, ks{3};

  auto add_input = [&](CLI::App* cmd) {
    cmd->fallthrough();  // allow the global --alphabet after the subcommand
    cmd->add_option("--input", in.path, "input file, or - for stdin")->capture_default_str();
    cmd->add_flag("--fasta", in.fasta, "force FASTA parsing regardless of extension");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_flag("--header", header, "emit a column-name comment line (tsv)");
  };

  CLI::App* search = app.add_subcommand("search", "stream one pattern over the input");
  search->add_option("--pattern", pattern_text, "pattern text")->required();
  search->add_option("--k", k, "threshold (0 <= k < pattern length)")->required();
  search->add_option("--id", id, "pattern id used in output records")->capture_default_str();
  add_input(search);
  add_format(search);

  CLI::App* msearch = app.add_subcommand("msearch", "parallel multi-pattern search");
  msearch->add_option("--patterns", patterns_file, "patterns file: 'id pattern k' per line")
      ->required();
  msearch->add_option("--workers", workers, "worker threads")->capture_default_str();
  add_input(msearch);
  add_format(msearch);

  CLI::App* baseline = app.add_subcommand("baseline", "reference scans over in-memory input");
  baseline->add_option("--algo", algo, "fully-naive, less-naive or oracle")
      ->check(CLI::IsMember({"fully-naive", "less-naive", "oracle"}))
      ->required();
  baseline->add_option("--pattern", pattern_text, "pattern text")->required();
  baseline->add_option("--k", k, "threshold")->required();
  baseline->add_flag("--prune", prune, "restrict fully-naive to lengths within the band");
  add_input(baseline);

  CLI::App* simulate = app.add_subcommand("simulate", "cycle-level core model");
  simulate->add_option("--pattern", pattern_text, "pattern text")->required();
  simulate->add_option("--k", k, "threshold")->required();
  simulate->add_option("--trace", trace_path, "per-cycle register trace file");
  simulate->add_option("--trace-windows", trace_windows, "windows to trace")
      ->capture_default_str();
  simulate->add_option("--ram-dump", ram_dump_path,
                       "packed 24-bit result records (16b index, 3b distance, 5b length)");
  simulate->add_option("--lp-max", lp_max, "processing elements (default: fit pattern)");
  simulate->add_option("--lsymb", lsymb, "symbol width in bits (default: alphabet width)");
  simulate->add_option("--kmax", kmax, "maximum threshold (default: fit k)");
  simulate->add_option("--tclk-ns", tclk_ns, "clock period in ns")->capture_default_str();
  add_input(simulate);

  CLI::App* bench = app.add_subcommand("bench", "seeded random benchmark matrix");
  bench->fallthrough();
  bench->add_option("--lp", lps, "pattern lengths")->delimiter(',')->capture_default_str();
  bench->add_option("--k", ks, "thresholds")->delimiter(',')->capture_default_str();
  bench->add_option("--lt", lt, "stream length per repetition")->capture_default_str();
  bench->add_option("--reps", reps, "repetitions per cell")->capture_default_str();
  bench->add_option("--seed", seed, "master seed")->capture_default_str();
  bench->add_option("--tclk-ns", tclk_ns, "clock period for the model column")
      ->capture_default_str();
  bench->add_option("--out", out_path, "output TSV file (default: stdout)");

  try {
    app.parse(argc, argv);
    io::OutputOptions opts;
    opts.format = format == "json" ? io::OutputFormat::json : io::OutputFormat::tsv;
    opts.header = header;
    if (search->parsed())
      return cmd_search(pattern_text, k, id, alphabet_file, in, opts);
    if (msearch->parsed())
      return cmd_msearch(patterns_file, workers, alphabet_file, in, opts);
    if (baseline->parsed())
      return cmd_baseline(algo, pattern_text, k, alphabet_file, in, prune);
    if (simulate->parsed())
      return cmd_simulate(pattern_text, k, alphabet_file, in, trace_path, trace_windows,
                          ram_dump_path, lp_max, lsymb, kmax, tclk_ns);
    if (bench->parsed())
      return cmd_bench(lps, ks, lt, reps, seed, tclk_ns, out_path);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const oasm::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
