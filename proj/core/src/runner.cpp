#include "oasm/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oasm/engine.hpp"
#include "oasm/errors.hpp"

namespace oasm::io {

namespace {

constexpr std::size_t kChunkSymbols = 1 << 15;

std::string decode_match(const Engine& engine, const Occurrence& occ) {
  return engine.pattern().alphabet().decode_string(engine.recent(occ.start, occ.length));
}

void write_header(std::ostream& out, const OutputOptions& opts) {
  if (opts.format == OutputFormat::tsv && opts.header)
    out << "# pattern_id\tstart\tlength\tdistance\tmatched_substring\n";
}

void write_record(std::ostream& out, const OutputOptions& opts, const Occurrence& occ,
                  const std::string& match) {
  if (opts.format == OutputFormat::tsv)
    write_record_tsv(out, occ, match);
  else
    write_record_json(out, occ, match);
  if (opts.line_buffered) out.flush();
}

/// Fixed-capacity single-producer broadcast: every consumer sees every chunk
/// in order; the producer blocks while the slowest consumer is `capacity`
/// chunks behind.
class BroadcastQueue {
public:
  BroadcastQueue(std::size_t capacity, std::size_t consumers)
      : capacity_(capacity), next_(consumers, 0) {}

  void publish(std::vector<Symbol> chunk) {
    std::unique_lock lock(mu_);
    not_full_.wait(lock, [&] { return head_ + chunks_.size() - min_next() < capacity_; });
    chunks_.push_back(std::make_shared<const std::vector<Symbol>>(std::move(chunk)));
    not_empty_.notify_all();
  }

  void close() {
    std::lock_guard lock(mu_);
    closed_ = true;
    not_empty_.notify_all();
  }

  /// Next chunk for consumer `id`, or nullptr when the stream is done.
  std::shared_ptr<const std::vector<Symbol>> fetch(std::size_t id) {
    std::unique_lock lock(mu_);
    not_empty_.wait(lock, [&] { return next_[id] < head_ + chunks_.size() || closed_; });
    if (next_[id] == head_ + chunks_.size()) return nullptr;  // closed and drained
    auto chunk = chunks_[next_[id] - head_];
    ++next_[id];
    while (!chunks_.empty() && min_next() > head_) {
      chunks_.pop_front();
      ++head_;
      not_full_.notify_one();
    }
    return chunk;
  }

private:
  std::size_t min_next() const { return *std::min_element(next_.begin(), next_.end()); }

  std::mutex mu_;
  std::condition_variable not_empty_, not_full_;
  std::deque<std::shared_ptr<const std::vector<Symbol>>> chunks_;
  std::size_t head_ = 0;  // index of chunks_.front()
  std::size_t capacity_;
  std::vector<std::size_t> next_;
  bool closed_ = false;
};

struct PatternRun {
  std::string records;       // formatted, emission order
  std::uint64_t count = 0;
};

void consume_buffer(Engine& engine, std::span<const Symbol> data,
                    const OutputOptions& opts, PatternRun& run) {
  std::ostringstream os;
  auto sink = [&](const std::vector<Occurrence>& occs) {
    for (const Occurrence& occ : occs) {
      const std::string match = decode_match(engine, occ);
      if (opts.format == OutputFormat::tsv)
        write_record_tsv(os, occ, match);
      else
        write_record_json(os, occ, match);
      ++run.count;
    }
  };
  for (Symbol s : data) sink(engine.push(s));
  sink(engine.finalize());
  run.records = os.str();
}

}  // namespace

std::size_t BufferSource::read(std::span<Symbol> out) {
  const std::size_t n = std::min(out.size(), data_.size() - cursor_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(cursor_), n, out.begin());
  cursor_ += n;
  return n;
}

TextStreamSource::TextStreamSource(std::istream& in,
                                   std::shared_ptr<const Alphabet> alphabet)
    : in_(in), alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw input_error("text source requires an alphabet");
}

std::size_t TextStreamSource::read(std::span<Symbol> out) {
  std::size_t n = 0;
  if (alphabet_->single_char_tokens()) {
    char c;
    while (n < out.size() && in_.get(c)) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
        continue;
      out[n++] = alphabet_->encode(std::string_view(&c, 1));
    }
  } else {
    std::string token;
    while (n < out.size() && (in_ >> token)) out[n++] = alphabet_->encode(token);
  }
  return n;
}

void PatternSet::add(std::string id, Pattern pattern) {
  for (const auto& [existing, _] : entries_) {
    if (existing == id) throw input_error("duplicate pattern id '" + id + "'");
  }
  entries_.emplace_back(std::move(id), std::move(pattern));
}

PatternSet PatternSet::load(std::istream& in, std::shared_ptr<const Alphabet> alphabet) {
  PatternSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string id, text;
    int k = 0;
    if (!(fields >> id)) continue;
    if (id[0] == '#') continue;
    if (!(fields >> text >> k))
      throw input_error("patterns file line " + std::to_string(lineno) +
                        ": expected 'id pattern k'");
    try {
      set.add(id, Pattern::from_text(alphabet, text, k));
    } catch (const input_error& e) {
      throw input_error("patterns file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (set.size() == 0) throw input_error("patterns file has no patterns");
  return set;
}

PatternSet PatternSet::load_file(const std::string& path,
                                 std::shared_ptr<const Alphabet> alphabet) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open patterns file '" + path + "'");
  return load(in, std::move(alphabet));
}

RunReport run_search(const Pattern& pattern, const std::string& pattern_id,
                     SymbolSource& source, std::ostream& out,
                     const OutputOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Engine engine(pattern, pattern_id);
  write_header(out, opts);
  std::uint64_t count = 0;
  std::vector<Symbol> chunk(kChunkSymbols);
  auto emit = [&](const std::vector<Occurrence>& occs) {
    for (const Occurrence& occ : occs)
      write_record(out, opts, occ, decode_match(engine, occ));
    count += occs.size();
  };
  for (;;) {
    const std::size_t n = source.read(chunk);
    if (n == 0) break;
    for (std::size_t i = 0; i < n; ++i) emit(engine.push(chunk[i]));
  }
  emit(engine.finalize());

  RunReport report;
  report.counts.emplace_back(pattern_id, count);
  report.symbols = engine.symbols_consumed();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.config = "pattern=" + pattern.text() + " k=" + std::to_string(pattern.threshold());
  return report;
}

RunReport run_msearch(const PatternSet& patterns, SymbolSource& source, int workers,
                      std::ostream& out, const OutputOptions& opts) {
  if (patterns.size() == 0) throw input_error("msearch requires at least one pattern");
  if (workers < 1) throw input_error("workers must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n_patterns = patterns.size();
  const std::size_t n_workers = std::min<std::size_t>(workers, n_patterns);
  std::vector<PatternRun> runs(n_patterns);
  std::uint64_t symbols = 0;

  if (const std::vector<Symbol>* buf = source.buffered()) {
    // shared immutable input: each worker takes whole patterns off a counter
    symbols = buf->size();
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n_patterns) return;
          try {
            Engine engine(patterns.at(i).second, patterns.at(i).first);
            consume_buffer(engine, *buf, opts, runs[i]);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  } else {
    // live stream: bounded fan-out, one cursor per worker, patterns split
    // round-robin so every engine sees the identical symbol sequence
    BroadcastQueue queue(16, n_workers);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mu;
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          std::vector<std::pair<std::size_t, Engine>> engines;
          for (std::size_t i = w; i < n_patterns; i += n_workers)
            engines.emplace_back(i, Engine(patterns.at(i).second, patterns.at(i).first));
          std::vector<std::ostringstream> streams(engines.size());
          while (auto chunk = queue.fetch(w)) {
            for (std::size_t e = 0; e < engines.size(); ++e) {
              Engine& engine = engines[e].second;
              for (Symbol s : *chunk) {
                for (const Occurrence& occ : engine.push(s)) {
                  const std::string match = decode_match(engine, occ);
                  if (opts.format == OutputFormat::tsv)
                    write_record_tsv(streams[e], occ, match);
                  else
                    write_record_json(streams[e], occ, match);
                  ++runs[engines[e].first].count;
                }
              }
            }
          }
          for (std::size_t e = 0; e < engines.size(); ++e) {
            Engine& engine = engines[e].second;
            for (const Occurrence& occ : engine.finalize()) {
              const std::string match = decode_match(engine, occ);
              if (opts.format == OutputFormat::tsv)
                write_record_tsv(streams[e], occ, match);
              else
                write_record_json(streams[e], occ, match);
              ++runs[engines[e].first].count;
            }
            runs[engines[e].first].records = streams[e].str();
          }
        } catch (...) {
          {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
          while (queue.fetch(w)) {
          }  // keep draining so the producer never stalls
        }
      });
    }
    std::exception_ptr read_failure;
    try {
      std::vector<Symbol> chunk(kChunkSymbols);
      for (;;) {
        const std::size_t n = source.read(chunk);
        if (n == 0) break;
        symbols += n;
        queue.publish(std::vector<Symbol>(chunk.begin(), chunk.begin() + n));
      }
    } catch (...) {
      read_failure = std::current_exception();
    }
    queue.close();
    for (auto& t : pool) t.join();
    if (read_failure) std::rethrow_exception(read_failure);
    if (failure) std::rethrow_exception(failure);
  }

  write_header(out, opts);
  RunReport report;
  for (std::size_t i = 0; i < n_patterns; ++i) {
    out << runs[i].records;
    report.counts.emplace_back(patterns.at(i).first, runs[i].count);
  }
  if (opts.line_buffered) out.flush();
  report.symbols = symbols;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.config = "patterns=" + std::to_string(n_patterns) +
                  " workers=" + std::to_string(workers);
  return report;
}

std::uint64_t StreamGen::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint32_t StreamGen::below(std::uint32_t n) {
  if (n == 0) throw input_error("below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return static_cast<std::uint32_t>(v % n);
}

std::vector<Symbol> StreamGen::symbols(std::size_t count, std::uint32_t alphabet_size) {
  std::vector<Symbol> out(count);
  for (Symbol& s : out) s = below(alphabet_size);
  return out;
}

std::shared_ptr<const Alphabet> bench_alphabet() {
  static const auto instance = std::make_shared<const Alphabet>(
      std::vector<std::string>{"A", "B", "C", "D"}, 3);
  return instance;
}

void run_bench(const BenchConfig& cfg, std::ostream& tsv_out) {
  if (cfg.repetitions < 1) throw input_error("bench requires at least one repetition");
  const auto alphabet = bench_alphabet();
  tsv_out << "# lp\tk\tlt\treps\tseed\tsw_mean_s\tsw_std_s\tocc_mean\tsim_cycles\tmodel_s\n";
  for (int lp : cfg.pattern_lengths) {
    for (int k : cfg.thresholds) {
      if (k < 0 || k >= lp)
        throw input_error("bench cell l_p=" + std::to_string(lp) +
                          " K=" + std::to_string(k) + " violates K < l_p");
      std::vector<double> times(static_cast<std::size_t>(cfg.repetitions));
      std::uint64_t occ_total = 0;
      std::uint64_t sim_cycles = 0;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        StreamGen gen(cfg.seed ^ (static_cast<std::uint64_t>(lp) << 40) ^
                      (static_cast<std::uint64_t>(k) << 32) ^
                      static_cast<std::uint64_t>(rep));
        const auto pattern_syms = gen.symbols(static_cast<std::size_t>(lp), 4);
        const auto stream = gen.symbols(static_cast<std::size_t>(cfg.stream_length), 4);
        Pattern pattern(alphabet, pattern_syms, k);
        const auto t0 = std::chrono::steady_clock::now();
        Engine engine(pattern, "bench");
        std::uint64_t count = 0;
        for (Symbol s : stream) count += engine.push(s).size();
        count += engine.finalize().size();
        times[static_cast<std::size_t>(rep)] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        occ_total += count;
        if (rep == 0) {
          systolic::CoreConfig core{std::max(lp, 8), alphabet->code_width_bits(),
                                    std::max(k, 1), cfg.t_clk};
          sim_cycles = systolic::simulate_core(pattern, stream, core).total_cycles;
        }
      }
      double mean = 0.0;
      for (double t : times) mean += t;
      mean /= static_cast<double>(times.size());
      double var = 0.0;
      for (double t : times) var += (t - mean) * (t - mean);
      var = times.size() > 1 ? var / static_cast<double>(times.size() - 1) : 0.0;
      const auto model = systolic::exec_time_model(lp, k, cfg.stream_length, cfg.t_clk);
      tsv_out << lp << '\t' << k << '\t' << cfg.stream_length << '\t' << cfg.repetitions
              << '\t' << cfg.seed << '\t' << mean << '\t' << std::sqrt(var) << '\t'
              << (static_cast<double>(occ_total) / static_cast<double>(cfg.repetitions))
              << '\t' << sim_cycles << '\t' << (model.count() * 1e-9) << '\n';
    }
  }
  tsv_out.flush();
}

void write_record_tsv(std::ostream& out, const Occurrence& occ, const std::string& match) {
  out << occ.pattern_id << '\t' << occ.start << '\t' << occ.length << '\t'
      << occ.distance << '\t' << match << '\n';
}

void write_record_json(std::ostream& out, const Occurrence& occ, const std::string& match) {
  nlohmann::json j{{"pattern_id", occ.pattern_id},
                   {"start", occ.start},
                   {"length", occ.length},
                   {"distance", occ.distance},
                   {"matched_substring", match}};
  out << j.dump() << '\n';
}

}  // namespace oasm::io
