#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oasm/baselines.hpp"
#include "oasm/engine.hpp"
#include "oasm/errors.hpp"
#include "oasm/fasta.hpp"
#include "oasm/runner.hpp"
#include "support/reference.hpp"

using namespace oasm;
using namespace oasm::io;

TEST_CASE("read_fasta basics") {
  std::istringstream in(">x\nACGT\n");
  const auto records = read_fasta(in);
  REQUIRE(records.size() == 1);
  CHECK(records[0].name == "x");
  CHECK(Alphabet::dna()->decode_string(records[0].sequence) == "acgt");
}

TEST_CASE("read_fasta normalizes case and U") {
  std::istringstream in(">x\nacgu\n");
  const auto records = read_fasta(in);
  REQUIRE(records.size() == 1);
  CHECK(Alphabet::dna()->decode_string(records[0].sequence) == "acgt");
}

TEST_CASE("read_fasta keeps N, joins lines, preserves record order") {
  std::istringstream in(">first one\nAC GT\nNNta\n>second\nuuag\n");
  const auto records = read_fasta(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0].name == "first");
  CHECK(Alphabet::dna()->decode_string(records[0].sequence) == "acgtnnta");
  CHECK(records[1].name == "second");
  CHECK(Alphabet::dna()->decode_string(records[1].sequence) == "ttag");
}

TEST_CASE("read_fasta reports the offending line") {
  std::istringstream data(">x\nACGT\nACZT\n");
  CHECK_THROWS_WITH_AS(read_fasta(data), doctest::Contains("line 3"), input_error);
  std::istringstream headerless("ACGT\n");
  CHECK_THROWS_WITH_AS(read_fasta(headerless), doctest::Contains("line 1"), input_error);
  std::istringstream empty_header(">\nACGT\n");
  CHECK_THROWS_AS(read_fasta(empty_header), input_error);
}

TEST_CASE("run_search streams records for the worked example") {
  const auto ab = testref::letters("ABCD");
  const Pattern p = Pattern::from_text(ab, "ACBDA", 2);
  BufferSource source(ab->encode_chars("CCCCDACCBDACBDAA"));
  std::ostringstream out;
  OutputOptions opts;
  opts.header = true;
  const auto report = run_search(p, "p0", source, out, opts);
  CHECK(out.str() ==
        "# pattern_id\tstart\tlength\tdistance\tmatched_substring\n"
        "p0\t10\t5\t0\tACBDA\n"
        "p0\t3\t3\t2\tCDA\n");
  REQUIRE(report.counts.size() == 1);
  CHECK(report.counts[0].second == 2);
  CHECK(report.symbols == 16);
}

TEST_CASE("run_search on empty input") {
  const auto ab = testref::letters("ABCD");
  const Pattern p = Pattern::from_text(ab, "ACBDA", 2);
  BufferSource source(std::vector<Symbol>{});
  std::ostringstream out;
  const auto report = run_search(p, "p0", source, out, OutputOptions{});
  CHECK(out.str().empty());
  CHECK(report.counts[0].second == 0);
  CHECK(report.symbols == 0);
}

TEST_CASE("json record schema mirrors the tsv fields") {
  const auto ab = testref::letters("ABCD");
  const Pattern p = Pattern::from_text(ab, "ACBDA", 2);
  BufferSource source(ab->encode_chars("CCCCDACCBDACBDAA"));
  std::ostringstream out;
  OutputOptions opts;
  opts.format = OutputFormat::json;
  run_search(p, "p0", source, out, opts);
  const std::string text = out.str();
  CHECK(text.find("\"pattern_id\":\"p0\"") != std::string::npos);
  CHECK(text.find("\"start\":10") != std::string::npos);
  CHECK(text.find("\"matched_substring\":\"ACBDA\"") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("pattern set parsing") {
  const auto ab = testref::letters("ABCD");
  std::istringstream in("# id pattern k\np0 ACBDA 2\np1 ABCD 1\n");
  const auto set = PatternSet::load(in, ab);
  CHECK(set.size() == 2);
  CHECK(set.at(1).first == "p1");
  CHECK(set.at(1).second.threshold() == 1);

  std::istringstream dup("a ACBDA 2\na ABCD 1\n");
  CHECK_THROWS_AS(PatternSet::load(dup, ab), input_error);
  std::istringstream short_line("a ACBDA\n");
  CHECK_THROWS_WITH_AS(PatternSet::load(short_line, ab), doctest::Contains("line 1"),
                       input_error);
}

namespace {

std::string msearch_output(const PatternSet& set, const std::vector<Symbol>& data,
                           int workers, bool via_stream) {
  std::ostringstream out;
  if (via_stream) {
    // feed through the chunked text path to exercise the fan-out queue
    std::string text;
    const auto ab = testref::letters("ABCD");
    for (Symbol s : data) text += ab->decode(s);
    std::istringstream is(text);
    TextStreamSource source(is, testref::letters("ABCD"));
    run_msearch(set, source, workers, out, OutputOptions{});
  } else {
    BufferSource source(data);
    run_msearch(set, source, workers, out, OutputOptions{});
  }
  return out.str();
}

}  // namespace

TEST_CASE("msearch output is worker-count invariant on both input paths") {
  const auto ab = testref::letters("ABCD");
  StreamGen gen(71);
  PatternSet set;
  for (int i = 0; i < 7; ++i) {
    const int lp = 3 + static_cast<int>(gen.below(5));
    set.add("p" + std::to_string(i),
            Pattern(ab, gen.symbols(static_cast<std::size_t>(lp), 4), 2));
  }
  const auto data = gen.symbols(4000, 4);
  const std::string base = msearch_output(set, data, 1, false);
  CHECK(!base.empty());
  for (int workers : {2, 8}) {
    CHECK(msearch_output(set, data, workers, false) == base);
  }
  for (int workers : {1, 2, 8}) {
    CHECK(msearch_output(set, data, workers, true) == base);
  }
}

TEST_CASE("msearch equals independent single searches") {
  const auto ab = testref::letters("ABCD");
  StreamGen gen(73);
  PatternSet set;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    const int lp = 2 + static_cast<int>(gen.below(6));
    const int k = static_cast<int>(gen.below(std::min(3u, static_cast<std::uint32_t>(lp))));
    set.add("p" + std::to_string(i),
            Pattern(ab, gen.symbols(static_cast<std::size_t>(lp), 4), k));
  }
  const auto data = gen.symbols(2000, 4);
  std::ostringstream multi;
  BufferSource msource(data);
  run_msearch(set, msource, 4, multi, OutputOptions{});

  std::ostringstream singles;
  for (std::size_t i = 0; i < set.size(); ++i) {
    BufferSource source(data);
    run_search(set.at(i).second, set.at(i).first, source, singles, OutputOptions{});
  }
  CHECK(multi.str() == singles.str());
}

TEST_CASE("identical patterns under different ids yield identical record sets") {
  const auto ab = testref::letters("ABCD");
  const Pattern p = Pattern::from_text(ab, "ACBDA", 2);
  PatternSet set;
  set.add("x", Pattern(p));
  set.add("y", Pattern(p));
  BufferSource source(ab->encode_chars("CCCCDACCBDACBDAA"));
  std::ostringstream out;
  run_msearch(set, source, 2, out, OutputOptions{});
  CHECK(out.str() ==
        "x\t10\t5\t0\tACBDA\nx\t3\t3\t2\tCDA\n"
        "y\t10\t5\t0\tACBDA\ny\t3\t3\t2\tCDA\n");
}

TEST_CASE("single-pattern msearch equals search modulo nothing but the id column") {
  const auto ab = testref::letters("ABCD");
  StreamGen gen(79);
  const Pattern p(ab, gen.symbols(5, 4), 2);
  const auto data = gen.symbols(1500, 4);
  PatternSet set;
  set.add("only", Pattern(p));
  std::ostringstream multi, single;
  BufferSource s1(data), s2(data);
  run_msearch(set, s1, 3, multi, OutputOptions{});
  run_search(p, "only", s2, single, OutputOptions{});
  CHECK(multi.str() == single.str());
}

TEST_CASE("engine state stays bounded over a multi-megabyte stream") {
  const auto ab = testref::letters("ABCD");
  StreamGen gen(83);
  const Pattern p(ab, gen.symbols(8, 4), 2);
  Engine engine(p, "mem");
  const std::size_t before = engine.state_bytes();
  std::uint64_t count = 0;
  std::size_t after_1mb = 0;
  for (std::size_t i = 0; i < 4'000'000; ++i) {
    count += engine.push(static_cast<Symbol>(gen.below(4))).size();
    if (i == 1'000'000) after_1mb = engine.state_bytes();
  }
  count += engine.finalize().size();
  CHECK(count > 0);
  CHECK(engine.state_bytes() == after_1mb);  // flat after warmup
  CHECK(engine.state_bytes() <= before + 4096);
  // the resident state is tied to the delay bound, not the input length
  CHECK(engine.state_bytes() <
        (worst_case_delay(8, 2) + 8 + 2) * sizeof(Symbol) + 4096);
}

TEST_CASE("bench output is deterministic apart from the timing columns") {
  BenchConfig cfg;
  cfg.pattern_lengths = {5, 7};
  cfg.thresholds = {2};
  cfg.stream_length = 600;
  cfg.repetitions = 3;
  cfg.seed = 99;
  std::ostringstream a, b;
  run_bench(cfg, a);
  run_bench(cfg, b);
  auto strip_timing = [](const std::string& text) {
    // drop columns 6 and 7 (mean, std) of every data row
    std::istringstream is(text);
    std::string line, out;
    while (std::getline(is, line)) {
      if (!line.empty() && line[0] == '#') {
        out += line + '\n';
        continue;
      }
      std::istringstream fields(line);
      std::string f;
      int idx = 0;
      while (std::getline(fields, f, '\t')) {
        if (idx != 5 && idx != 6) out += f + "|";
        ++idx;
      }
      out += '\n';
    }
    return out;
  };
  CHECK(strip_timing(a.str()) == strip_timing(b.str()));
  CHECK(a.str().find("5\t2\t600") != std::string::npos);
}

TEST_CASE("msearch propagates a bad symbol from a live stream without hanging") {
  const auto ab = testref::letters("ABCD");
  PatternSet set;
  set.add("p0", Pattern::from_text(ab, "ACBDA", 2));
  std::istringstream is("CCCCDAXCBDA");
  TextStreamSource source(is, ab);
  std::ostringstream out;
  CHECK_THROWS_AS(run_msearch(set, source, 2, out, OutputOptions{}), input_error);
}

TEST_CASE("bench rejects invalid cells") {
  BenchConfig cfg;
  cfg.pattern_lengths = {3};
  cfg.thresholds = {3};
  cfg.repetitions = 1;
  std::ostringstream out;
  CHECK_THROWS_AS(run_bench(cfg, out), input_error);
}
