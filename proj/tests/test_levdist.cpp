#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oasm/errors.hpp"
#include "oasm/levdist.hpp"
#include "oasm/runner.hpp"
#include "support/reference.hpp"

using namespace oasm;
using namespace oasm::levdist;

namespace {

const auto kAbcd = testref::letters("ABCDEFGH");

std::vector<Symbol> enc(const std::string& s) { return kAbcd->encode_chars(s); }

}  // namespace

TEST_CASE("wagner_fischer basics") {
  CHECK(wagner_fischer(enc("ABCD"), enc("ABCD")) == 0);
  CHECK(wagner_fischer(enc("ABCD"), enc("")) == 4);
  CHECK(wagner_fischer(enc(""), enc("ABCD")) == 4);
  CHECK(wagner_fischer(enc(""), enc("")) == 0);
}

TEST_CASE("wagner_fischer agrees with exhaustive edit enumeration") {
  // expected values pinned by searching all edit scripts up to the depth
  const std::vector<Symbol> sigma = enc("ABCD");
  auto exhaustive = [&](const std::string& a, const std::string& b) {
    for (int d = 0; d <= 4; ++d) {
      if (testref::within_edits(enc(a), enc(b), d, sigma)) return d;
    }
    return 5;
  };
  CHECK(exhaustive("ABCD", "ABBD") == 1);
  CHECK(wagner_fischer(enc("ABCD"), enc("ABBD")) == 1);
  CHECK(exhaustive("ABCD", "ABBDA") == 2);
  CHECK(wagner_fischer(enc("ABCD"), enc("ABBDA")) == 2);
}

TEST_CASE("wagner_fischer is symmetric and matches the memoized reference") {
  io::StreamGen gen(7);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto sigma = 2u + gen.below(6);
    const auto a = gen.symbols(1 + gen.below(12), sigma);
    const auto b = gen.symbols(gen.below(14), sigma);
    const int d = wagner_fischer(a, b);
    CHECK(d == wagner_fischer(b, a));
    CHECK(d == testref::lev_memo(a, b));
  }
}

TEST_CASE("triangle inequality on random triples") {
  io::StreamGen gen(11);
  for (int iter = 0; iter < 300; ++iter) {
    const auto a = gen.symbols(gen.below(10), 3);
    const auto b = gen.symbols(gen.below(10), 3);
    const auto c = gen.symbols(gen.below(10), 3);
    CHECK(wagner_fischer(a, c) <= wagner_fischer(a, b) + wagner_fischer(b, c));
  }
}

TEST_CASE("wagner_fischer rejects foreign codes") {
  const Pattern p = Pattern::from_text(kAbcd, "ABCD", 1);
  std::vector<Symbol> bad{0, 1, 200};
  CHECK_THROWS_AS(wagner_fischer(p, bad), input_error);
}

TEST_CASE("window_distances: one matrix yields all window lengths") {
  const Pattern p = Pattern::from_text(kAbcd, "ABCD", 1);
  const auto w = window_distances(p, enc("ABBDA"), 0);
  CHECK(w.first_length == 3);
  REQUIRE(w.values.size() == 3);
  CHECK(w.values[0] == 2);  // ABB
  CHECK(w.values[1] == 1);  // ABBD
  CHECK(w.values[2] == 2);  // ABBDA
}

TEST_CASE("window_distances exact-match window") {
  const Pattern p = Pattern::from_text(kAbcd, "ABCD", 0);
  const auto w = window_distances(p, enc("ABCD"), 0);
  REQUIRE(w.values.size() == 1);
  CHECK(w.values[0] == 0);
}

TEST_CASE("window_distances truncated near the stream end") {
  const Pattern p = Pattern::from_text(kAbcd, "ACBDA", 2);
  const auto w = window_distances(p, enc("CBDA"), 7);
  CHECK(w.start == 7);
  REQUIRE(w.values.size() == 5);  // lengths 3..7
  CHECK(w.values[0] == 2);        // CBD
  CHECK(w.values[1] == 1);        // CBDA
  CHECK_FALSE(w.values[2].has_value());
  CHECK_FALSE(w.values[3].has_value());
  CHECK_FALSE(w.values[4].has_value());
}

TEST_CASE("window_distances agrees with independent per-prefix distances") {
  io::StreamGen gen(13);
  for (int iter = 0; iter < 300; ++iter) {
    const auto sigma = 2u + gen.below(3);
    const int lp = 1 + static_cast<int>(gen.below(8));
    const int k = static_cast<int>(gen.below(static_cast<std::uint32_t>(lp)));
    const Pattern p(kAbcd, gen.symbols(static_cast<std::size_t>(lp), sigma), k);
    const auto len = 1 + gen.below(static_cast<std::uint32_t>(lp + k));
    const auto window = gen.symbols(len, sigma);
    const auto w = window_distances(p, window, 0);
    for (std::size_t j = 0; j < w.values.size(); ++j) {
      const int l = w.length_at(j);
      if (l < 1 || l > static_cast<int>(window.size())) {
        CHECK_FALSE(w.values[j].has_value());
      } else {
        REQUIRE(w.values[j].has_value());
        const std::span<const Symbol> prefix(window.data(), static_cast<std::size_t>(l));
        CHECK(*w.values[j] == testref::lev_memo(p.symbols(), prefix));
      }
    }
  }
}

TEST_CASE("window_distances errors") {
  const Pattern p = Pattern::from_text(kAbcd, "ABCD", 1);
  CHECK_THROWS_AS(window_distances(p, {}, 0), input_error);
  CHECK_THROWS_AS(window_distances(p, enc("ABBDAA"), 0), input_error);  // > l_p+K
}

TEST_CASE("wavefront fills the matrix in 2*l_p+K-1 steps") {
  const Pattern p = Pattern::from_text(kAbcd, "ABCD", 1);
  const auto r = wavefront_distances(p, enc("ABBDA"), 0);
  CHECK(r.step_count == 8);
  REQUIRE(r.distances.values.size() == 3);
  CHECK(r.distances.values[0] == 2);
  CHECK(r.distances.values[1] == 1);
  CHECK(r.distances.values[2] == 2);
}

TEST_CASE("wavefront equals row-wise on random full windows") {
  io::StreamGen gen(17);
  for (int iter = 0; iter < 500; ++iter) {
    const auto sigma = 2u + gen.below(6);
    const int lp = 1 + static_cast<int>(gen.below(15));
    const int k = static_cast<int>(gen.below(static_cast<std::uint32_t>(lp)));
    const Pattern p(kAbcd, gen.symbols(static_cast<std::size_t>(lp), sigma), k);
    const auto window = gen.symbols(static_cast<std::size_t>(lp + k), sigma);
    const auto row = window_distances(p, window, 5);
    const auto wf = wavefront_distances(p, window, 5);
    CHECK(wf.step_count == 2 * lp + k - 1);
    CHECK(wf.distances.values == row.values);
    CHECK(wf.distances.start == row.start);
  }
}

TEST_CASE("wavefront with exact-match center length") {
  const Pattern p = Pattern::from_text(kAbcd, "BCAD", 2);
  auto window = enc("BCAD");
  window.push_back(kAbcd->encode("A"));
  window.push_back(kAbcd->encode("A"));
  const auto r = wavefront_distances(p, window, 0);
  CHECK(r.distances.values[2] == 0);  // entry K = length l_p
}

TEST_CASE("wavefront routes truncated windows to the row-wise path") {
  const Pattern p = Pattern::from_text(kAbcd, "ACBDA", 2);
  const auto r = wavefront_distances(p, enc("CBDA"), 7);
  CHECK(r.step_count == 0);
  CHECK(r.distances.values[1] == 1);
}

TEST_CASE("full matrix boundary and band properties") {
  io::StreamGen gen(19);
  for (int iter = 0; iter < 100; ++iter) {
    const auto a = gen.symbols(1 + gen.below(10), 3);
    const auto b = gen.symbols(1 + gen.below(10), 3);
    const auto m = full_matrix(a, b);
    for (std::size_t n = 0; n < m.rows; ++n) CHECK(m.at(n, 0) == static_cast<int>(n));
    for (std::size_t c = 0; c < m.cols; ++c) CHECK(m.at(0, c) == static_cast<int>(c));
    for (std::size_t n = 1; n < m.rows; ++n) {
      for (std::size_t c = 1; c < m.cols; ++c) {
        CHECK(std::abs(m.at(n, c) - m.at(n - 1, c)) <= 1);
        CHECK(std::abs(m.at(n, c) - m.at(n, c - 1)) <= 1);
      }
    }
    CHECK(m.at(m.rows - 1, m.cols - 1) == wagner_fischer(a, b));
  }
}
