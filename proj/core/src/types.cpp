#include "oasm/types.hpp"

#include "oasm/errors.hpp"

namespace oasm {

Pattern::Pattern(std::shared_ptr<const Alphabet> alphabet, std::vector<Symbol> symbols,
                 int threshold)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)), threshold_(threshold) {
  if (!alphabet_) throw input_error("pattern requires an alphabet");
  if (symbols_.empty()) throw input_error("pattern must not be empty");
  if (threshold_ < 0 || threshold_ >= static_cast<int>(symbols_.size()))
    throw input_error("threshold K=" + std::to_string(threshold_) +
                      " must satisfy 0 <= K < pattern length " +
                      std::to_string(symbols_.size()));
  for (Symbol s : symbols_) {
    if (!alphabet_->contains_code(s))
      throw input_error("pattern symbol code " + std::to_string(s) +
                        " not in alphabet");
  }
}

Pattern Pattern::from_text(std::shared_ptr<const Alphabet> alphabet,
                           std::string_view text, int threshold) {
  if (!alphabet) throw input_error("pattern requires an alphabet");
  std::vector<Symbol> symbols;
  if (alphabet->single_char_tokens()) {
    symbols = alphabet->encode_chars(text);
  } else {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t ws = text.find_first_of(" \t", pos);
      std::string_view token = text.substr(pos, ws == std::string_view::npos ? ws : ws - pos);
      if (!token.empty()) symbols.push_back(alphabet->encode(token));
      if (ws == std::string_view::npos) break;
      pos = ws + 1;
    }
  }
  return Pattern(std::move(alphabet), std::move(symbols), threshold);
}

std::string Pattern::text() const { return alphabet_->decode_string(symbols_); }

std::uint64_t worst_case_delay(int l_p, int k_min) {
  if (l_p < 1 || k_min < 0 || k_min >= l_p)
    throw input_error("worst_case_delay requires 0 <= k_min < l_p");
  const auto lp = static_cast<std::uint64_t>(l_p);
  const auto k = static_cast<std::uint64_t>(k_min);
  return lp * (k + 1) + k * (k - 1) / 2;
}

std::uint64_t mem_space_bound(int l_p, int K) {
  if (l_p < 1 || K < 0 || K >= l_p)
    throw input_error("mem_space_bound requires 0 <= K < l_p");
  const auto lp = static_cast<std::uint64_t>(l_p);
  const auto k = static_cast<std::uint64_t>(K);
  return lp * (k + 1) + (k * (k - 1) / 2) * (2 * k + 1);
}

}  // namespace oasm
