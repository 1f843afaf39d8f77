#include "oasm/alphabet.hpp"

#include <fstream>
#include <istream>

#include "oasm/errors.hpp"

namespace oasm {

namespace {

int min_width_for(std::size_t n_tokens) {
  // tokens plus the two reserved pad codes
  int w = 1;
  while ((std::size_t{1} << w) < n_tokens + 2) {
    ++w;
    if (w > 30) throw input_error("alphabet too large");
  }
  return w;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> tokens, int code_width_bits)
    : tokens_(std::move(tokens)), code_width_bits_(code_width_bits) {
  if (code_width_bits_ < 1 || code_width_bits_ > 30)
    throw input_error("code width must be in [1, 30] bits");
  if (tokens_.empty()) throw input_error("alphabet must have at least one token");
  const std::size_t capacity = std::size_t{1} << code_width_bits_;
  if (tokens_.size() > capacity)
    throw input_error("alphabet has " + std::to_string(tokens_.size()) +
                      " tokens but only " + std::to_string(capacity) +
                      " codes fit in " + std::to_string(code_width_bits_) + " bits");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const std::string& t = tokens_[i];
    if (t.empty()) throw input_error("empty alphabet token");
    if (t == "$1" || t == "$2")
      throw input_error("token '" + t + "' is reserved");
    if (!index_.emplace(t, static_cast<Symbol>(i)).second)
      throw input_error("duplicate alphabet token '" + t + "'");
    if (t.size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::with_min_width(std::vector<std::string> tokens) {
  const int w = min_width_for(tokens.size());
  return Alphabet(std::move(tokens), w);
}

std::shared_ptr<const Alphabet> Alphabet::dna() {
  static const auto instance = std::make_shared<const Alphabet>(
      std::vector<std::string>{"a", "c", "g", "t", "n"}, 3);
  return instance;
}

Alphabet Alphabet::load(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    std::string token = line.substr(start);
    if (token[0] == '#') continue;
    if (token == "$1" || token == "$2")
      throw input_error("alphabet file line " + std::to_string(lineno) +
                        ": token '" + token + "' is reserved");
    tokens.push_back(std::move(token));
  }
  return with_min_width(std::move(tokens));
}

Alphabet Alphabet::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open alphabet file '" + path + "'");
  try {
    return load(in);
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

Symbol Alphabet::pad_pattern() const {
  return static_cast<Symbol>((std::uint64_t{1} << code_width_bits_) - 2);
}

Symbol Alphabet::pad_stream() const {
  return static_cast<Symbol>((std::uint64_t{1} << code_width_bits_) - 1);
}

Symbol Alphabet::encode(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end())
    throw input_error("token '" + std::string(token) + "' not in alphabet");
  return it->second;
}

std::optional<Symbol> Alphabet::try_encode(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Alphabet::decode(Symbol code) const {
  if (!contains_code(code))
    throw input_error("symbol code " + std::to_string(code) + " not in alphabet");
  return tokens_[code];
}

std::vector<Symbol> Alphabet::encode_chars(std::string_view text) const {
  if (!single_char_)
    throw input_error("alphabet has multi-character tokens; use token input");
  std::vector<Symbol> out;
  out.reserve(text.size());
  for (char c : text) out.push_back(encode(std::string_view(&c, 1)));
  return out;
}

std::string Alphabet::decode_string(std::span<const Symbol> codes) const {
  std::string out;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += decode(codes[i]);
  }
  return out;
}

}  // namespace oasm
