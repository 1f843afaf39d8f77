#ifndef OASM_ALPHABET_HPP
#define OASM_ALPHABET_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace oasm {

using Symbol = std::uint32_t;

/// Finite ordered alphabet with fixed-width integer symbol codes.
///
/// Codes are assigned in declaration order starting from 0. The two largest
/// representable codes are reserved pad values (pattern pad and stream pad)
/// used by the systolic core model; they are never assigned to tokens and the
/// token texts "$1" and "$2" are rejected.
class Alphabet {
public:
  /// Throws input_error on duplicate/empty/reserved tokens or when the token
  /// count does not fit the code width.
  Alphabet(std::vector<std::string> tokens, int code_width_bits);

  /// Chooses the smallest width that fits the tokens plus both pad codes.
  static Alphabet with_min_width(std::vector<std::string> tokens);

  /// Nucleotide alphabet: a, c, g, t, n (3 bits).
  static std::shared_ptr<const Alphabet> dna();

  /// Reads a declaration file, one token per line. Blank lines and lines
  /// starting with '#' are ignored.
  static Alphabet load(std::istream& in);
  static Alphabet load_file(const std::string& path);

  std::size_t size() const { return tokens_.size(); }
  int code_width_bits() const { return code_width_bits_; }

  /// Reserved codes, top of the code space.
  Symbol pad_pattern() const;  // $1
  Symbol pad_stream() const;   // $2

  bool contains_code(Symbol code) const { return code < tokens_.size(); }
  bool single_char_tokens() const { return single_char_; }

  Symbol encode(std::string_view token) const;  // throws input_error
  std::optional<Symbol> try_encode(std::string_view token) const;
  const std::string& decode(Symbol code) const;  // throws input_error

  /// Encodes text where every character is one token. Requires
  /// single-character tokens; throws input_error on unknown characters.
  std::vector<Symbol> encode_chars(std::string_view text) const;

  /// Inverse of encode_chars / token-joined rendering for wider tokens.
  std::string decode_string(std::span<const Symbol> codes) const;

  const std::vector<std::string>& tokens() const { return tokens_; }

private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Symbol> index_;
  int code_width_bits_ = 0;
  bool single_char_ = true;
};

}  // namespace oasm

#endif
