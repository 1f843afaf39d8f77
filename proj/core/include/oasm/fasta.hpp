#ifndef OASM_FASTA_HPP
#define OASM_FASTA_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "oasm/alphabet.hpp"

namespace oasm::io {

struct FastaRecord {
  std::string name;
  std::vector<Symbol> sequence;
};

/// Reads FASTA records over the nucleotide alphabet. Case-insensitive;
/// u is normalized to t; N is kept as its own token; whitespace inside
/// sequence lines is ignored. Malformed input raises input_error with the
/// offending line number.
std::vector<FastaRecord> read_fasta(std::istream& in);
std::vector<FastaRecord> read_fasta_file(const std::string& path);

/// DNA text normalization used by the reader: lowercases and maps u to t.
/// Returns 0 for characters outside a/c/g/t/u/n.
char normalize_nucleotide(char c);

}  // namespace oasm::io

#endif
