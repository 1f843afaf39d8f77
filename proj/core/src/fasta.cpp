#include "oasm/fasta.hpp"

#include <cctype>
#include <fstream>
#include <istream>

#include "oasm/errors.hpp"

namespace oasm::io {

char normalize_nucleotide(char c) {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  switch (lower) {
    case 'a':
    case 'c':
    case 'g':
    case 't':
    case 'n':
      return lower;
    case 'u':
      return 't';
    default:
      return 0;
  }
}

std::vector<FastaRecord> read_fasta(std::istream& in) {
  const auto alphabet = Alphabet::dna();
  std::vector<FastaRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      std::size_t name_start = 1;
      while (name_start < line.size() && std::isspace(static_cast<unsigned char>(line[name_start])))
        ++name_start;
      std::size_t name_end = line.find_first_of(" \t", name_start);
      if (name_end == std::string::npos) name_end = line.size();
      if (name_end == name_start)
        throw input_error("line " + std::to_string(lineno) + ": empty FASTA header");
      records.push_back(FastaRecord{line.substr(name_start, name_end - name_start), {}});
      continue;
    }
    if (records.empty())
      throw input_error("line " + std::to_string(lineno) +
                        ": sequence data before any FASTA header");
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      const char norm = normalize_nucleotide(c);
      if (norm == 0)
        throw input_error("line " + std::to_string(lineno) +
                          ": unexpected character '" + std::string(1, c) + "'");
      records.back().sequence.push_back(alphabet->encode(std::string_view(&norm, 1)));
    }
  }
  return records;
}

std::vector<FastaRecord> read_fasta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open FASTA file '" + path + "'");
  try {
    return read_fasta(in);
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

}  // namespace oasm::io
