#pragma once

#include <string>
#include <string_view>

#include "spinhier/complex_matrix.hpp"
#include "spinhier/errors.hpp"

namespace spinhier::cli {

// Malformed matrix text; carries the 1-based line number when known.
class MatrixFileError : public DomainError {
 public:
  MatrixFileError(const std::string& what, std::size_t line)
      : DomainError(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Parses one entry: "3", "-0.5", "2i", "-i", "1.5-2e-3i", "+1+i".
Complex parse_complex(std::string_view token);

// One matrix row per line, entries separated by whitespace. Blank lines and
// lines starting with '#' are ignored. The matrix must be square.
CMatrix parse_matrix_text(std::string_view text);
CMatrix read_matrix_file(const std::string& path);

}  // namespace spinhier::cli
