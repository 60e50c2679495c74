#include "spinhier/cli/matrix_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace spinhier::cli {
namespace {

double parse_real(std::string_view s, std::string_view token) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(v)) {
    throw MatrixFileError("bad complex entry '" + std::string(token) + "'", 0);
  }
  return v;
}

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw MatrixFileError("empty entry", 0);
  if (token.back() != 'i') return {parse_real(token, token), 0.0};

  const std::string_view body = token.substr(0, token.size() - 1);
  // Split before the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const double re = split == std::string_view::npos
                        ? 0.0
                        : parse_real(body.substr(0, split), token);
  const std::string_view im_text =
      split == std::string_view::npos ? body : body.substr(split);
  double im;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_text, token);
  }
  return {re, im};
}

CMatrix parse_matrix_text(std::string_view text) {
  std::vector<Complex> entries;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tok;
    std::size_t count = 0;
    while (fields >> tok) {
      if (count == 0 && tok.front() == '#') break;
      try {
        entries.push_back(parse_complex(tok));
      } catch (const MatrixFileError& e) {
        throw MatrixFileError(e.what(), line_no);
      }
      ++count;
    }
    if (count == 0) continue;
    if (rows == 0) cols = count;
    if (count != cols) {
      throw MatrixFileError("row has " + std::to_string(count) +
                                " entries, expected " + std::to_string(cols),
                            line_no);
    }
    ++rows;
  }
  if (rows == 0) throw MatrixFileError("no matrix rows found", 0);
  if (rows != cols) {
    throw MatrixFileError("matrix is " + std::to_string(rows) + "x" +
                              std::to_string(cols) + ", expected square",
                          0);
  }
  return CMatrix(rows, cols, std::move(entries));
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixFileError("cannot open '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

}  // namespace spinhier::cli
