#include "spopt/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "spopt/errors.hpp"

namespace spopt {

namespace {

enum class Layout { array, coordinate };
enum class Symmetry { general, symmetric, skew };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string at_line(long line) { return " (line " + std::to_string(line) + ")"; }

// Reads lines while skipping comments and blank lines; tracks line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    while (std::getline(in_, out)) {
      ++line_;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      const auto first = out.find_first_not_of(" \t");
      if (first == std::string::npos || out[first] == '%') continue;
      return true;
    }
    return false;
  }

  long line() const { return line_; }
  void set_line(long line) { line_ = line; }

 private:
  std::istream& in_;
  long line_ = 0;
};

long long parse_count(const std::string& token, long line, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(std::string("matrix market: ") + what + " overflows" + at_line(line), line);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(std::string("matrix market: invalid ") + what + " '" + token + "'" +
                         at_line(line),
                     line);
  return v;
}

double parse_value(const std::string& token, long line) {
  // strtod accepts the exponent forms Matrix Market writers emit.
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty())
    throw ParseError("matrix market: invalid value '" + token + "'" + at_line(line), line);
  if (!std::isfinite(v))
    throw ParseError("matrix market: non-finite value" + at_line(line), line);
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("matrix market: empty input" + at_line(1), 1);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const auto head = split(header);
  if (head.size() != 5 || head[0] != "%%MatrixMarket" || lower(head[1]) != "matrix")
    throw ParseError("matrix market: header must be '%%MatrixMarket matrix <layout> <field> "
                     "<symmetry>'" + at_line(1),
                     1);

  Layout layout{};
  const std::string fmt = lower(head[2]);
  if (fmt == "array") layout = Layout::array;
  else if (fmt == "coordinate") layout = Layout::coordinate;
  else throw ParseError("matrix market: unknown layout '" + head[2] + "'" + at_line(1), 1);

  const std::string field = lower(head[3]);
  if (field != "real" && field != "integer")
    throw ParseError("matrix market: field '" + head[3] + "' is not real" + at_line(1), 1);

  Symmetry sym{};
  const std::string symmetry = lower(head[4]);
  if (symmetry == "general") sym = Symmetry::general;
  else if (symmetry == "symmetric") sym = Symmetry::symmetric;
  else if (symmetry == "skew-symmetric") sym = Symmetry::skew;
  else throw ParseError("matrix market: unsupported symmetry '" + head[4] + "'" + at_line(1), 1);

  LineReader reader(in);
  reader.set_line(1);
  std::string line;
  if (!reader.next(line))
    throw ParseError("matrix market: missing size line" + at_line(reader.line() + 1),
                     reader.line() + 1);
  const auto size = split(line);
  const std::size_t want_tokens = layout == Layout::array ? 2 : 3;
  if (size.size() != want_tokens)
    throw ParseError("matrix market: size line needs " + std::to_string(want_tokens) +
                         " integers" + at_line(reader.line()),
                     reader.line());
  const long long rows = parse_count(size[0], reader.line(), "row count");
  const long long cols = parse_count(size[1], reader.line(), "column count");
  if (rows <= 0 || cols <= 0)
    throw ParseError("matrix market: dimensions must be positive" + at_line(reader.line()),
                     reader.line());
  if (rows > kMaxMatrixEntries || cols > kMaxMatrixEntries || rows * cols > kMaxMatrixEntries)
    throw ParseError("matrix market: dimensions too large" + at_line(reader.line()),
                     reader.line());
  if (sym != Symmetry::general && rows != cols)
    throw ParseError("matrix market: symmetric storage needs a square matrix" +
                         at_line(reader.line()),
                     reader.line());

  Matrix m = Matrix::Zero(rows, cols);
  const double mirror = sym == Symmetry::skew ? -1.0 : 1.0;

  if (layout == Layout::array) {
    // Column-major; symmetric storage lists the lower triangle only
    // (strictly lower for skew-symmetric).
    std::vector<std::pair<long long, long long>> slots;
    for (long long j = 0; j < cols; ++j) {
      long long first = 0;
      if (sym == Symmetry::symmetric) first = j;
      if (sym == Symmetry::skew) first = j + 1;
      for (long long i = first; i < rows; ++i) slots.emplace_back(i, j);
    }
    std::size_t filled = 0;
    while (filled < slots.size()) {
      if (!reader.next(line))
        throw ParseError("matrix market: expected " + std::to_string(slots.size()) +
                             " entries, found " + std::to_string(filled) +
                             at_line(reader.line() + 1),
                         reader.line() + 1);
      for (const auto& tok : split(line)) {
        if (filled == slots.size())
          throw ParseError("matrix market: more entries than expected" + at_line(reader.line()),
                           reader.line());
        const auto [i, j] = slots[filled++];
        m(i, j) = parse_value(tok, reader.line());
        if (sym != Symmetry::general && i != j) m(j, i) = mirror * m(i, j);
      }
    }
  } else {
    const long long nnz = parse_count(size[2], reader.line(), "entry count");
    if (nnz < 0 || nnz > rows * cols)
      throw ParseError("matrix market: entry count out of range" + at_line(reader.line()),
                       reader.line());
    for (long long e = 0; e < nnz; ++e) {
      if (!reader.next(line))
        throw ParseError("matrix market: expected " + std::to_string(nnz) + " entries, found " +
                             std::to_string(e) + at_line(reader.line() + 1),
                         reader.line() + 1);
      const auto tok = split(line);
      if (tok.size() != 3)
        throw ParseError("matrix market: coordinate entry needs 'row col value'" +
                             at_line(reader.line()),
                         reader.line());
      const long long i = parse_count(tok[0], reader.line(), "row index") - 1;
      const long long j = parse_count(tok[1], reader.line(), "column index") - 1;
      if (i < 0 || i >= rows || j < 0 || j >= cols)
        throw ParseError("matrix market: index out of range" + at_line(reader.line()),
                         reader.line());
      m(i, j) = parse_value(tok[2], reader.line());
      if (sym != Symmetry::general && i != j) m(j, i) = mirror * m(i, j);
    }
  }
  if (reader.next(line))
    throw ParseError("matrix market: trailing data after the last entry" + at_line(reader.line()),
                     reader.line());
  return m;
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("matrix market: cannot open '" + path + "'", 0);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g\n", m(i, j));
      out << buf;
    }
  }
}

void write_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_matrix(out, m);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace spopt
