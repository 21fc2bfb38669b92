#include "core/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace l1p::mm {

namespace {

struct Header {
  bool coordinate = false;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& message) {
  throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(line) +
                                    ": " + message);
}

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) {
      throw Error(ErrorCode::Io, "cannot open " + path.string());
    }
  }

  Header header() {
    std::string text;
    if (!std::getline(in_, text)) fail(path_, 1, "empty file");
    line_ = 1;
    std::istringstream ss(text);
    std::string banner, object, format, field, symmetry;
    ss >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
      fail(path_, line_, "missing '%%MatrixMarket matrix' banner");
    }
    Header h;
    format = lower(format);
    if (format == "coordinate") {
      h.coordinate = true;
    } else if (format != "array") {
      fail(path_, line_, "unsupported format '" + format + "'");
    }
    field = lower(field);
    if (field != "real" && field != "integer" && field != "double") {
      fail(path_, line_, "unsupported field '" + field + "'");
    }
    if (lower(symmetry) != "general") {
      fail(path_, line_, "only general symmetry is supported");
    }
    return h;
  }

  // Next non-comment, non-blank line split into tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      auto first = text.find_first_not_of(" \t\r");
      if (first == std::string::npos || text[first] == '%') continue;
      tokens.clear();
      std::istringstream ss(text);
      for (std::string t; ss >> t;) tokens.push_back(t);
      return true;
    }
    return false;
  }

  double number(const std::string& token) const {
    double v = 0.0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      fail(path_, line_, "bad number '" + token + "'");
    }
    return v;
  }

  long integer(const std::string& token) const {
    long v = 0;
    const char* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      fail(path_, line_, "bad integer '" + token + "'");
    }
    return v;
  }

  std::size_t line() const noexcept { return line_; }
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_ = 0;
};

struct Entry {
  long row;
  long col;
  double value;
  std::size_t line;
};

Matrix read_coordinate(Reader& reader) {
  std::vector<std::string> t;
  if (!reader.next(t) || t.size() != 3) {
    fail(reader.path(), reader.line(), "expected 'rows cols nnz'");
  }
  const long rows = reader.integer(t[0]);
  const long cols = reader.integer(t[1]);
  const long nnz = reader.integer(t[2]);
  if (rows < 0 || cols < 0 || nnz < 0) {
    fail(reader.path(), reader.line(), "negative size");
  }
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  while (reader.next(t)) {
    if (t.size() != 3) fail(reader.path(), reader.line(), "expected 'i j v'");
    Entry e{reader.integer(t[0]), reader.integer(t[1]), reader.number(t[2]),
            reader.line()};
    if (e.row < 1 || e.row > rows || e.col < 1 || e.col > cols) {
      fail(reader.path(), e.line, "index out of range");
    }
    entries.push_back(e);
  }
  if (static_cast<long>(entries.size()) != nnz) {
    fail(reader.path(), reader.line(),
         "header declares " + std::to_string(nnz) + " entries, found " +
             std::to_string(entries.size()));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row &&
        entries[k].col == entries[k - 1].col) {
      const auto [first, second] =
          std::minmax(entries[k - 1].line, entries[k].line);
      fail(reader.path(), second,
           "duplicate entry (" + std::to_string(entries[k].row) + ", " +
               std::to_string(entries[k].col) + "), first seen on line " +
               std::to_string(first));
    }
  }
  std::vector<Eigen::Triplet<double, int>> triplets;
  for (const auto& e : entries) {
    if (e.value != 0.0) {
      triplets.emplace_back(static_cast<int>(e.row - 1),
                            static_cast<int>(e.col - 1), e.value);
    }
  }
  SparseMatrixCsc s(rows, cols);
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.makeCompressed();
  return Matrix(std::move(s));
}

Matrix read_array(Reader& reader) {
  std::vector<std::string> t;
  if (!reader.next(t) || t.size() != 2) {
    fail(reader.path(), reader.line(), "expected 'rows cols'");
  }
  const long rows = reader.integer(t[0]);
  const long cols = reader.integer(t[1]);
  if (rows < 0 || cols < 0) fail(reader.path(), reader.line(), "negative size");
  DenseMatrix a(rows, cols);
  const long total = rows * cols;
  long count = 0;
  while (reader.next(t)) {
    for (const auto& token : t) {
      if (count >= total) {
        fail(reader.path(), reader.line(), "more values than rows*cols");
      }
      a.data()[count++] = reader.number(token);
    }
  }
  if (count != total) {
    fail(reader.path(), reader.line(),
         "expected " + std::to_string(total) + " values, found " +
             std::to_string(count));
  }
  return Matrix(std::move(a));
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace

Matrix read_matrix(const std::filesystem::path& path) {
  Reader reader(path);
  const Header h = reader.header();
  return h.coordinate ? read_coordinate(reader) : read_array(reader);
}

Vector read_vector(const std::filesystem::path& path) {
  const Matrix m = read_matrix(path);
  if (m.cols() != 1) {
    throw Error(ErrorCode::DimensionMismatch,
                path.string() + ": expected a single column, found " +
                    std::to_string(m.cols()));
  }
  return m.column(0);
}

void write_array(const DenseMatrix& a, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Index k = 0; k < a.size(); ++k) out << fmt(a.data()[k]) << '\n';
  close_checked(out, path);
}

void write_coordinate(const SparseMatrixCsc& a,
                      const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (Index j = 0; j < a.outerSize(); ++j) {
    for (SparseMatrixCsc::InnerIterator it(a, j); it; ++it) {
      out << it.row() + 1 << ' ' << j + 1 << ' ' << fmt(it.value()) << '\n';
    }
  }
  close_checked(out, path);
}

void write_vector(const Vector& v, const std::filesystem::path& path) {
  write_array(DenseMatrix(v), path);
}

void write_matrix(const Matrix& a, const std::filesystem::path& path) {
  if (a.is_sparse()) {
    write_coordinate(a.sparse(), path);
  } else {
    write_array(a.dense(), path);
  }
}

}  // namespace l1p::mm
