#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "core/instance.hpp"

namespace l1p {

namespace {

// Widest %g rendering of v that fits the 12-character numeric field.
std::string mps_number(double v) {
  char buf[32];
  for (int precision = 17; precision > 0; --precision) {
    const int len = std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (len <= 12) return buf;
  }
  throw Error(ErrorCode::InvalidArgument, "value does not fit an MPS field");
}

// Fields 1-4 of a fixed-format line: columns 2-3, 5-12, 15-22, 25-36.
void entry(std::ostream& out, const std::string& name, const std::string& row,
           double value) {
  char line[64];
  std::snprintf(line, sizeof line, "    %-8s  %-8s  %12s", name.c_str(),
                row.c_str(), mps_number(value).c_str());
  out << line << '\n';
}

std::string checked_name(const std::string& name) {
  if (name.size() > 8) {
    throw Error(ErrorCode::InvalidArgument,
                "instance too large for fixed MPS names: " + name);
  }
  return name;
}

}  // namespace

void export_lp(const BpInstance& instance, const std::filesystem::path& path) {
  instance.validate();
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());

  const Index m = instance.rows();
  const Index n = instance.cols();
  auto row_name = [](Index i) { return checked_name("R" + std::to_string(i + 1)); };

  out << "NAME          BPLP\n";
  out << "ROWS\n";
  out << " N  COST\n";
  for (Index i = 0; i < m; ++i) out << " E  " << row_name(i) << '\n';

  out << "COLUMNS\n";
  // x+ columns carry A, x- columns carry -A.
  for (int half = 0; half < 2; ++half) {
    const double sign = half == 0 ? 1.0 : -1.0;
    const char* prefix = half == 0 ? "XP" : "XM";
    for (Index j = 0; j < n; ++j) {
      const std::string col = checked_name(prefix + std::to_string(j + 1));
      entry(out, col, "COST", 1.0);
      const Vector a_j = instance.a->column(j);
      for (Index i = 0; i < m; ++i) {
        if (a_j[i] != 0.0) entry(out, col, row_name(i), sign * a_j[i]);
      }
    }
  }

  out << "RHS\n";
  for (Index i = 0; i < m; ++i) {
    if (instance.b[i] != 0.0) entry(out, "RHS", row_name(i), instance.b[i]);
  }
  out << "ENDATA\n";
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

StandardFormLp read_mps(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());

  StandardFormLp lp;
  std::string objective;
  std::map<std::string, Index> rows;
  std::map<std::string, Index> cols;
  std::vector<std::vector<std::pair<Index, double>>> entries;
  std::vector<double> cost;
  std::map<Index, double> rhs;

  enum class Section { None, Rows, Columns, Rhs, Bounds, Done } section =
      Section::None;
  std::string text;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse,
                path.string() + ":" + std::to_string(line_no) + ": " + msg);
  };
  auto parse_value = [&](const std::string& token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) fail("bad number '" + token + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + token + "'");
    }
    return 0.0;
  };

  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty() || text[0] == '*') continue;
    std::istringstream ss(text);
    std::vector<std::string> t;
    for (std::string tok; ss >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    if (text[0] != ' ') {
      if (t[0] == "NAME") continue;
      if (t[0] == "ROWS") section = Section::Rows;
      else if (t[0] == "COLUMNS") section = Section::Columns;
      else if (t[0] == "RHS") section = Section::Rhs;
      else if (t[0] == "BOUNDS") section = Section::Bounds;
      else if (t[0] == "ENDATA") section = Section::Done;
      else fail("unsupported section " + t[0]);
      continue;
    }
    switch (section) {
      case Section::Rows:
        if (t.size() != 2) fail("malformed ROWS line");
        if (t[0] == "N") {
          if (!objective.empty()) fail("more than one objective row");
          objective = t[1];
        } else if (t[0] == "E") {
          const Index id = static_cast<Index>(rows.size());
          rows.emplace(t[1], id);
          lp.row_names.push_back(t[1]);
        } else {
          fail("only E rows are supported");
        }
        break;
      case Section::Columns: {
        if (t.size() != 3 && t.size() != 5) fail("malformed COLUMNS line");
        auto [it, inserted] =
            cols.emplace(t[0], static_cast<Index>(cols.size()));
        if (inserted) {
          lp.column_names.push_back(t[0]);
          entries.emplace_back();
          cost.push_back(0.0);
        }
        for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
          const double v = parse_value(t[k + 1]);
          if (t[k] == objective) {
            cost[it->second] = v;
          } else {
            auto row = rows.find(t[k]);
            if (row == rows.end()) fail("unknown row " + t[k]);
            entries[it->second].emplace_back(row->second, v);
          }
        }
        break;
      }
      case Section::Rhs:
        if (t.size() != 3 && t.size() != 5) fail("malformed RHS line");
        for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
          auto row = rows.find(t[k]);
          if (row == rows.end()) fail("unknown row " + t[k]);
          rhs[row->second] = parse_value(t[k + 1]);
        }
        break;
      case Section::Bounds:
        fail("explicit bounds are not supported");
        break;
      default:
        fail("data outside a section");
    }
  }
  if (section != Section::Done) fail("missing ENDATA");
  if (objective.empty()) fail("no objective row");

  const Index m = static_cast<Index>(rows.size());
  const Index n = static_cast<Index>(cols.size());
  lp.a = DenseMatrix::Zero(m, n);
  lp.c = Vector::Zero(n);
  lp.b = Vector::Zero(m);
  for (Index j = 0; j < n; ++j) {
    lp.c[j] = cost[j];
    for (auto [i, v] : entries[j]) lp.a(i, j) = v;
  }
  for (auto [i, v] : rhs) lp.b[i] = v;
  return lp;
}

}  // namespace l1p
