#include "mshape/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace mshape::io {

TransitionMatrix parse_matrix(std::istream& in) {
  int m = 0;
  if (!(in >> m) || m < 2) throw Error("matrix file: first entry must be an integer m >= 2");
  Matrix p(m, m);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s)
      if (!(in >> p(r, s))) throw Error("matrix file: expected " + std::to_string(m * m) + " entries");
  std::string extra;
  if (in >> extra) throw Error("matrix file: trailing content after the matrix");
  return TransitionMatrix(std::move(p));
}

TransitionMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot read matrix file: " + path);
  return parse_matrix(in);
}

void write_matrix(std::ostream& out, const TransitionMatrix& P) {
  out << P.m() << '\n';
  for (int r = 0; r < P.m(); ++r) {
    for (int s = 0; s < P.m(); ++s) out << (s ? " " : "") << format_csv_number(P(r, s));
    out << '\n';
  }
}

std::string format_csv_number(double x) { return fmt::format("{:.17g}", x); }

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(fmt::format("{:.12g}", x));
}

std::vector<std::string> numbered_columns(const std::string& prefix, int m) {
  std::vector<std::string> cols;
  for (int i = 1; i <= m; ++i) cols.push_back(prefix + std::to_string(i));
  return cols;
}

void write_csv(std::ostream& out, const std::vector<std::string>& columns, const Matrix& rows) {
  out << "replica";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  std::string line;
  for (int i = 0; i < rows.rows(); ++i) {
    line = std::to_string(i);
    for (int j = 0; j < rows.cols(); ++j) {
      line += ',';
      line += format_csv_number(rows(i, j));
    }
    out << line << '\n';
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot read CSV file: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error("CSV file is empty: " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  t.columns.resize(t.header.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= t.header.size()) throw Error(fmt::format("{}:{}: too many fields", path, lineno));
      try {
        t.columns[col].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(fmt::format("{}:{}: not a number: {}", path, lineno, cell));
      }
      ++col;
    }
    if (col != t.header.size()) throw Error(fmt::format("{}:{}: expected {} fields", path, lineno, t.header.size()));
  }
  return t;
}

std::vector<double> csv_column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return t.columns[i];
  throw Error("CSV has no column named " + name);
}

}  // namespace mshape::io
