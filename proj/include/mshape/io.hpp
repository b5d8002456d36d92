#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "mshape/core.hpp"
#include "mshape/markov.hpp"

namespace mshape::io {

// Raised for unreadable inputs; the CLI maps it to exit code 1.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// First line m, then m lines of m numbers.
TransitionMatrix parse_matrix(std::istream& in);
TransitionMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const TransitionMatrix& P);

// 17 significant digits (round-trip safe).
std::string format_csv_number(double x);
// x rounded to 12 significant digits, for JSON reports.
double round12(double x);

// Header `replica,<prefix>1,...,<prefix>m`, or `replica,value` when prefix is empty and m == 1.
void write_csv(std::ostream& out, const std::vector<std::string>& columns, const Matrix& rows);
std::vector<std::string> numbered_columns(const std::string& prefix, int m);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

CsvTable read_csv(const std::string& path);
std::vector<double> csv_column(const CsvTable& t, const std::string& name);

}  // namespace mshape::io
