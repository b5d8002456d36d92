#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mshape/io.hpp"

using namespace mshape;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("mshape_test_" + name)).string();
}

}  // namespace

TEST_CASE("matrix files") {
  std::istringstream good("3\n0.4 0.6 0\n0.6 0 0.4\n0   0.4\t0.6\n");
  const TransitionMatrix P = io::parse_matrix(good);
  CHECK(P.m() == 3);
  CHECK(P(2, 2) == 0.6);

  std::ostringstream out;
  io::write_matrix(out, P);
  std::istringstream back(out.str());
  CHECK(io::parse_matrix(back).p() == P.p());

  std::istringstream short_file("2\n0.5 0.5\n0.5\n");
  CHECK_THROWS_AS(io::parse_matrix(short_file), Error);
  std::istringstream trailing("2\n0.5 0.5\n0.5 0.5\n7\n");
  CHECK_THROWS_AS(io::parse_matrix(trailing), Error);
  std::istringstream bad_rows("2\n0.5 0.6\n0.5 0.5\n");
  CHECK_THROWS_AS(io::parse_matrix(bad_rows), Error);
  CHECK_THROWS_AS(io::read_matrix_file("/nonexistent/matrix.txt"), io::FileError);
}

TEST_CASE("number formatting") {
  const double x = 0.1 + 0.2;
  CHECK(std::stod(io::format_csv_number(x)) == x);
  CHECK(io::format_csv_number(1.0) == "1");
  CHECK(io::round12(1.0 / 3) == 0.333333333333);
  CHECK(io::round12(123456.7890123456) == 123456.789012);
}

TEST_CASE("CSV round trip") {
  Matrix rows(3, 2);
  rows << 0.1, -2.5, 1e-20, 3.0, 1.0 / 3, 7.0;
  std::ostringstream out;
  io::write_csv(out, io::numbered_columns("r", 2), rows);
  const std::string text = out.str();
  CHECK(text.rfind("replica,r1,r2\n0,", 0) == 0);

  const std::string path = temp_path("roundtrip.csv");
  {
    std::ofstream f(path);
    f << text;
  }
  const auto t = io::read_csv(path);
  CHECK(t.header == std::vector<std::string>{"replica", "r1", "r2"});
  CHECK(io::csv_column(t, "replica") == std::vector<double>{0, 1, 2});
  const auto r1 = io::csv_column(t, "r1");
  for (int i = 0; i < 3; ++i) CHECK(r1[i] == rows(i, 0));
  CHECK_THROWS_AS(io::csv_column(t, "value"), Error);
  std::remove(path.c_str());

  std::ostringstream single;
  io::write_csv(single, {"value"}, Matrix::Constant(1, 1, 2.0));
  CHECK(single.str() == "replica,value\n0,2\n");
  CHECK(io::numbered_columns("l", 3) == std::vector<std::string>{"l1", "l2", "l3"});
  CHECK_THROWS_AS(io::read_csv("/nonexistent/file.csv"), io::FileError);
}
