#include "mshape/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string_view>

namespace mshape::kernels {
namespace {

void cumsum_scalar(const double* in, double* out, std::size_t n, double start) {
  double acc = start;
  for (std::size_t i = 0; i < n; ++i) {
    acc += in[i];
    out[i] = acc;
  }
}

void prefix_max_scalar(const double* in, double* out, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::max(best, in[i]);
    out[i] = best;
  }
}

void add_prefix_max_scalar(const double* g, const double* prev, double* out, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::max(best, prev[i]);
    out[i] = g[i] + best;
  }
}

void sub_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

double max_drawup_scalar(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  double lo = x[0];
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, x[i]);
    best = std::max(best, x[i] - lo);
  }
  return best;
}

double max_scalar(const double* x, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, x[i]);
  return best;
}

const Table kScalar{"scalar",          cumsum_scalar,     prefix_max_scalar, add_prefix_max_scalar,
                    sub_scalar,        max_drawup_scalar, max_scalar};

const Table& pick() {
  const char* env = std::getenv("MSHAPE_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") return kScalar;
  if (const Table* t = avx2()) return *t;
  return kScalar;
}

}  // namespace

const Table& scalar() { return kScalar; }

const Table& active() {
  static const Table& table = pick();
  return table;
}

}  // namespace mshape::kernels
