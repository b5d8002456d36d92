#pragma once

#include <cstddef>
#include <string_view>

// Scan kernels behind the path builders and the staircase DP.
// Each has a scalar reference and an AVX2 variant; the active table is
// picked once at startup from the CPU flags (override: MSHAPE_SIMD=scalar).
namespace mshape::kernels {

struct Table {
  std::string_view name;
  // out[k] = start + in[0] + ... + in[k]
  void (*cumsum)(const double* in, double* out, std::size_t n, double start);
  // out[k] = max(in[0..k])
  void (*prefix_max)(const double* in, double* out, std::size_t n);
  // out[k] = g[k] + max(prev[0..k])
  void (*add_prefix_max)(const double* g, const double* prev, double* out, std::size_t n);
  // out[k] = a[k] - b[k]
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  // max over i <= j of x[j] - x[i]
  double (*max_drawup)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);
};

const Table& scalar();
// nullptr when the CPU (or the compiler) lacks AVX2.
const Table* avx2();
const Table& active();

inline void cumsum(const double* in, double* out, std::size_t n, double start = 0.0) {
  active().cumsum(in, out, n, start);
}
inline void prefix_max(const double* in, double* out, std::size_t n) { active().prefix_max(in, out, n); }
inline void add_prefix_max(const double* g, const double* prev, double* out, std::size_t n) {
  active().add_prefix_max(g, prev, out, n);
}
inline void sub(const double* a, const double* b, double* out, std::size_t n) { active().sub(a, b, out, n); }
inline double max_drawup(const double* x, std::size_t n) { return active().max_drawup(x, n); }
inline double max(const double* x, std::size_t n) { return active().max(x, n); }

}  // namespace mshape::kernels
