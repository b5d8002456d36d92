#include "mshape/kernels.hpp"

#include <algorithm>
#include <limits>

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#include <immintrin.h>
#define MSHAPE_HAVE_AVX2 1
#endif

namespace mshape::kernels {

#ifdef MSHAPE_HAVE_AVX2
namespace {

#define AVX2 __attribute__((target("avx2")))

// In-register inclusive scans over the 4 lanes.
AVX2 inline __m256d scan_add(__m256d x) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d t = _mm256_permute4x64_pd(x, _MM_SHUFFLE(2, 1, 0, 3));
  x = _mm256_add_pd(x, _mm256_blend_pd(t, zero, 0b0001));
  t = _mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 3, 2));
  return _mm256_add_pd(x, _mm256_blend_pd(t, zero, 0b0011));
}

AVX2 inline __m256d scan_max(__m256d x) {
  const __m256d ninf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d t = _mm256_permute4x64_pd(x, _MM_SHUFFLE(2, 1, 0, 3));
  x = _mm256_max_pd(x, _mm256_blend_pd(t, ninf, 0b0001));
  t = _mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 3, 2));
  return _mm256_max_pd(x, _mm256_blend_pd(t, ninf, 0b0011));
}

AVX2 inline __m256d scan_min(__m256d x) {
  const __m256d pinf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d t = _mm256_permute4x64_pd(x, _MM_SHUFFLE(2, 1, 0, 3));
  x = _mm256_min_pd(x, _mm256_blend_pd(t, pinf, 0b0001));
  t = _mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 3, 2));
  return _mm256_min_pd(x, _mm256_blend_pd(t, pinf, 0b0011));
}

AVX2 inline __m256d last_lane(__m256d x) { return _mm256_permute4x64_pd(x, 0xFF); }

AVX2 void cumsum_avx2(const double* in, double* out, std::size_t n, double start) {
  __m256d carry = _mm256_set1_pd(start);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_add_pd(scan_add(_mm256_loadu_pd(in + i)), carry);
    _mm256_storeu_pd(out + i, x);
    carry = last_lane(x);
  }
  double acc = _mm256_cvtsd_f64(carry);
  for (; i < n; ++i) {
    acc += in[i];
    out[i] = acc;
  }
}

AVX2 void prefix_max_avx2(const double* in, double* out, std::size_t n) {
  __m256d carry = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_max_pd(scan_max(_mm256_loadu_pd(in + i)), carry);
    _mm256_storeu_pd(out + i, x);
    carry = last_lane(x);
  }
  double best = _mm256_cvtsd_f64(carry);
  for (; i < n; ++i) {
    best = std::max(best, in[i]);
    out[i] = best;
  }
}

AVX2 void add_prefix_max_avx2(const double* g, const double* prev, double* out, std::size_t n) {
  __m256d carry = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_max_pd(scan_max(_mm256_loadu_pd(prev + i)), carry);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(g + i), x));
    carry = last_lane(x);
  }
  double best = _mm256_cvtsd_f64(carry);
  for (; i < n; ++i) {
    best = std::max(best, prev[i]);
    out[i] = g[i] + best;
  }
}

AVX2 void sub_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

AVX2 double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

AVX2 double max_drawup_avx2(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  __m256d lo = _mm256_set1_pd(x[0]);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d run = _mm256_min_pd(scan_min(v), lo);
    best = _mm256_max_pd(best, _mm256_sub_pd(v, run));
    lo = last_lane(run);
  }
  double low = _mm256_cvtsd_f64(lo);
  double b = hmax(best);
  for (; i < n; ++i) {
    low = std::min(low, x[i]);
    b = std::max(b, x[i] - low);
  }
  return b;
}

AVX2 double max_avx2(const double* x, std::size_t n) {
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) best = _mm256_max_pd(best, _mm256_loadu_pd(x + i));
  double b = hmax(best);
  for (; i < n; ++i) b = std::max(b, x[i]);
  return b;
}

#undef AVX2

const Table kAvx2{"avx2", cumsum_avx2, prefix_max_avx2, add_prefix_max_avx2, sub_avx2, max_drawup_avx2, max_avx2};

}  // namespace

const Table* avx2() {
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? &kAvx2 : nullptr;
}

#else

const Table* avx2() { return nullptr; }

#endif

}  // namespace mshape::kernels
