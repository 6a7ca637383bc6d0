// SPDX-License-Identifier: Apache-2.0

#include "reluplan/kernels.hpp"

#include <algorithm>

#include "reluplan/errors.hpp"

namespace reluplan::kernels {

namespace detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void scale_scalar(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

IntervalSum interval_dot_scalar(const double* w, const double* lo,
                                const double* hi, std::size_t n) {
  IntervalSum acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = w[i] * lo[i];
    const double b = w[i] * hi[i];
    acc.lo += std::min(a, b);
    acc.hi += std::max(a, b);
  }
  return acc;
}

}  // namespace detail

namespace {

struct Dispatch {
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  IntervalSum (*interval_dot)(const double*, const double*, const double*,
                              std::size_t);
  Backend backend;
};

constexpr Dispatch kScalar{detail::axpy_scalar, detail::dot_scalar,
                           detail::scale_scalar, detail::interval_dot_scalar,
                           Backend::Scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Dispatch kAvx2{detail::axpy_avx2, detail::dot_avx2,
                         detail::scale_avx2, detail::interval_dot_avx2,
                         Backend::Avx2};
#endif

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Dispatch pick_default() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return kAvx2;
#endif
  return kScalar;
}

Dispatch g_dispatch = pick_default();

}  // namespace

Backend active_backend() { return g_dispatch.backend; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return avx2_supported();
  }
  return false;
}

void set_backend(Backend b) {
  if (!backend_available(b))
    throw Error("kernel backend not available on this machine: " +
                backend_name(b));
  switch (b) {
    case Backend::Scalar:
      g_dispatch = kScalar;
      break;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      g_dispatch = kAvx2;
#endif
      break;
  }
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "?";
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  g_dispatch.axpy(a, x, y, n);
}

double dot(const double* x, const double* y, std::size_t n) {
  return g_dispatch.dot(x, y, n);
}

void scale(double* x, double a, std::size_t n) { g_dispatch.scale(x, a, n); }

IntervalSum interval_dot(const double* w, const double* lo, const double* hi,
                         std::size_t n) {
  return g_dispatch.interval_dot(w, lo, hi, n);
}

}  // namespace reluplan::kernels
