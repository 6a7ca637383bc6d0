// SPDX-License-Identifier: Apache-2.0
//
// Dense double-precision kernels used by the simplex tableau, the neural
// network evaluator and the interval propagator. A scalar reference
// implementation always exists; on x86-64 an AVX2/FMA variant is selected
// at runtime when the CPU supports it. The two variants are equivalence
// tested against each other (they may differ by rounding only).

#pragma once

#include <cstddef>
#include <string>

namespace reluplan::kernels {

enum class Backend { Scalar, Avx2 };

/// Backend currently used by the dispatching entry points.
Backend active_backend();

/// True if `b` can run on this machine.
bool backend_available(Backend b);

/// Force a backend (throws reluplan::Error if unavailable). Intended for
/// tests and benchmarking; not thread safe.
void set_backend(Backend b);

std::string backend_name(Backend b);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

// x[i] *= a
void scale(double* x, double a, std::size_t n);

struct IntervalSum {
  double lo = 0.0;
  double hi = 0.0;
};

// Accumulates sum_i [min(w*lo, w*hi), max(w*lo, w*hi)], the sign-oriented
// interval product used by forward reachability.
IntervalSum interval_dot(const double* w, const double* lo, const double* hi,
                         std::size_t n);

namespace detail {

void axpy_scalar(double a, const double* x, double* y, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
void scale_scalar(double* x, double a, std::size_t n);
IntervalSum interval_dot_scalar(const double* w, const double* lo,
                                const double* hi, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);
void scale_avx2(double* x, double a, std::size_t n);
IntervalSum interval_dot_avx2(const double* w, const double* lo,
                              const double* hi, std::size_t n);
#endif

}  // namespace detail

}  // namespace reluplan::kernels
