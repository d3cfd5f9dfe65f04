#include "vmb/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace vmb::kern {
namespace {

void axpy_s(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy2_s(std::size_t n, double a0, double a1, const double* x, double* y) {
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    y[i] += a0 * x[i];
    y[i + 1] += a1 * x[i + 1];
  }
}

void vmul_s(std::size_t n, const double* a, const double* b, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void cmul_s(std::size_t n, const double* a, const double* b, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    out[2 * i] = ar * br - ai * bi;
    out[2 * i + 1] = ar * bi + ai * br;
  }
}

double dot_s(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

Isa detect() {
  if (const char* env = std::getenv("VMB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && available(Isa::avx2)) return Isa::avx2;
    if (std::strcmp(env, "neon") == 0 && available(Isa::neon)) return Isa::neon;
  }
  if (available(Isa::avx2)) return Isa::avx2;
  if (available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const Table* g_active = nullptr;

}  // namespace

namespace detail {
const Table scalar_table{axpy_s, axpy2_s, vmul_s, cmul_s, dot_s, Isa::scalar};
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table(Isa isa) {
  if (!available(isa)) throw std::runtime_error("instruction set not available: " + name(isa));
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return detail::avx2_table;
#endif
#if defined(__aarch64__)
    case Isa::neon:
      return detail::neon_table;
#endif
    default:
      return detail::scalar_table;
  }
}

const Table& active() {
  if (!g_active) g_active = &table(detect());
  return *g_active;
}

void force(Isa isa) { g_active = &table(isa); }

std::string name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace vmb::kern
