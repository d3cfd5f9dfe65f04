#pragma once
// Inner loops shared by the Hermite tensor transforms and collocation products.
// Scalar reference versions live in kernels.cpp; AVX2 and NEON variants are
// selected once at startup (override with VMB_SIMD=scalar|avx2|neon).

#include <cstddef>
#include <string>

namespace vmb::kern {

enum class Isa { scalar, avx2, neon };

struct Table {
  // y += a * x
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  // y[2i] += a0 * x[2i], y[2i+1] += a1 * x[2i+1]   (n is the even real length)
  void (*axpy2)(std::size_t n, double a0, double a1, const double* x, double* y);
  // out = a * b
  void (*vmul)(std::size_t n, const double* a, const double* b, double* out);
  // out = a * b for interleaved complex arrays of n elements
  void (*cmul)(std::size_t n, const double* a, const double* b, double* out);
  double (*dot)(std::size_t n, const double* x, const double* y);
  Isa isa;
};

const Table& table(Isa isa);
bool available(Isa isa);
const Table& active();
void force(Isa isa);
std::string name(Isa isa);

namespace detail {
extern const Table scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const Table avx2_table;
#endif
#if defined(__aarch64__)
extern const Table neon_table;
#endif
}  // namespace detail

}  // namespace vmb::kern
