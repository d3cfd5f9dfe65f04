#pragma once
// Hermite ladder actions on one tensor of nv^3 coefficients (any scalar type).
// All accumulate: out += scale * Op(in). `out` must not alias `in`.

#include <array>
#include <cmath>
#include <cstddef>

namespace vmb::ladder {

inline std::size_t stride_of(int nv, int comp) {
  return comp == 0 ? static_cast<std::size_t>(nv) * nv : comp == 1 ? static_cast<std::size_t>(nv) : 1;
}

inline const double* sqrt_table() {
  static const auto t = [] {
    std::array<double, 257> a{};
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::sqrt(static_cast<double>(i));
    return a;
  }();
  return t.data();
}

// Calls fn(base, m) for every line along `comp`: base is the offset of index 0 on the line,
// m enumerates the line positions through fn's own loop.
template <class Fn>
void for_lines(int nv, int comp, Fn fn) {
  const std::size_t st = stride_of(nv, comp);
  const std::size_t nh = static_cast<std::size_t>(nv) * nv * nv;
  const std::size_t block = st * nv;
  for (std::size_t outer = 0; outer < nh; outer += block)
    for (std::size_t inner = 0; inner < st; ++inner) fn(outer + inner, st);
}

// (v_i - d_i): psi_n -> sqrt(n_i+1) psi_{n+e_i}; top mode truncated
template <class T, class S>
void raise(int nv, int comp, const T* in, T* out, S scale) {
  const double* sq = sqrt_table();
  for_lines(nv, comp, [&](std::size_t b, std::size_t st) {
    for (int n = 1; n < nv; ++n) out[b + n * st] += scale * (sq[n] * in[b + (n - 1) * st]);
  });
}

// d/dv_i: psi_n -> sqrt(n_i) psi_{n-e_i}
template <class T, class S>
void lower(int nv, int comp, const T* in, T* out, S scale) {
  const double* sq = sqrt_table();
  for_lines(nv, comp, [&](std::size_t b, std::size_t st) {
    for (int n = 0; n + 1 < nv; ++n) out[b + n * st] += scale * (sq[n + 1] * in[b + (n + 1) * st]);
  });
}

// multiplication by v_i
template <class T, class S>
void vmul(int nv, int comp, const T* in, T* out, S scale) {
  raise(nv, comp, in, out, scale);
  lower(nv, comp, in, out, scale);
}

// sum_{ij} eps_{ijk} v_j d_i = v_b d_a - v_a d_b with (a,b,k) cyclic; skew and degree preserving
template <class T, class S>
void rot(int nv, int k, const T* in, T* out, S scale) {
  const int a = (k + 1) % 3, b = (k + 2) % 3;
  const std::size_t sa = stride_of(nv, a), sb = stride_of(nv, b), sk = stride_of(nv, k);
  const double* sq = sqrt_table();
  for (int nk = 0; nk < nv; ++nk) {
    const std::size_t base = nk * sk;
    for (int ma = 0; ma < nv; ++ma)
      for (int mb = 0; mb < nv; ++mb) {
        const std::size_t h = base + ma * sa + mb * sb;
        T acc{};
        if (ma + 1 < nv && mb > 0) acc += (sq[ma + 1] * sq[mb]) * in[h + sa - sb];
        if (ma > 0 && mb + 1 < nv) acc -= (sq[ma] * sq[mb + 1]) * in[h - sa + sb];
        out[h] += scale * acc;
      }
  }
}

}  // namespace vmb::ladder
