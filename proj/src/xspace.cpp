#include "vmb/xspace.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace vmb {

namespace {
// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct XSpace::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

XSpace::XSpace(const SpectralGrid& g) : grid_(g), mp_(3 * g.nx / 2) {
  npts_ = 1;
  for (int i = 0; i < g.dx; ++i) npts_ *= static_cast<std::size_t>(mp_);
  pad_index_.resize(g.nk());
  for (std::size_t k = 0; k < g.nk(); ++k) {
    const auto m = g.mode_index(k);
    std::size_t idx = 0;
    for (int i = 0; i < g.dx; ++i) idx = idx * mp_ + static_cast<std::size_t>((m[i] % mp_ + mp_) % mp_);
    pad_index_[k] = idx;
  }
}

XSpace::~XSpace() = default;

XSpace::Plans& XSpace::plans(std::size_t count) {
  auto& slot = plans_[count];
  if (!slot) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    slot = std::make_unique<Plans>();
    int n[3] = {mp_, mp_, mp_};
    std::vector<cplx> tmp(npts_ * count);
    auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
    const int howmany = static_cast<int>(count);
    const int stride = static_cast<int>(count);
    slot->fwd = fftw_plan_many_dft(grid_.dx, n, howmany, p, nullptr, stride, 1, p, nullptr, stride, 1, FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    slot->bwd = fftw_plan_many_dft(grid_.dx, n, howmany, p, nullptr, stride, 1, p, nullptr, stride, 1, FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  return *slot;
}

void XSpace::to_physical(const cplx* spec, std::size_t count, cplx* phys) {
  std::memset(static_cast<void*>(phys), 0, sizeof(cplx) * npts_ * count);
  for (std::size_t k = 0; k < grid_.nk(); ++k) {
    if (!grid_.active(k)) continue;
    std::memcpy(static_cast<void*>(phys + pad_index_[k] * count), spec + k * count, sizeof(cplx) * count);
  }
  auto* p = reinterpret_cast<fftw_complex*>(phys);
  fftw_execute_dft(plans(count).bwd, p, p);
}

void XSpace::to_spectral(cplx* phys, std::size_t count, cplx* spec) {
  auto* p = reinterpret_cast<fftw_complex*>(phys);
  fftw_execute_dft(plans(count).fwd, p, p);
  const double scale = 1.0 / static_cast<double>(npts_);
  for (std::size_t k = 0; k < grid_.nk(); ++k) {
    cplx* dst = spec + k * count;
    if (!grid_.active(k)) {
      std::memset(static_cast<void*>(dst), 0, sizeof(cplx) * count);
      continue;
    }
    const cplx* src = phys + pad_index_[k] * count;
    for (std::size_t c = 0; c < count; ++c) dst[c] = src[c] * scale;
  }
}

}  // namespace vmb
