#pragma once
// Padded (3/2-rule) transforms between Fourier coefficients and torus grid values.
// Spectral layout: [mode][count]; physical layout: [point][count].

#include <map>
#include <memory>
#include <vector>

#include "vmb/phase_space.hpp"

namespace vmb {

class XSpace {
 public:
  explicit XSpace(const SpectralGrid& g);
  ~XSpace();
  XSpace(const XSpace&) = delete;
  XSpace& operator=(const XSpace&) = delete;

  const SpectralGrid& grid() const { return grid_; }
  int padded_n() const { return mp_; }
  std::size_t npts() const { return npts_; }

  void to_physical(const cplx* spec, std::size_t count, cplx* phys);
  // phys is overwritten; output truncated to the grid's active modes
  void to_spectral(cplx* phys, std::size_t count, cplx* spec);

 private:
  struct Plans;
  Plans& plans(std::size_t count);
  SpectralGrid grid_;
  int mp_;
  std::size_t npts_;
  std::vector<std::size_t> pad_index_;  // spectral mode -> padded point index
  std::map<std::size_t, std::unique_ptr<Plans>> plans_;
};

}  // namespace vmb
