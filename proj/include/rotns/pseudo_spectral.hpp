#pragma once

#include <fftw3.h>

#include <cstring>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "field.hpp"

namespace rotns {

// Grid evaluation of the projected advection term P(u . grad v) with complex
// c2c transforms: synthesize u and grad v on an M^3 grid, multiply, transform
// back, then read each retained mode off against its helical frame. M is at
// least 3N+1, so quadratic products of band-N data are alias-free on the
// retained band and the result matches the triad-table evaluation to
// rounding.
class PseudoSpectral {
 public:
  PseudoSpectral(const ModeSet& ms, const HelicalBasis& hb)
      : ms_(&ms), hb_(&hb), M_(good_grid_size(3 * ms.radius + 1)) {
    const std::size_t n = std::size_t(M_) * M_ * M_;
    for (auto* buf : {&work_, &accum_, &ux_, &uy_, &uz_})
      *buf = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * n));
    bwd_work_ = fftw_plan_dft_3d(M_, M_, M_, reinterpret_cast<fftw_complex*>(work_),
                                 reinterpret_cast<fftw_complex*>(work_),
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
    fwd_accum_ = fftw_plan_dft_3d(M_, M_, M_, reinterpret_cast<fftw_complex*>(accum_),
                                  reinterpret_cast<fftw_complex*>(accum_),
                                  FFTW_FORWARD, FFTW_ESTIMATE);
    if (!bwd_work_ || !fwd_accum_)
      throw capability_error("failed to create grid transform plans");
  }

  PseudoSpectral(const PseudoSpectral&) = delete;
  PseudoSpectral& operator=(const PseudoSpectral&) = delete;

  ~PseudoSpectral() {
    fftw_destroy_plan(bwd_work_);
    fftw_destroy_plan(fwd_accum_);
    for (auto* buf : {work_, accum_, ux_, uy_, uz_}) fftw_free(buf);
  }

  int grid_size() const { return M_; }

  // out_{n,s} = sum over j of what(n)_j conj(phi_{n,s})_j for w = u . grad v
  void apply(const SpectralField& u, const SpectralField& v,
             SpectralField& out) const {
    check_same_modes(u, v);
    if (u.ms->radius != ms_->radius)
      throw dimension_error("grid apply: field does not match truncation");
    if (out.ms != u.ms)
      out = SpectralField(*u.ms);
    else
      out.set_zero();

    const std::size_t n = std::size_t(M_) * M_ * M_;
    cplx* uphys[3] = {ux_, uy_, uz_};
    for (int j = 0; j < 3; ++j) {
      synthesize_component(u, j, nullptr);
      std::memcpy(uphys[j], work_, sizeof(cplx) * n);
    }

    const double inv_n = 1.0 / double(n);
    for (int j = 0; j < 3; ++j) {  // output component of w
      std::fill(accum_, accum_ + n, cplx(0, 0));
      for (int l = 0; l < 3; ++l) {  // derivative direction
        synthesize_component(v, j, &l);
        for (std::size_t x = 0; x < n; ++x) accum_[x] += uphys[l][x] * work_[x];
      }
      fftw_execute(fwd_accum_);
      // read the ball modes back off the grid against the frame vectors
      for (std::size_t i = 0; i < ms_->count(); ++i) {
        const cplx w = accum_[grid_index(ms_->modes[i])] * inv_n;
        for (int s : {+1, -1}) {
          const std::size_t g = ModeSet::slot(i, s);
          out[g] += w * std::conj((*hb_)[g][j]);
        }
      }
    }
  }

  static int good_grid_size(int at_least) {
    for (int m = at_least;; ++m) {
      int r = m;
      for (int p : {2, 3, 5, 7})
        while (r % p == 0) r /= p;
      if (r == 1) return m;
    }
  }

 private:
  std::size_t grid_index(const vec3i& k) const {
    auto wrap = [this](int c) { return std::size_t(((c % M_) + M_) % M_); };
    return (wrap(k[0]) * M_ + wrap(k[1])) * M_ + wrap(k[2]);
  }

  // fill work_ with component j of the velocity (or of its l-derivative when
  // deriv is given) and transform to physical space
  void synthesize_component(const SpectralField& f, int j,
                            const int* deriv) const {
    const std::size_t n = std::size_t(M_) * M_ * M_;
    std::fill(work_, work_ + n, cplx(0, 0));
    const cplx two_pi_i(0, 6.283185307179586476925287);
    for (std::size_t i = 0; i < ms_->count(); ++i) {
      cplx c = f[ModeSet::slot(i, +1)] * (*hb_).at(i, +1)[j] +
               f[ModeSet::slot(i, -1)] * (*hb_).at(i, -1)[j];
      if (deriv) c *= two_pi_i * double(ms_->modes[i][*deriv]);
      work_[grid_index(ms_->modes[i])] = c;
    }
    fftw_execute(bwd_work_);
  }

  const ModeSet* ms_;
  const HelicalBasis* hb_;
  int M_;
  cplx *work_, *accum_, *ux_, *uy_, *uz_;
  fftw_plan bwd_work_, fwd_accum_;
};

}  // namespace rotns
