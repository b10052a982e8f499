#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"

namespace rotns {

using cplx = std::complex<double>;

// Coefficient vector u_{k,sigma} over the slots of a ModeSet. The field is a
// divergence-free velocity once each slot is paired with its helical frame
// vector; everything here treats it as plain complex data.
struct SpectralField {
  const ModeSet* ms = nullptr;
  std::vector<cplx> a;

  SpectralField() = default;
  explicit SpectralField(const ModeSet& m) : ms(&m), a(m.slot_count(), cplx(0, 0)) {}

  std::size_t size() const { return a.size(); }
  cplx& operator[](std::size_t g) { return a[g]; }
  const cplx& operator[](std::size_t g) const { return a[g]; }

  SpectralField& operator+=(const SpectralField& o) {
    for (std::size_t g = 0; g < a.size(); ++g) a[g] += o.a[g];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    for (std::size_t g = 0; g < a.size(); ++g) a[g] -= o.a[g];
    return *this;
  }
  SpectralField& operator*=(double c) {
    for (auto& x : a) x *= c;
    return *this;
  }
  void set_zero() { std::fill(a.begin(), a.end(), cplx(0, 0)); }
};

inline void check_same_modes(const SpectralField& u, const SpectralField& v) {
  if (!u.ms || !v.ms || u.ms->radius != v.ms->radius || u.a.size() != v.a.size())
    throw dimension_error("fields live on different truncations");
}

// sum over slots of u * conj(v)
inline cplx inner_product(const SpectralField& u, const SpectralField& v) {
  check_same_modes(u, v);
  cplx s(0, 0);
  for (std::size_t g = 0; g < u.a.size(); ++g) s += u.a[g] * std::conj(v.a[g]);
  return s;
}

inline double l2_norm(const SpectralField& u) {
  double s = 0;
  for (const auto& x : u.a) s += std::norm(x);
  return std::sqrt(s);
}

// ( sum |k|^(2s) |u_{k,sigma}|^2 )^(1/2); no 2*pi factors baked in
inline double sobolev_norm(const SpectralField& u, double s) {
  if (!u.ms) throw dimension_error("sobolev_norm on empty field");
  double acc = 0;
  for (std::size_t g = 0; g < u.a.size(); ++g) {
    const double kn = u.ms->knorm[ModeSet::slot_mode(g)];
    acc += std::pow(kn, 2.0 * s) * std::norm(u.a[g]);
  }
  return std::sqrt(acc);
}

// || grad u ||_{L^2} for u with amplitude convention e^{2*pi*i k.x}
inline double gradient_norm(const SpectralField& u) {
  constexpr double two_pi = 6.283185307179586476925287;
  return two_pi * sobolev_norm(u, 1.0);
}

// largest violation of u_{-k,sigma} = conj(u_{k,sigma})
inline double reality_defect(const SpectralField& u) {
  if (!u.ms) throw dimension_error("reality_defect on empty field");
  double worst = 0;
  for (std::size_t i = 0; i < u.ms->count(); ++i) {
    const int j = u.ms->neg[i];
    for (int s : {+1, -1}) {
      const cplx d = u.a[ModeSet::slot(j, s)] -
                     std::conj(u.a[ModeSet::slot(i, s)]);
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

inline void symmetrize(SpectralField& u) {
  for (std::size_t i = 0; i < u.ms->count(); ++i) {
    const int j = u.ms->neg[i];
    if ((int)i > j) continue;
    for (int s : {+1, -1}) {
      const std::size_t gi = ModeSet::slot(i, s), gj = ModeSet::slot(j, s);
      const cplx avg = 0.5 * (u.a[gi] + std::conj(u.a[gj]));
      u.a[gi] = avg;
      u.a[gj] = std::conj(avg);
    }
  }
}

// Deterministic normal deviates: mt19937_64 bits pushed through Box-Muller by
// hand, so streams are identical across standard libraries.
struct GaussianStream {
  std::mt19937_64 eng;
  explicit GaussianStream(std::uint64_t seed) : eng(seed) {}
  double uniform01() { return (double(eng() >> 11) + 0.5) * 0x1.0p-53; }
  double operator()() {
    const double u1 = uniform01(), u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }
};

// Random real-symmetric field with coefficient scale |k|^(-decay). Only the
// lexicographically positive half is drawn; the other half is pinned by
// conjugation, so the velocity it represents is real.
inline SpectralField random_real_field(const ModeSet& ms, std::uint64_t seed,
                                       double decay = 2.0) {
  SpectralField u(ms);
  GaussianStream g(seed);
  for (std::size_t i = 0; i < ms.count(); ++i) {
    if (!lex_positive(ms.modes[i])) continue;
    const double amp = std::pow(ms.knorm[i], -decay);
    const int j = ms.neg[i];
    for (int s : {+1, -1}) {
      const cplx z(amp * g(), amp * g());
      u.a[ModeSet::slot(i, s)] = z;
      u.a[ModeSet::slot(j, s)] = std::conj(z);
    }
  }
  return u;
}

}  // namespace rotns
