#pragma once

#include <cmath>
#include <complex>

#include "rotns/lattice.hpp"

namespace rotns {

using cplx = std::complex<double>;
using cvec3 = std::array<cplx, 3>;

inline cvec3 conj(const cvec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

// plain bilinear dot (no conjugation); pair with conj() at call sites that need it
inline cplx dot(const cvec3& a, const cvec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline cplx dot(const cvec3& a, vec3i b) {
  return a[0] * double(b[0]) + a[1] * double(b[1]) + a[2] * double(b[2]);
}

inline cvec3 cross(const cvec3& a, const cvec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline cvec3 cross(vec3i a, const cvec3& b) {
  cvec3 av{cplx(a[0]), cplx(a[1]), cplx(a[2])};
  return cross(av, b);
}

// v - (v . n_hat) n_hat with the real unit vector n_hat = n/|n|; the dot
// against n_hat is taken without conjugation (projection acts componentwise)
inline cvec3 leray_project(vec3i n, const cvec3& v) {
  const std::int64_t n2 = norm2(n);
  if (n2 == 0) throw domain_error("leray_project: zero wavevector");
  const cplx vn = dot(v, n) / double(n2);
  return {v[0] - vn * double(n[0]), v[1] - vn * double(n[1]), v[2] - vn * double(n[2])};
}

namespace detail {

// orthonormal frame (a, b) in the plane perpendicular to k, for lex-positive k:
//   a = (k_hat x e3)/|k_hat x e3|,  b = k_hat x a;
// for k parallel to e3: a = e1, b = sign(k3) e2.
inline void frame(vec3i k, cvec3& a, cvec3& b) {
  if (k[0] == 0 && k[1] == 0) {
    const double sg = k[2] > 0 ? 1.0 : -1.0;
    a = {cplx(1), cplx(0), cplx(0)};
    b = {cplx(0), cplx(sg), cplx(0)};
    return;
  }
  const double rho = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1]);
  const double nk = std::sqrt(double(norm2(k)));
  a = {cplx(k[1] / rho), cplx(-k[0] / rho), cplx(0)};
  b = {cplx(k[0] * k[2] / (nk * rho)), cplx(k[1] * k[2] / (nk * rho)), cplx(-rho * rho / (nk * rho))};
}

}  // namespace detail

// curl eigenvector phi_{k,sigma}: 2*pi*i k x phi = 2*pi*sigma*|k| phi under the
// e^{2*pi*i k.x} convention. Defined by the frame formula on the lex-positive
// half lattice and extended by phi_{-k,sigma} = conj(phi_{k,sigma}) so that real
// fields have conjugate-symmetric amplitudes.
inline cvec3 helical_vector(vec3i k, int sigma) {
  if (is_zero(k)) throw domain_error("helical_vector: zero wavevector");
  const bool flip = !lex_positive(k);
  const vec3i kk = flip ? -k : k;
  cvec3 a, b;
  detail::frame(kk, a, b);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  cvec3 phi;
  for (int i = 0; i < 3; ++i) phi[i] = (a[i] + cplx(0, sigma) * b[i]) * inv_sqrt2;
  return flip ? conj(phi) : phi;
}

// per-slot cache of phi over a ModeSet
struct HelicalBasis {
  const ModeSet* ms;
  std::vector<cvec3> phi;  // slot-indexed

  explicit HelicalBasis(const ModeSet& m) : ms(&m), phi(m.slot_count()) {
    for (std::size_t i = 0; i < m.count(); ++i) {
      phi[ModeSet::slot(i, +1)] = helical_vector(m.modes[i], +1);
      phi[ModeSet::slot(i, -1)] = helical_vector(m.modes[i], -1);
    }
  }

  const cvec3& at(std::size_t mode_index, int sigma) const {
    return phi[ModeSet::slot(mode_index, sigma)];
  }

  const cvec3& operator[](std::size_t slot_id) const { return phi[slot_id]; }
};

// identifies the frame + pairing convention in serialized states
inline const char* basis_convention_tag() { return "helical-lexpos-conj-v1"; }

}  // namespace rotns
