#pragma once

#include <cmath>
#include <cstdint>

#include "errors.hpp"
#include "lattice.hpp"
#include "surd.hpp"

namespace rotns {

// Interaction phase rate for a convolution triad n = k + m:
//
//   D = -sigma1*k3/|k| - sigma2*m3/|m| + sigma3*n3/|n|
//
// carrying both the floating-point value and an exact zero test done in
// integer arithmetic on the surd decompositions |k| = r*sqrt(s).
struct PhaseRate {
  double value = 0;
  bool exactly_zero = false;
};

namespace detail {

// One term c/(r*s) * sqrt(s); terms with c == 0 are dropped by callers.
struct SurdTerm {
  std::int64_t c;  // signed numerator
  std::int64_t d;  // denominator r*s
  std::int64_t s;  // squarefree radical
};

// Exact vanishing of a sum of up to three quadratic surd terms. Square roots
// of distinct squarefree integers are linearly independent over the
// rationals, so the sum is zero iff each same-radical group is zero.
inline bool surd_sum_is_zero(const SurdTerm* t, int n) {
  for (int i = 0; i < n; ++i) {
    bool grouped_earlier = false;
    for (int j = 0; j < i; ++j)
      if (t[j].s == t[i].s) grouped_earlier = true;
    if (grouped_earlier) continue;
    // rational sum of the group over a common denominator
    std::int64_t num = 0, den = 1;
    for (int j = i; j < n; ++j) {
      if (t[j].s != t[i].s) continue;
      num = num * t[j].d + t[j].c * den;
      den *= t[j].d;
    }
    if (num != 0) return false;
  }
  return true;
}

}  // namespace detail

inline PhaseRate phase_rate(const vec3i& k, const vec3i& m, int sigma1,
                            int sigma2, int sigma3) {
  if (is_zero(k) || is_zero(m))
    throw domain_error("phase_rate: zero wavevector in triad");
  const vec3i n = k + m;
  if (is_zero(n)) throw domain_error("phase_rate: excluded triad k + m = 0");

  const double kn = std::sqrt((double)norm2(k));
  const double mn = std::sqrt((double)norm2(m));
  const double nn = std::sqrt((double)norm2(n));

  PhaseRate out;
  out.value = -sigma1 * k[2] / kn - sigma2 * m[2] / mn + sigma3 * n[2] / nn;

  detail::SurdTerm t[3];
  int cnt = 0;
  auto push = [&](std::int64_t c, const vec3i& v) {
    if (c == 0) return;
    const surd d = squarefree_decompose(norm2(v));
    t[cnt++] = {c, d.r * d.s, d.s};
  };
  push(-std::int64_t(sigma1) * k[2], k);
  push(-std::int64_t(sigma2) * m[2], m);
  push(+std::int64_t(sigma3) * n[2], n);
  // value stays the raw floating sum even when the exact test fires; callers
  // that need a clean zero (phase tables) snap it themselves
  out.exactly_zero = detail::surd_sum_is_zero(t, cnt);
  return out;
}

inline bool resonance_holds(const vec3i& k, const vec3i& m, int sigma1,
                            int sigma2, int sigma3) {
  return phase_rate(k, m, sigma1, sigma2, sigma3).exactly_zero;
}

// Variant taking precomputed surd decompositions (hot paths: table build and
// the counting enumeration, where norms repeat heavily).
inline bool resonance_holds_cached(const vec3i& k, const surd& sk,
                                   const vec3i& m, const surd& sm,
                                   const vec3i& n, const surd& sn, int sigma1,
                                   int sigma2, int sigma3) {
  detail::SurdTerm t[3];
  int cnt = 0;
  if (k[2]) t[cnt++] = {-std::int64_t(sigma1) * k[2], std::int64_t(sk.r) * sk.s, sk.s};
  if (m[2]) t[cnt++] = {-std::int64_t(sigma2) * m[2], std::int64_t(sm.r) * sm.s, sm.s};
  if (n[2]) t[cnt++] = {+std::int64_t(sigma3) * n[2], std::int64_t(sn.r) * sn.s, sn.s};
  return detail::surd_sum_is_zero(t, cnt);
}

}  // namespace rotns
