#pragma once

#include <cmath>

#include "field.hpp"
#include "parallel.hpp"
#include "triads.hpp"

namespace rotns {

namespace detail {

inline void check_apply_args(const TriadTable& tab, const SpectralField& u,
                             const SpectralField& v, SpectralField& out) {
  if (!tab.ms) throw dimension_error("apply: empty table");
  check_same_modes(u, v);
  if (u.ms->radius != tab.ms->radius)
    throw dimension_error("apply: fields do not match table truncation");
  if (out.ms != u.ms) {
    out = SpectralField(*u.ms);
  } else {
    out.set_zero();
  }
}

}  // namespace detail

// Resonant part: only interactions whose phase rate vanishes identically.
// This is the bilinear term of the limit equation.
inline void apply_resonant(const TriadTable& tab, const SpectralField& u,
                           const SpectralField& v, SpectralField& out) {
  detail::check_apply_args(tab, u, v, out);
  // each worker owns whole output slots, so any thread count sums the same
  // entries in the same order and the result is bit-identical
  parallel::for_range(tab.ms->slot_count(), [&](std::size_t g) {
    cplx acc(0, 0);
    for (std::int64_t e = tab.group_begin[g]; e < tab.group_res_end[g]; ++e) {
      const TriadEntry& t = tab.entries[std::size_t(e)];
      acc += t.c * u[std::size_t(t.a)] * v[std::size_t(t.b)];
    }
    out[g] = acc;
  });
}

// Oscillatory complement at rotation phase theta = Omega * t.
inline void apply_oscillatory(const TriadTable& tab, const SpectralField& u,
                              const SpectralField& v, double theta,
                              SpectralField& out) {
  detail::check_apply_args(tab, u, v, out);
  // theta == 0 short-circuits the phase table; multiplying by exp(0) = 1
  // would be bit-identical anyway, just slower
  std::vector<cplx> phase;
  if (theta != 0.0) {
    phase.resize(tab.dvalues.size());
    for (std::size_t j = 0; j < phase.size(); ++j)
      phase[j] = std::polar(1.0, theta * tab.dvalues[j]);
  }
  const cplx* ph = phase.empty() ? nullptr : phase.data();
  parallel::for_range(tab.ms->slot_count(), [&](std::size_t g) {
    cplx acc(0, 0);
    for (std::int64_t e = tab.group_res_end[g]; e < tab.group_begin[g + 1]; ++e) {
      const TriadEntry& t = tab.entries[std::size_t(e)];
      const cplx w = t.c * u[std::size_t(t.a)] * v[std::size_t(t.b)];
      acc += ph ? ph[std::size_t(t.dg)] * w : w;
    }
    out[g] = acc;
  });
}

// Whole operator at rotation phase theta. Each group is summed as the
// resonant block plus the oscillatory block so the three applications
// satisfy full = resonant + oscillatory bitwise.
inline void apply_full(const TriadTable& tab, const SpectralField& u,
                       const SpectralField& v, double theta,
                       SpectralField& out) {
  detail::check_apply_args(tab, u, v, out);
  std::vector<cplx> phase;
  if (theta != 0.0) {
    phase.resize(tab.dvalues.size());
    for (std::size_t j = 0; j < phase.size(); ++j)
      phase[j] = std::polar(1.0, theta * tab.dvalues[j]);
  }
  const cplx* ph = phase.empty() ? nullptr : phase.data();
  parallel::for_range(tab.ms->slot_count(), [&](std::size_t g) {
    cplx res(0, 0), osc(0, 0);
    std::int64_t e = tab.group_begin[g];
    for (; e < tab.group_res_end[g]; ++e) {
      const TriadEntry& t = tab.entries[std::size_t(e)];
      res += t.c * u[std::size_t(t.a)] * v[std::size_t(t.b)];
    }
    for (; e < tab.group_begin[g + 1]; ++e) {
      const TriadEntry& t = tab.entries[std::size_t(e)];
      const cplx w = t.c * u[std::size_t(t.a)] * v[std::size_t(t.b)];
      osc += ph ? ph[std::size_t(t.dg)] * w : w;
    }
    out[g] = res + osc;
  });
}

// Rotation-group action: slot (k, sigma) picks up exp(i sigma theta k3/|k|).
inline void poincare_propagate(SpectralField& u, double theta) {
  if (!u.ms) throw dimension_error("poincare_propagate on empty field");
  const ModeSet& ms = *u.ms;
  for (std::size_t i = 0; i < ms.count(); ++i) {
    const cplx e = std::polar(1.0, theta * ms.k3_over_k[i]);
    u[ModeSet::slot(i, +1)] *= e;
    u[ModeSet::slot(i, -1)] *= std::conj(e);
  }
}

// Same operator as apply_full, evaluated by conjugation with the rotation
// group: E(theta) B0(E(-theta) u, E(-theta) v). Avoids the per-group phase
// table, so it is the cheaper form inside time-stepping loops. Agrees with
// apply_full to rounding, not bitwise.
inline void apply_full_rotating(const TriadTable& tab, const SpectralField& u,
                                const SpectralField& v, double theta,
                                SpectralField& out) {
  if (!tab.has_nonresonant)
    throw capability_error("apply_full_rotating needs a full table");
  SpectralField ur = u, vr = v;
  poincare_propagate(ur, -theta);
  poincare_propagate(vr, -theta);
  apply_full(tab, ur, vr, 0.0, out);
  poincare_propagate(out, theta);
}

}  // namespace rotns
