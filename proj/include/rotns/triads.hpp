#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "resonance.hpp"
#include "surd.hpp"

namespace rotns {

// One convolution interaction (k,s1) x (m,s2) -> (n,s3), n = k + m, with
//
//   c = 2*pi*i (phi_{k,s1} . m) (phi_{m,s2} . conj(phi_{n,s3}))
//
// so that summing c * u_a * v_b over a group reproduces the n-component of
// the projected advection term P(u . grad v). D is the interaction phase
// rate; resonant entries (exact zero) store D = 0.
struct TriadEntry {
  cplx c;
  double D;
  std::int32_t a;   // input slot (k, s1)
  std::int32_t b;   // input slot (m, s2)
  std::int32_t dg;  // index into dvalues
};

// Entries sorted by output slot (CSR layout); within a group the resonant
// entries come first, then the oscillatory ones, each block in deterministic
// (k index, s1, s2) build order.
struct TriadTable {
  const ModeSet* ms = nullptr;
  bool has_nonresonant = false;
  std::vector<TriadEntry> entries;
  std::vector<std::int64_t> group_begin;    // slot_count() + 1
  std::vector<std::int64_t> group_res_end;  // slot_count()
  std::vector<double> dvalues;              // sorted distinct phase rates

  std::size_t resonant_count() const {
    std::size_t n = 0;
    for (std::size_t g = 0; g + 1 < group_begin.size(); ++g)
      n += std::size_t(group_res_end[g] - group_begin[g]);
    return n;
  }
};

inline TriadTable build_triad_table(const ModeSet& ms, const HelicalBasis& hb,
                                    bool include_nonresonant,
                                    std::size_t budget_bytes = std::size_t(3500) << 20) {
  const std::size_t nm = ms.count();
  const std::size_t slots = ms.slot_count();
  SurdTable surds(ms.radius * std::int64_t(ms.radius));
  const int sig[2] = {+1, -1};

  // pass 1: count entries per output slot, split by resonance
  std::vector<std::int64_t> res_count(slots, 0), osc_count(slots, 0);
  for (std::size_t ki = 0; ki < nm; ++ki) {
    const vec3i k = ms.modes[ki];
    const surd sk = surds[ms.kn2[ki]];
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const vec3i m = ms.modes[mi];
      const vec3i n = k + m;
      const int ni = ms.index_of(n);
      if (ni < 0) continue;
      const surd sm = surds[ms.kn2[mi]];
      const surd sn = surds[ms.kn2[ni]];
      for (int s1 : sig)
        for (int s2 : sig)
          for (int s3 : sig) {
            const bool res =
                resonance_holds_cached(k, sk, m, sm, n, sn, s1, s2, s3);
            const std::size_t g = ModeSet::slot(ni, s3);
            if (res)
              ++res_count[g];
            else if (include_nonresonant)
              ++osc_count[g];
          }
    }
  }

  std::int64_t total = 0;
  for (std::size_t g = 0; g < slots; ++g) total += res_count[g] + osc_count[g];
  const std::size_t need =
      std::size_t(total) * sizeof(TriadEntry) + slots * 24 + (std::size_t(total) + slots) * 8;
  if (need > budget_bytes)
    throw resource_error(ms.radius, std::size_t(total), budget_bytes);

  TriadTable tab;
  tab.ms = &ms;
  tab.has_nonresonant = include_nonresonant;
  tab.entries.resize(std::size_t(total));
  tab.group_begin.assign(slots + 1, 0);
  tab.group_res_end.assign(slots, 0);
  for (std::size_t g = 0; g < slots; ++g) {
    tab.group_begin[g + 1] = tab.group_begin[g] + res_count[g] + osc_count[g];
    tab.group_res_end[g] = tab.group_begin[g] + res_count[g];
  }

  // pass 2: fill with two cursors per group
  std::vector<std::int64_t> res_cur(slots), osc_cur(slots);
  for (std::size_t g = 0; g < slots; ++g) {
    res_cur[g] = tab.group_begin[g];
    osc_cur[g] = tab.group_res_end[g];
  }
  const cplx two_pi_i(0, 6.283185307179586476925287);
  for (std::size_t ki = 0; ki < nm; ++ki) {
    const vec3i k = ms.modes[ki];
    const surd sk = surds[ms.kn2[ki]];
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const vec3i m = ms.modes[mi];
      const vec3i n = k + m;
      const int ni = ms.index_of(n);
      if (ni < 0) continue;
      const surd sm = surds[ms.kn2[mi]];
      const surd sn = surds[ms.kn2[ni]];
      for (int s1 : sig) {
        const cvec3& pk = hb.at(ki, s1);
        const cplx adv = two_pi_i * dot(pk, m);
        for (int s2 : sig) {
          const cvec3& pm = hb.at(mi, s2);
          for (int s3 : sig) {
            const bool res =
                resonance_holds_cached(k, sk, m, sm, n, sn, s1, s2, s3);
            if (!res && !include_nonresonant) continue;
            const cvec3& pn = hb.at(std::size_t(ni), s3);
            cplx proj = pm[0] * std::conj(pn[0]) + pm[1] * std::conj(pn[1]) +
                        pm[2] * std::conj(pn[2]);
            TriadEntry e;
            e.c = adv * proj;
            e.D = res ? 0.0
                      : (-s1 * ms.k3_over_k[ki] - s2 * ms.k3_over_k[mi] +
                         s3 * ms.k3_over_k[ni]);
            e.a = std::int32_t(ModeSet::slot(ki, s1));
            e.b = std::int32_t(ModeSet::slot(mi, s2));
            e.dg = 0;
            const std::size_t g = ModeSet::slot(ni, s3);
            tab.entries[std::size_t(res ? res_cur[g]++ : osc_cur[g]++)] = e;
          }
        }
      }
    }
  }

  // phase-rate groups: sorted distinct D values, entries tagged with indices
  std::vector<double> ds;
  ds.reserve(tab.entries.size());
  for (const auto& e : tab.entries) ds.push_back(e.D);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  tab.dvalues = std::move(ds);
  for (auto& e : tab.entries) {
    const auto it =
        std::lower_bound(tab.dvalues.begin(), tab.dvalues.end(), e.D);
    e.dg = std::int32_t(it - tab.dvalues.begin());
  }
  return tab;
}

}  // namespace rotns
