#pragma once

#include <cstdint>
#include <vector>

#include "rotns/errors.hpp"

namespace rotns {

// A = r^2 * s with s squarefree; sqrt(A) = r * sqrt(s).
struct surd {
  std::int64_t r = 1;
  std::int64_t s = 1;
  friend bool operator==(const surd&, const surd&) = default;
};

// trial division; fine for the squared norms seen here (<= a few 10^6)
inline surd squarefree_decompose(std::int64_t A) {
  if (A < 1) throw domain_error("squarefree_decompose: argument must be positive");
  surd out;
  for (std::int64_t p = 2; p * p <= A; ++p) {
    if (A % p) continue;
    int e = 0;
    while (A % p == 0) {
      A /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) out.r *= p;
    if (e & 1) out.s *= p;
  }
  out.s *= A;  // leftover prime (or 1)
  return out;
}

// dense (r,s) table for all arguments up to a bound; hot paths index it directly
struct SurdTable {
  std::vector<std::int32_t> r, s;

  explicit SurdTable(std::int64_t max_value) {
    r.assign(std::size_t(max_value) + 1, 1);
    s.assign(std::size_t(max_value) + 1, 1);
    // smallest-prime-factor sieve, then factor each value through it
    std::vector<std::int32_t> spf(std::size_t(max_value) + 1, 0);
    for (std::int64_t i = 2; i <= max_value; ++i) {
      if (spf[i] == 0)
        for (std::int64_t j = i; j <= max_value; j += i)
          if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
    }
    for (std::int64_t v = 2; v <= max_value; ++v) {
      std::int64_t x = v, rr = 1, ss = 1;
      while (x > 1) {
        const std::int64_t p = spf[x];
        int e = 0;
        while (x % p == 0) {
          x /= p;
          ++e;
        }
        for (int i = 0; i < e / 2; ++i) rr *= p;
        if (e & 1) ss *= p;
      }
      r[v] = static_cast<std::int32_t>(rr);
      s[v] = static_cast<std::int32_t>(ss);
    }
  }

  surd operator[](std::int64_t A) const {
    if (A < 1 || A >= std::int64_t(r.size()))
      throw domain_error("SurdTable: value out of range");
    return {r[A], s[A]};
  }
  std::int64_t max_value() const { return std::int64_t(r.size()) - 1; }
};

}  // namespace rotns
