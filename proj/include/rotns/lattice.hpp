#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rotns/errors.hpp"

namespace rotns {

using vec3i = std::array<int, 3>;

inline vec3i operator+(vec3i a, vec3i b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline vec3i operator-(vec3i a) { return {-a[0], -a[1], -a[2]}; }
inline vec3i operator-(vec3i a, vec3i b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline std::int64_t norm2(vec3i k) {
  return std::int64_t(k[0]) * k[0] + std::int64_t(k[1]) * k[1] + std::int64_t(k[2]) * k[2];
}

inline bool is_zero(vec3i k) { return k[0] == 0 && k[1] == 0 && k[2] == 0; }

// first nonzero component positive; picks one vector out of each {k,-k} pair
inline bool lex_positive(vec3i k) {
  if (k[0] != 0) return k[0] > 0;
  if (k[1] != 0) return k[1] > 0;
  return k[2] > 0;
}

// dyadic shell index: the unique i with 2^i <= |k| < 2^{i+1},
// equivalently 4^i <= |k|^2 < 4^{i+1}
inline int shell_index(vec3i k) {
  const std::int64_t n2 = norm2(k);
  if (n2 == 0) throw domain_error("shell_index: zero vector");
  return (std::bit_width(static_cast<std::uint64_t>(n2)) - 1) / 2;
}

// all k in Z^3 \ {0} with |k| <= N, lexicographic order, with O(1) index lookup
struct ModeSet {
  int radius = 0;
  std::vector<vec3i> modes;
  std::vector<double> knorm;        // |k|
  std::vector<std::int64_t> kn2;    // |k|^2
  std::vector<double> k3_over_k;    // k3/|k|, the per-mode rotation phase rate
  std::vector<std::int32_t> neg;    // index of -k

  explicit ModeSet(int N) : radius(N) {
    if (N < 1) throw domain_error("ModeSet: empty truncation (radius must be >= 1)");
    const std::int64_t r2 = std::int64_t(N) * N;
    for (int a = -N; a <= N; ++a)
      for (int b = -N; b <= N; ++b)
        for (int c = -N; c <= N; ++c) {
          const vec3i k{a, b, c};
          if (is_zero(k) || norm2(k) > r2) continue;
          modes.push_back(k);
        }
    const int w = 2 * N + 1;
    index_.assign(std::size_t(w) * w * w, -1);
    knorm.resize(modes.size());
    kn2.resize(modes.size());
    k3_over_k.resize(modes.size());
    neg.resize(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
      index_[flat(modes[i])] = static_cast<std::int32_t>(i);
      kn2[i] = norm2(modes[i]);
      knorm[i] = std::sqrt(double(kn2[i]));
      k3_over_k[i] = double(modes[i][2]) / knorm[i];
    }
    for (std::size_t i = 0; i < modes.size(); ++i) neg[i] = index_[flat(-modes[i])];
  }

  std::size_t count() const { return modes.size(); }
  std::size_t slot_count() const { return 2 * modes.size(); }

  // -1 when outside the ball (or zero)
  std::int32_t index_of(vec3i k) const {
    if (k[0] < -radius || k[0] > radius || k[1] < -radius || k[1] > radius || k[2] < -radius ||
        k[2] > radius)
      return -1;
    return index_[flat(k)];
  }

  // slot = 2*mode_index + (0 for sigma=+1, 1 for sigma=-1)
  static std::size_t slot(std::size_t mode_index, int sigma) {
    return 2 * mode_index + (sigma < 0 ? 1 : 0);
  }
  static int slot_sigma(std::size_t s) { return (s & 1) ? -1 : +1; }
  static std::size_t slot_mode(std::size_t s) { return s / 2; }

 private:
  std::vector<std::int32_t> index_;
  std::size_t flat(vec3i k) const {
    const std::size_t w = 2 * std::size_t(radius) + 1;
    return (std::size_t(k[0] + radius) * w + std::size_t(k[1] + radius)) * w +
           std::size_t(k[2] + radius);
  }
};

}  // namespace rotns
