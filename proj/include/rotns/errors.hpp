#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotns {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// precondition violation on a single value (zero vector, empty truncation, ...)
struct domain_error : error {
  using error::error;
};

// fields / tables built at different truncation radii
struct dimension_error : error {
  using error::error;
};

// operation requires table data that was not built (e.g. non-resonant entries)
struct capability_error : error {
  using error::error;
};

// triad table would exceed the configured memory budget
struct resource_error : error {
  int radius;
  std::size_t entry_count;
  resource_error(int N, std::size_t entries, std::size_t budget_bytes)
      : error(make_msg(N, entries, budget_bytes)), radius(N), entry_count(entries) {}

 private:
  static std::string make_msg(int N, std::size_t entries, std::size_t budget) {
    std::ostringstream os;
    os << "triad table at radius " << N << " needs " << entries
       << " entries, exceeding the memory budget of " << budget << " bytes";
    return os.str();
  }
};

// non-finite amplitude produced by the time stepper
struct blowup_error : error {
  double t;
  std::array<int, 3> mode;
  int sigma;
  blowup_error(double time, std::array<int, 3> k, int sg)
      : error(make_msg(time, k, sg)), t(time), mode(k), sigma(sg) {}

 private:
  static std::string make_msg(double time, std::array<int, 3> k, int sg) {
    std::ostringstream os;
    os << "non-finite amplitude at t=" << time << " on mode (" << k[0] << "," << k[1] << ","
       << k[2] << "), sigma=" << sg;
    return os.str();
  }
};

// quadrature or time step too coarse for the fastest oscillation present
struct resolution_error : error {
  using error::error;
};

// configuration rejected; carries every violation found, not just the first
struct config_error : error {
  std::vector<std::string> violations;
  explicit config_error(std::vector<std::string> v)
      : error(make_msg(v)), violations(std::move(v)) {}

 private:
  static std::string make_msg(const std::vector<std::string>& v) {
    std::ostringstream os;
    os << "invalid configuration (" << v.size() << " violation" << (v.size() == 1 ? "" : "s")
       << "):";
    for (const auto& s : v) os << "\n  - " << s;
    return os.str();
  }
};

struct io_error : error {
  using error::error;
};

}  // namespace rotns
