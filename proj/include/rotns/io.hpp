#pragma once

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "rotns/basis.hpp"
#include "rotns/errors.hpp"
#include "rotns/field.hpp"
#include "rotns/solver.hpp"

namespace rotns {

// ---------------------------------------------------------------------------
// key/value configuration

struct RunConfig {
  SolverConfig solver;
  std::string output;  // report/snapshot destination; empty = caller's default

  std::vector<std::string> echo() const {
    std::vector<std::string> lines;
    auto num = [](double x) {
      char buf[40];
      auto r = std::to_chars(buf, buf + sizeof buf, x);
      return std::string(buf, r.ptr);
    };
    lines.push_back("radius=" + std::to_string(solver.radius));
    lines.push_back("nu=" + num(solver.nu));
    lines.push_back("dt=" + num(solver.dt));
    lines.push_back("horizon=" + num(solver.horizon));
    lines.push_back("omega=" + num(solver.omega));
    lines.push_back(std::string("scheme=") + scheme_name(solver.scheme));
    lines.push_back("seed=" + std::to_string(solver.seed));
    lines.push_back("sample-every=" + std::to_string(solver.sample_every));
    if (!output.empty()) lines.push_back("output=" + output);
    return lines;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

inline bool parse_int(const std::string& s, std::int64_t& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

inline bool parse_uint(const std::string& s, std::uint64_t& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

}  // namespace detail

// Build a validated config from key=value assignments; later assignments win,
// so file contents followed by command-line overrides gives flag precedence.
// Every violation is collected and reported at once.
inline RunConfig parse_config(const std::vector<std::string>& assignments) {
  RunConfig rc;
  std::vector<std::string> bad;
  for (const std::string& raw : assignments) {
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      bad.push_back(line + ": expected key=value");
      continue;
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key == "radius") {
      std::int64_t x;
      if (detail::parse_int(val, x))
        rc.solver.radius = int(x);
      else
        bad.push_back("radius: not an integer: '" + val + "' (radius >= 1)");
    } else if (key == "nu") {
      double x;
      if (detail::parse_double(val, x))
        rc.solver.nu = x;
      else
        bad.push_back("nu: not a number: '" + val + "' (nu > 0)");
    } else if (key == "dt") {
      double x;
      if (detail::parse_double(val, x))
        rc.solver.dt = x;
      else
        bad.push_back("dt: not a number: '" + val + "' (0 < dt <= horizon)");
    } else if (key == "horizon") {
      double x;
      if (detail::parse_double(val, x))
        rc.solver.horizon = x;
      else
        bad.push_back("horizon: not a number: '" + val + "' (horizon > 0)");
    } else if (key == "omega") {
      double x;
      if (detail::parse_double(val, x))
        rc.solver.omega = x;
      else
        bad.push_back("omega: not a number: '" + val + "' (omega >= 0)");
    } else if (key == "scheme") {
      if (val == "if-rk4" || val == "rk4")
        rc.solver.scheme = scheme_from_name(val);
      else
        bad.push_back("scheme: unknown value '" + val + "' (accepted: if-rk4, rk4)");
    } else if (key == "seed") {
      std::uint64_t x;
      if (detail::parse_uint(val, x))
        rc.solver.seed = x;
      else
        bad.push_back("seed: not a non-negative integer: '" + val + "'");
    } else if (key == "sample-every") {
      std::int64_t x;
      if (detail::parse_int(val, x))
        rc.solver.sample_every = int(x);
      else
        bad.push_back("sample-every: not an integer: '" + val + "' (sample-every >= 1)");
    } else if (key == "output") {
      rc.output = val;
    } else {
      bad.push_back("unknown key '" + key + "'");
    }
  }
  for (const std::string& v : rc.solver.violations()) bad.push_back(v);
  if (!bad.empty()) throw config_error(std::move(bad));
  return rc;
}

// the file contributes its lines first, then overrides win key by key
inline RunConfig parse_config_file(const std::string& path,
                                   const std::vector<std::string>& overrides = {}) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read config file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  lines.insert(lines.end(), overrides.begin(), overrides.end());
  return parse_config(lines);
}

// ---------------------------------------------------------------------------
// spectral snapshots
//
// Fixed little-endian layout:
//   8 bytes magic "ROTNSSF\n", u32 version, i32 radius, u8 reality flag,
//   u8 tag length, tag bytes, u64 slot count, then count (re, im) doubles
//   in slot order. The basis convention tag makes files self-describing:
//   amplitudes are meaningless under a different polarization convention.

static_assert(std::endian::native == std::endian::little,
              "snapshot format is defined little-endian");

namespace detail {

constexpr char snapshot_magic[8] = {'R', 'O', 'T', 'N', 'S', 'S', 'F', '\n'};
constexpr std::uint32_t snapshot_version = 1;

template <class T>
void put(std::ofstream& os, const T& x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
bool get(std::ifstream& is, T& x) {
  is.read(reinterpret_cast<char*>(&x), sizeof(T));
  return bool(is);
}

}  // namespace detail

inline void save_state(const SpectralField& u, const std::string& path) {
  if (!u.ms) throw dimension_error("save_state on empty field");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw io_error("cannot write snapshot: " + path);
  os.write(detail::snapshot_magic, 8);
  detail::put(os, detail::snapshot_version);
  detail::put(os, std::int32_t(u.ms->radius));
  const std::uint8_t real_flag = reality_defect(u) <= 1e-12 ? 1 : 0;
  detail::put(os, real_flag);
  const std::string tag = basis_convention_tag();
  detail::put(os, std::uint8_t(tag.size()));
  os.write(tag.data(), std::streamsize(tag.size()));
  detail::put(os, std::uint64_t(u.size()));
  for (std::size_t g = 0; g < u.size(); ++g) {
    detail::put(os, u[g].real());
    detail::put(os, u[g].imag());
  }
  if (!os) throw io_error("short write on snapshot: " + path);
}

// radius recorded in a snapshot header, for sizing the mode set before loading
inline int snapshot_radius(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot read snapshot: " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::snapshot_magic, 8) != 0)
    throw io_error("not a spectral snapshot: " + path);
  std::uint32_t ver;
  std::int32_t radius;
  if (!detail::get(is, ver) || !detail::get(is, radius))
    throw io_error("truncated snapshot header: " + path);
  if (ver != detail::snapshot_version)
    throw io_error("snapshot format version " + std::to_string(ver) +
                   " not supported (expected " +
                   std::to_string(detail::snapshot_version) + "): " + path);
  return int(radius);
}

inline SpectralField load_state(const std::string& path, const ModeSet& ms) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot read snapshot: " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, detail::snapshot_magic, 8) != 0)
    throw io_error("not a spectral snapshot: " + path);
  std::uint32_t ver;
  std::int32_t radius;
  std::uint8_t real_flag, tag_len;
  if (!detail::get(is, ver) || !detail::get(is, radius) || !detail::get(is, real_flag) ||
      !detail::get(is, tag_len))
    throw io_error("truncated snapshot header: " + path);
  if (ver != detail::snapshot_version)
    throw io_error("snapshot format version " + std::to_string(ver) +
                   " not supported (expected " +
                   std::to_string(detail::snapshot_version) + "): " + path);
  std::string tag(tag_len, '\0');
  is.read(tag.data(), tag_len);
  if (!is) throw io_error("truncated snapshot header: " + path);
  if (tag != basis_convention_tag())
    throw io_error("snapshot uses basis convention '" + tag + "', this build expects '" +
                   basis_convention_tag() + "': " + path);
  if (radius != ms.radius)
    throw io_error("snapshot truncation radius " + std::to_string(radius) +
                   " does not match the requested mode set (radius " +
                   std::to_string(ms.radius) + "): " + path);
  std::uint64_t count;
  if (!detail::get(is, count)) throw io_error("truncated snapshot header: " + path);
  if (count != ms.slot_count())
    throw io_error("snapshot payload length " + std::to_string(count) +
                   " does not match the mode set (" + std::to_string(ms.slot_count()) +
                   " slots): " + path);
  SpectralField u(ms);
  for (std::size_t g = 0; g < u.size(); ++g) {
    double re, im;
    if (!detail::get(is, re) || !detail::get(is, im))
      throw io_error("truncated snapshot payload: " + path);
    u[g] = cplx(re, im);
  }
  return u;
}

// ---------------------------------------------------------------------------
// CSV reports

struct CsvReport {
  std::vector<std::string> comments;  // emitted as leading '# ' lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// shortest decimal form that parses back to the identical double
inline std::string csv_number(double x) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// incremental variant, for reports too large to stage in memory
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& comments,
            std::vector<std::string> columns)
      : path_(path), width_(columns.size()), os_(path, std::ios::trunc) {
    if (!os_) throw io_error("cannot write report: " + path);
    for (const std::string& c : comments) os_ << "# " << c << "\n";
    for (std::size_t j = 0; j < columns.size(); ++j)
      os_ << columns[j] << (j + 1 < columns.size() ? "," : "");
    os_ << "\n";
  }

  void row(const double* vals, std::size_t n) {
    if (n != width_) throw domain_error("csv row width does not match the column schema");
    for (std::size_t j = 0; j < n; ++j) os_ << csv_number(vals[j]) << (j + 1 < n ? "," : "");
    os_ << "\n";
  }
  void row(std::initializer_list<double> vals) { row(vals.begin(), vals.size()); }
  void row(const std::vector<double>& vals) { row(vals.data(), vals.size()); }

  void close() {
    os_.flush();
    if (!os_) throw io_error("short write on report: " + path_);
    os_.close();
  }

 private:
  std::string path_;
  std::size_t width_;
  std::ofstream os_;
};

inline void emit_report(const CsvReport& rep, const std::string& path) {
  for (const auto& row : rep.rows)
    if (row.size() != rep.columns.size())
      throw domain_error("emit_report: row width does not match the column schema");
  CsvWriter w(path, rep.comments, rep.columns);
  for (const auto& row : rep.rows) w.row(row);
  w.close();
}

}  // namespace rotns
