#include <catch2/catch_amalgamated.hpp>

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "rotns/io.hpp"

using namespace rotns;
namespace fs = std::filesystem;

namespace {

fs::path tmp_path(const char* name) { return fs::temp_directory_path() / name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void dump(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), std::streamsize(bytes.size()));
}

}  // namespace

TEST_CASE("parse_config reads every key, later assignments win", "[io]") {
  RunConfig rc = parse_config({
      "  # leading comment",
      "radius = 6",
      "nu=0.25",
      "dt = 0.002",
      "horizon=0.5",
      "omega = 10",
      "scheme = rk4",
      "seed=42",
      "sample-every = 5",
      "output = runs/a.csv",
      "",
      "nu = 0.125",  // override within the same list
  });
  CHECK(rc.solver.radius == 6);
  CHECK(rc.solver.nu == 0.125);
  CHECK(rc.solver.dt == 0.002);
  CHECK(rc.solver.horizon == 0.5);
  CHECK(rc.solver.omega == 10.0);
  CHECK(rc.solver.scheme == Scheme::rk4);
  CHECK(rc.solver.seed == 42);
  CHECK(rc.solver.sample_every == 5);
  CHECK(rc.output == "runs/a.csv");
}

TEST_CASE("parse_config reports every problem in one exception", "[io]") {
  try {
    parse_config({
        "radius=abc",        // not an integer
        "nu=-1",             // range violation
        "dt=0",              // range violation
        "scheme=euler",      // unknown enum value
        "colour=blue",       // unknown key
        "horizon",           // missing '='
        "sample-every=2.5",  // not an integer
    });
    FAIL("expected config_error");
  } catch (const config_error& e) {
    // radius=abc leaves the default radius valid, so the range check passes;
    // expect exactly the seven listed problems minus the valid ones:
    // bad radius text, bad sample-every text, unknown scheme, unknown key,
    // missing '=', nu range, dt range.
    CHECK(e.violations.size() == 7);
    std::string all;
    for (const auto& v : e.violations) all += v + "\n";
    CHECK(all.find("radius") != std::string::npos);
    CHECK(all.find("nu") != std::string::npos);
    CHECK(all.find("dt") != std::string::npos);
    CHECK(all.find("scheme") != std::string::npos);
    CHECK(all.find("colour") != std::string::npos);
    CHECK(all.find("key=value") != std::string::npos);
    CHECK(all.find("sample-every") != std::string::npos);
    // messages state the accepted range so the user can fix without docs
    CHECK(all.find("nu > 0") != std::string::npos);
    CHECK(all.find("0 < dt <= horizon") != std::string::npos);
  }
}

TEST_CASE("config file plus command-line overrides, overrides win", "[io]") {
  const fs::path p = tmp_path("rotns_io_cfg.txt");
  {
    std::ofstream out(p);
    out << "# sample run\n"
        << "radius=4\n"
        << "nu=0.1\n"
        << "dt=0.01\n"
        << "horizon=1\n";
  }
  RunConfig rc = parse_config_file(p.string(), {"nu=0.05", "output=x.csv"});
  CHECK(rc.solver.radius == 4);
  CHECK(rc.solver.nu == 0.05);
  CHECK(rc.solver.dt == 0.01);
  CHECK(rc.output == "x.csv");
  CHECK_THROWS_AS(parse_config_file("/nonexistent/rotns.cfg"), io_error);
  fs::remove(p);
}

TEST_CASE("config echo parses back to the identical configuration", "[io]") {
  RunConfig rc;
  rc.solver.radius = 5;
  rc.solver.nu = 1.0 / 3.0;
  rc.solver.dt = 1e-3 * (1 + 1e-15);
  rc.solver.horizon = 0.3;
  rc.solver.omega = 12.5;
  rc.solver.scheme = Scheme::rk4;
  rc.solver.seed = 123456789012345ull;
  rc.solver.sample_every = 7;
  rc.output = "out.csv";
  RunConfig back = parse_config(rc.echo());
  CHECK(back.solver.radius == rc.solver.radius);
  CHECK(back.solver.nu == rc.solver.nu);  // to_chars shortest form is lossless
  CHECK(back.solver.dt == rc.solver.dt);
  CHECK(back.solver.horizon == rc.solver.horizon);
  CHECK(back.solver.omega == rc.solver.omega);
  CHECK(back.solver.scheme == rc.solver.scheme);
  CHECK(back.solver.seed == rc.solver.seed);
  CHECK(back.solver.sample_every == rc.solver.sample_every);
  CHECK(back.output == rc.output);
}

TEST_CASE("snapshot round trip is bitwise exact", "[io]") {
  ModeSet ms(4);
  SpectralField u = random_real_field(ms, 99);
  u[3] = cplx(1e-300, -2.5);  // include a subnormal-ish magnitude on purpose
  const fs::path p = tmp_path("rotns_io_snap.bin");
  save_state(u, p.string());

  CHECK(snapshot_radius(p.string()) == 4);
  SpectralField v = load_state(p.string(), ms);
  REQUIRE(v.size() == u.size());
  CHECK(std::memcmp(u.a.data(), v.a.data(), u.size() * sizeof(cplx)) == 0);
  fs::remove(p);
}

TEST_CASE("snapshot refuses mismatched or damaged files", "[io]") {
  ModeSet ms(3);
  SpectralField u = random_real_field(ms, 7);
  const fs::path p = tmp_path("rotns_io_snap2.bin");
  save_state(u, p.string());
  const std::string good = slurp(p);

  SECTION("wrong radius at load") {
    ModeSet ms4(4);
    CHECK_THROWS_MATCHES(load_state(p.string(), ms4), io_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("radius")));
  }
  SECTION("garbage magic") {
    std::string bad = good;
    bad[0] = 'X';
    dump(p, bad);
    CHECK_THROWS_MATCHES(load_state(p.string(), ms), io_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("not a spectral snapshot")));
  }
  SECTION("unsupported version") {
    std::string bad = good;
    bad[8] = char(9);  // version u32 lives right after the 8-byte magic
    dump(p, bad);
    CHECK_THROWS_MATCHES(load_state(p.string(), ms), io_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("version")));
    CHECK_THROWS_AS(snapshot_radius(p.string()), io_error);
  }
  SECTION("foreign basis convention tag") {
    std::string bad = good;
    bad[18] = 'x';  // first tag byte: magic(8) + version(4) + radius(4) + flags(2)
    dump(p, bad);
    CHECK_THROWS_MATCHES(load_state(p.string(), ms), io_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("basis convention")));
  }
  SECTION("truncated payload") {
    dump(p, good.substr(0, good.size() - 9));
    CHECK_THROWS_MATCHES(load_state(p.string(), ms), io_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("truncated")));
  }
  SECTION("nonexistent path") {
    CHECK_THROWS_AS(load_state("/nonexistent/snap.bin", ms), io_error);
    CHECK_THROWS_AS(snapshot_radius("/nonexistent/snap.bin"), io_error);
  }
  fs::remove(p);
}

TEST_CASE("csv report writes comments, header, and lossless numbers", "[io]") {
  CsvReport rep;
  rep.comments = {"nu=0.1", "radius=4"};
  rep.columns = {"t", "l2", "h1"};
  rep.rows = {{0.0, 1.0 / 3.0, 2.0}, {0.1, 0.25, 1e-300}};
  const fs::path p = tmp_path("rotns_io_rep.csv");
  emit_report(rep, p.string());

  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# nu=0.1");
  std::getline(in, line);
  CHECK(line == "# radius=4");
  std::getline(in, line);
  CHECK(line == "t,l2,h1");
  std::getline(in, line);
  {
    // middle field must parse back to exactly 1/3
    const std::size_t a = line.find(','), b = line.rfind(',');
    REQUIRE(a != std::string::npos);
    REQUIRE(b > a);
    const std::string mid = line.substr(a + 1, b - a - 1);
    double x = 0;
    auto r = std::from_chars(mid.data(), mid.data() + mid.size(), x);
    REQUIRE(r.ec == std::errc());
    CHECK(x == 1.0 / 3.0);
  }
  std::getline(in, line);
  CHECK(line.substr(0, 4) == "0.1,");
  CHECK_FALSE(std::getline(in, line));  // no trailing junk
  fs::remove(p);
}

TEST_CASE("csv report edge cases", "[io]") {
  CsvReport rep;
  rep.columns = {"a", "b"};
  SECTION("no rows still writes the header") {
    const fs::path p = tmp_path("rotns_io_empty.csv");
    emit_report(rep, p.string());
    CHECK(slurp(p) == "a,b\n");
    fs::remove(p);
  }
  SECTION("row width mismatch is rejected before touching the file") {
    rep.rows = {{1.0}};
    CHECK_THROWS_AS(emit_report(rep, tmp_path("rotns_io_bad.csv").string()), domain_error);
    CHECK_FALSE(fs::exists(tmp_path("rotns_io_bad.csv")));
  }
  SECTION("unwritable path") {
    CHECK_THROWS_AS(emit_report(rep, "/nonexistent/dir/r.csv"), io_error);
  }
}

TEST_CASE("csv_number survives a double round trip bitwise", "[io]") {
  const double samples[] = {0.0,    1.0,         -1.0,     1.0 / 3.0, 0.1,
                            1e-300, 1.7976931348623157e308, 6.02214076e23,
                            -5e-324, 3.141592653589793};
  for (double x : samples) {
    const std::string s = csv_number(x);
    double y = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), y);
    REQUIRE(r.ec == std::errc());
    REQUIRE(r.ptr == s.data() + s.size());
    CHECK(std::memcmp(&x, &y, sizeof x) == 0);
  }
}
