#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nhit/errors.hpp"
#include "nhit/pipeline.hpp"

using namespace nhit;
using doctest::Approx;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("time grids") {
  RunConfig c;
  auto g = time_grid(c);
  REQUIRE(g.size() == 25);
  CHECK(g.front() == 0.02);
  CHECK(g.back() == 2.5);
  CHECK(g[1] / g[0] == Approx(g[24] / g[23]));
  c.geometry = GeometryKind::plane;
  g = time_grid(c);
  CHECK(g.front() == Approx(0.1));
  CHECK(g.back() == 6.0);
  CHECK(g[1] - g[0] == Approx(g[24] - g[23]));
  c.n_points = 1;
  CHECK(time_grid(c).size() == 1);
  c.n_points = 0;
  CHECK_THROWS_AS(time_grid(c), DomainError);
  c.n_points = 5;
  c.t_min = 0.0;
  CHECK_THROWS_AS(time_grid(c), DomainError);
  c.t_min = 3.0;
  c.t_max = 2.0;
  CHECK_THROWS_AS(time_grid(c), DomainError);
  RunConfig s;
  s.r = 1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 1e-300}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(std::nullopt).empty());
  CHECK(format_number(NAN).empty());
}

TEST_CASE("sphere scan CSV") {
  RunConfig c;
  c.n_points = 5;
  c.modes.k_max = 0;
  const auto rows = propagator_scan(c);
  std::ostringstream os;
  write_scan_csv(os, rows);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "T,c0,c1,c2,c3,P11,P22,P33,S1,S2,eps,exact,exact_minus_free");
  int n = 0;
  while (std::getline(in, line)) {
    const auto f = split(line);
    REQUIRE(f.size() == 13);
    for (const auto& x : f) CHECK(!x.empty());
    const double s2 = std::stod(f[9]), ex = std::stod(f[12]);
    CHECK(std::abs(s2 - ex) <= std::max(0.06 * std::abs(ex), 1e-6));
    ++n;
  }
  CHECK(n == 5);

  // identical configuration, identical bytes, whatever the thread count
  c.n_workers = 1;
  std::ostringstream a;
  write_scan_csv(a, propagator_scan(c));
  c.n_workers = 3;
  std::ostringstream b;
  write_scan_csv(b, propagator_scan(c));
  CHECK(a.str() == b.str());
  CHECK(a.str() == os.str());

  std::ostringstream meta;
  write_scan_meta(meta, c, rows);
  CHECK(meta.str().find("geometry=sphere") != std::string::npos);
  CHECK(meta.str().find("kmax=auto") != std::string::npos);
}

TEST_CASE("failed rows leave empty fields") {
  ScanRow r;
  r.T = 1.0;
  r.failure = "test";
  r.exact = 0.5;
  r.exact_minus_free = -0.1;
  std::ostringstream os;
  write_scan_csv(os, {r});
  CHECK(os.str().find("\n1,,,,,,,,,,,0.5,-0.10000000000000001\n") != std::string::npos);
}

TEST_CASE("plot script") {
  const std::string path = "pipeline_test_scan.csv";
  {
    RunConfig c;
    c.n_points = 2;
    std::ofstream f(path);
    write_scan_csv(f, propagator_scan(c));
  }
  const std::string py = plot_script_for(path);
  CHECK(py.find("matplotlib") != std::string::npos);
  CHECK(py.find("'S2'") != std::string::npos);
  CHECK(py.find("fill_between") != std::string::npos);
  { std::ofstream f(path); }
  CHECK_THROWS_AS(plot_script_for(path), DomainError);
  {
    std::ofstream f(path);
    f << "T,c0,c1,c2,c3,P11,P22,P33,S1,S2,eps,exact,exact_minus_free\n";
  }
  CHECK_THROWS_AS(plot_script_for(path), DomainError);
  {
    std::ofstream f(path);
    f << "a,b\n1,2\n";
  }
  CHECK_THROWS_AS(plot_script_for(path), DomainError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(plot_script_for("no_such_file.csv"), DomainError);
}
