// nhit: hit functions, boundary coefficients, Padé/Shanks resummation and
// exact Dirichlet propagators from the command line.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "nhit/errors.hpp"
#include "nhit/hitfn.hpp"
#include "nhit/oracle.hpp"
#include "nhit/pipeline.hpp"

using namespace nhit;

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;

std::vector<double> parse_list(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse number '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw DomainError("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

/// "x0,x1;z1;...;y" -> polygonal path (at least start and end).
PolygonalPath parse_path(const std::string& s) {
  std::vector<Point> pts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t\n") == std::string::npos) continue;
    pts.emplace_back(parse_list(item, ','));
  }
  if (pts.size() < 2) throw DomainError("path needs at least start and end points");
  const std::size_t D = pts.front().dim();
  for (const auto& p : pts) {
    if (p.dim() != D || D == 0) throw DomainError("path points must all have the same dimension");
  }
  Point start = pts.front(), end = pts.back();
  return PolygonalPath(start, std::vector<Point>(pts.begin() + 1, pts.end() - 1), end);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string geometry = "sphere";
  double r = 0.0, d = 1.0;
  double tmin = 0.0, tmax = 0.0;  // 0: geometry default
  int points = 25;
  std::string spacing;  // empty: geometry default
  int lmax = 3, kmax = 8;
  double rho_max = 0.0;
  double rel_tol = 1e-8;
  long qmc_points = 1L << 21;
  unsigned long long seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string method;
  // hit-eval / hit-scan
  std::string path, path_file;
  double T = 1.0;
  long mc_paths = 100'000;
  double mc_bin = 0.1;
  // pade / shanks / plot-script
  std::string coeffs, values, csv;
  int order = 3;
};

RunConfig run_config(const Options& o) {
  RunConfig c;
  if (o.geometry == "sphere") {
    c.geometry = GeometryKind::sphere;
  } else if (o.geometry == "plane") {
    c.geometry = GeometryKind::plane;
  } else {
    throw DomainError("geometry must be sphere or plane");
  }
  c.r = o.r;
  c.d = o.d;
  if (o.tmin != 0.0) c.t_min = o.tmin;
  if (o.tmax != 0.0) c.t_max = o.tmax;
  c.n_points = o.points;
  if (o.spacing == "log") {
    c.spacing = Spacing::log;
  } else if (o.spacing == "linear") {
    c.spacing = Spacing::linear;
  } else if (!o.spacing.empty()) {
    throw DomainError("spacing must be linear or log");
  }
  c.modes.l_max = o.lmax;
  c.modes.k_max = o.kmax;
  c.quad.rho_max = o.rho_max;
  c.quad.rel_tol = o.rel_tol;
  c.quad.qmc_points = o.qmc_points;
  c.quad.seed = o.seed;
  c.n_workers = o.workers;
  c.validate();
  return c;
}

/// Output stream: --out file or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot write " + path);
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct HitValue {
  double value;
  std::string note;
};

HitValue evaluate_hit(const HitQuery& q, const std::string& method, const Options& o) {
  const int D = static_cast<int>(q.path.dim());
  if (method.empty() || method == "closed") return {hit_closed(q), "closed"};
  if (method == "bromwich") {
    const auto deltas = segment_lengths(q.path);
    const auto res = hit_bromwich_detail(deltas, q.T, D);
    char note[64];
    std::snprintf(note, sizeof note, "bromwich imag=%.3g", res.imag);
    return {res.value, note};
  }
  if (method == "oracle") return {hit_by_time_quadrature(q, D), "oracle"};
  if (method == "mc") {
    McConfig mc;
    mc.n_paths = o.mc_paths;
    mc.bin_width = o.mc_bin;
    mc.seed = o.seed;
    mc.n_workers = o.workers;
    const auto e = hit_by_monte_carlo(q, D, mc);
    return {e.estimate, "mc std_error=" + format_number(e.std_error)};
  }
  throw DomainError("method must be closed, bromwich, oracle or mc");
}

PolygonalPath path_from(const Options& o) {
  if (!o.path_file.empty()) return parse_path(read_file(o.path_file));
  if (o.path.empty()) throw DomainError("hit evaluation needs --path or --path-file");
  return parse_path(o.path);
}

int cmd_hit_eval(const Options& o) {
  const HitQuery q{path_from(o), o.T};
  const HitValue v = evaluate_hit(q, o.method, o);
  Output out(o.out);
  out.os() << "D,n,T,value,method\n"
           << q.path.dim() << ',' << q.path.order() << ',' << format_number(q.T) << ',' << format_number(v.value)
           << ',' << v.note << '\n';
  return 0;
}

int cmd_hit_scan(const Options& o) {
  const PolygonalPath path = path_from(o);
  Options grid_opts = o;
  if (o.spacing.empty()) grid_opts.spacing = "linear";
  if (o.tmin == 0.0) grid_opts.tmin = 0.1;
  if (o.tmax == 0.0) grid_opts.tmax = 5.0;
  grid_opts.geometry = "plane";  // grid only; geometry is irrelevant here
  const auto grid = time_grid(run_config(grid_opts));
  Output out(o.out);
  out.os() << "T,value\n";
  for (double T : grid) out.os() << format_number(T) << ',' << format_number(evaluate_hit({path, T}, o.method, o).value) << '\n';
  return 0;
}

GeometryCase case_at(const RunConfig& c, double T) {
  if (c.geometry == GeometryKind::sphere) return SphereCase{c.r, T};
  return PlaneCase{c.d, T};
}

int cmd_coeffs(const Options& o) {
  const RunConfig c = run_config(o);
  Output out(o.out);
  out.os() << "T,n,c,method,error,evals\n";
  for (double T : time_grid(c)) {
    const auto rep = coefficient_report(case_at(c, T), 3, c.quad);
    for (int n = 0; n < 4; ++n) {
      const auto& d = rep.details[n];
      out.os() << format_number(T) << ',' << n << ',' << format_number(rep.series.values[n]) << ','
               << to_string(d.method) << ',' << format_number(d.error) << ',' << d.evals << '\n';
    }
  }
  return 0;
}

int cmd_propagator(const Options& o) {
  const RunConfig c = run_config(o);
  const auto rows = propagator_scan(c);
  Output out(o.out);
  write_scan_csv(out.os(), rows);
  if (!o.out.empty()) {
    std::ofstream meta(o.out + ".meta");
    write_scan_meta(meta, c, rows);
  }
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.coeffs) {
      std::cerr << "nhit: T=" << format_number(r.T) << ": " << r.failure << '\n';
      ++failed;
    }
  }
  return failed ? kNumericalFailure : 0;
}

int cmd_exact(const Options& o) {
  const RunConfig c = run_config(o);
  Output out(o.out);
  out.os() << "T,exact,exact_minus_free\n";
  for (double T : time_grid(c)) {
    double ex, sub;
    if (c.geometry == GeometryKind::sphere) {
      const Point x{0.0, 0.0, 0.0}, y{0.0, 0.0, c.r};
      ex = sphere_exact(x, y, T, c.modes_at(T));
      sub = ex - free_kernel(x, y, T, 3);
    } else {
      const Point p{0.0, 0.0, c.d};
      const Plane plane{Point{0.0, 0.0, 1.0}, 0.0};
      ex = plane_exact(p, p, T, plane);
      sub = -free_kernel(p, reflect_in_plane(p, plane), T, 3);
    }
    out.os() << format_number(T) << ',' << format_number(ex) << ',' << format_number(sub) << '\n';
  }
  return 0;
}

int cmd_pade(const Options& o) {
  CoefficientSeries c{parse_list(o.coeffs, ','), SeriesConvention::dirichlet_scattering};
  if (c.values.empty()) throw DomainError("pade needs --coeffs c0,c1,...");
  if (o.order < 1) throw DomainError("order must be >= 1");
  Output out(o.out);
  out.os() << "N,P_N^N\n";
  for (int N = 1; N <= o.order; ++N) {
    std::optional<double> v;
    try {
      v = diagonal_pade_strong_coupling(c, N);
    } catch (const DegenerateApproximant&) {
    }
    out.os() << N << ',' << format_number(v) << '\n';
  }
  return 0;
}

int cmd_shanks(const Options& o) {
  const auto a = parse_list(o.values, ',');
  if (a.size() < 3) throw DomainError("shanks needs at least three --values");
  Output out(o.out);
  if (a.size() == 3) {
    const ShanksPair s = shanks_s1_s2(a[0], a[1], a[2]);
    out.os() << "S1,S2,eps\n"
             << format_number(s.s1) << ',' << format_number(s.s2) << ','
             << format_number(leibniz_error(s.s1, s.s2)) << '\n';
    return 0;
  }
  out.os() << "k,shanks\n";
  const auto s = shanks(a);
  for (std::size_t k = 0; k < s.size(); ++k) out.os() << k << ',' << format_number(s[k]) << '\n';
  return 0;
}

int cmd_plot_script(const Options& o) {
  if (o.csv.empty()) throw DomainError("plot-script needs --csv");
  const std::string script = plot_script_for(o.csv);
  Output out(o.out);
  out.os() << script;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nhit: n-hit functions and Dirichlet propagators by Padé/Shanks resummation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.option_defaults()->always_capture_default();

  Options o;
  app.add_option("--geometry", o.geometry, "sphere | plane")->check(CLI::IsMember({"sphere", "plane"}));
  app.add_option("--r", o.r, "sphere: radius of y (x at the center)");
  app.add_option("--d", o.d, "plane: distance of x = y from the plane");
  app.add_option("--tmin", o.tmin, "first T (0: geometry default)");
  app.add_option("--tmax", o.tmax, "last T (0: geometry default)");
  app.add_option("--points", o.points, "number of T values");
  app.add_option("--spacing", o.spacing, "linear | log (default: log for sphere, linear for plane)");
  app.add_option("--lmax", o.lmax, "mode sum: largest l");
  app.add_option("--kmax", o.kmax, "mode sum: zeros per l (0: converged per T)");
  app.add_option("--rho-max", o.rho_max, "plane: radial cutoff (0: per-order default)");
  app.add_option("--rel-tol", o.rel_tol, "cubature relative tolerance");
  app.add_option("--qmc-points", o.qmc_points, "Sobol points per shift for the quasi-Monte Carlo fallback");
  app.add_option("--seed", o.seed, "seed for quasi-Monte Carlo shifts and Monte Carlo paths");
  app.add_option("--workers", o.workers, "threads (0: hardware concurrency)");
  app.add_option("--out", o.out, "output file (default: stdout)");
  app.add_option("--method", o.method, "hit-eval / hit-scan: closed | bromwich | oracle | mc");
  app.add_option("--path", o.path, "x;z1;...;zn;y with comma-separated coordinates");
  app.add_option("--path-file", o.path_file, "file holding a --path string");
  app.add_option("--T", o.T, "transition time for hit-eval");
  app.add_option("--mc-paths", o.mc_paths, "Monte Carlo bridges");
  app.add_option("--mc-bin", o.mc_bin, "Monte Carlo hit cube edge");
  app.add_option("--coeffs", o.coeffs, "pade: c0,c1,...");
  app.add_option("--order", o.order, "pade: largest N");
  app.add_option("--values", o.values, "shanks: sequence a0,a1,...");
  app.add_option("--csv", o.csv, "plot-script: scan CSV");

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"hit-eval", "evaluate one hit function", cmd_hit_eval},
      {"hit-scan", "hit function on a T grid", cmd_hit_scan},
      {"coeffs", "boundary coefficients c0..c3 on a T grid", cmd_coeffs},
      {"propagator", "full scan: coefficients, P_N^N, S1, S2, eps, exact", cmd_propagator},
      {"exact", "exact reference on a T grid", cmd_exact},
      {"pade", "diagonal Padé strong-coupling limits from coefficients", cmd_pade},
      {"shanks", "Shanks transform of a sequence", cmd_shanks},
      {"plot-script", "matplotlib script for a propagator CSV", cmd_plot_script},
  };
  std::map<CLI::App*, int (*)(const Options&)> dispatch;
  for (const auto& c : commands) dispatch[app.add_subcommand(c.name, c.help)->fallthrough()] = c.run;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    for (auto& [sub, run] : dispatch) {
      if (sub->parsed()) return run(o);
    }
  } catch (const DomainError& e) {
    std::cerr << "nhit: " << e.what() << '\n';
    return kConfigError;
  } catch (const SingularConfiguration& e) {
    std::cerr << "nhit: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalFailure& e) {
    std::cerr << "nhit: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kConfigError;
}
