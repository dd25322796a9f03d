#include "nhit/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "nhit/errors.hpp"
#include "nhit/hitfn.hpp"

namespace nhit {

const char* const kScanColumns[13] = {"T",  "c0", "c1", "c2", "c3",  "P11",  "P22",
                                      "P33", "S1", "S2", "eps", "exact", "exact_minus_free"};

void RunConfig::validate() const {
  if (geometry == GeometryKind::sphere && !(r >= 0.0 && r < 1.0)) throw DomainError("r must lie in [0, 1)");
  if (geometry == GeometryKind::plane && !(d > 0.0)) throw DomainError("d must be > 0");
  if (n_points < 1) throw DomainError("points must be >= 1");
  if (!(tmin() > 0.0)) throw DomainError("tmin must be > 0");
  if (!(tmax() >= tmin())) throw DomainError("tmax must be >= tmin");
  modes_at(1.0).validate();
  quad.validate();
}

double RunConfig::tmin() const { return t_min.value_or(geometry == GeometryKind::sphere ? 0.02 : 0.1); }
double RunConfig::tmax() const { return t_max.value_or(geometry == GeometryKind::sphere ? 2.5 : 6.0); }
Spacing RunConfig::grid_spacing() const {
  return spacing.value_or(geometry == GeometryKind::sphere ? Spacing::log : Spacing::linear);
}

SphereModeSumConfig RunConfig::modes_at(double T) const {
  SphereModeSumConfig m = modes;
  if (m.k_max == 0) m.k_max = sphere_k_max_for(T);
  return m;
}

std::vector<double> time_grid(const RunConfig& cfg) {
  cfg.validate();
  const double a = cfg.tmin(), b = cfg.tmax();
  const int n = cfg.n_points;
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) {
    const double f = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
    t[i] = (cfg.grid_spacing() == Spacing::log) ? a * std::pow(b / a, f) : a + (b - a) * f;
  }
  if (n > 1) t.back() = b;
  return t;
}

namespace {

ScanRow compute_row(const RunConfig& cfg, double T, std::size_t index) {
  ScanRow row;
  row.T = T;
  QuadratureConfig q = cfg.quad;
  q.seed = cfg.quad.seed * 7919ULL + index;
  GeometryCase gc;
  Point x, y;
  if (cfg.geometry == GeometryKind::sphere) {
    gc = SphereCase{cfg.r, T};
    x = Point{0.0, 0.0, 0.0};
    y = Point{0.0, 0.0, cfg.r};
    row.exact = sphere_exact(x, y, T, cfg.modes_at(T));
    row.exact_minus_free = row.exact - free_kernel(x, y, T, 3);
  } else {
    gc = PlaneCase{cfg.d, T};
    x = y = Point{0.0, 0.0, cfg.d};
    const Plane plane{Point{0.0, 0.0, 1.0}, 0.0};
    row.exact = plane_exact(x, y, T, plane);
    row.exact_minus_free = -free_kernel(x, reflect_in_plane(y, plane), T, 3);
  }
  try {
    row.coeffs = coefficient_report(gc, 3, q);
    row.resummed = resum(T, row.coeffs->series, row.exact_minus_free);
  } catch (const NumericalFailure& e) {
    row.failure = e.what();
    row.resummed.T = T;
    row.resummed.exact = row.exact_minus_free;
  }
  return row;
}

}  // namespace

std::vector<ScanRow> propagator_scan(const RunConfig& cfg) {
  const std::vector<double> grid = time_grid(cfg);
  std::vector<ScanRow> rows(grid.size());
  unsigned workers = cfg.n_workers ? cfg.n_workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = compute_row(cfg, grid[i], i);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string format_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  for (int i = 0; i < 13; ++i) os << (i ? "," : "") << kScanColumns[i];
  os << '\n';
  for (const auto& r : rows) {
    std::optional<double> c[4];
    if (r.coeffs) {
      for (int n = 0; n < 4; ++n) c[n] = r.coeffs->series.values[n];
    }
    const auto& s = r.resummed;
    const std::optional<double> cols[13] = {r.T,  c[0],  c[1],  c[2], c[3],    s.p11, s.p22,
                                            s.p33, s.s1, s.s2, s.eps, r.exact, r.exact_minus_free};
    for (int i = 0; i < 13; ++i) os << (i ? "," : "") << format_number(cols[i]);
    os << '\n';
  }
}

void write_scan_meta(std::ostream& os, const RunConfig& cfg, const std::vector<ScanRow>& rows) {
  os << "geometry=" << (cfg.geometry == GeometryKind::sphere ? "sphere" : "plane") << '\n';
  if (cfg.geometry == GeometryKind::sphere) {
    os << "r=" << format_number(cfg.r) << '\n';
  } else {
    os << "d=" << format_number(cfg.d) << '\n';
  }
  os << "tmin=" << format_number(cfg.tmin()) << "\ntmax=" << format_number(cfg.tmax())
     << "\npoints=" << cfg.n_points << "\nspacing=" << (cfg.grid_spacing() == Spacing::log ? "log" : "linear")
     << "\nlmax=" << cfg.modes.l_max << "\nkmax=" << (cfg.modes.k_max ? std::to_string(cfg.modes.k_max) : "auto") << "\nrel_tol=" << format_number(cfg.quad.rel_tol)
     << "\nrho_max=" << format_number(cfg.quad.rho_max) << "\nmax_evals=" << cfg.quad.max_evals
     << "\nqmc_points=" << cfg.quad.qmc_points << "\nqmc_shifts=" << cfg.quad.qmc_shifts << "\nseed=" << cfg.quad.seed
     << "\n# T,order,method,error,evals,rho_max,cutoff_shift\n";
  for (const auto& r : rows) {
    if (!r.coeffs) {
      os << format_number(r.T) << ",,failed,,,,\"" << r.failure << "\"\n";
      continue;
    }
    for (std::size_t n = 0; n < r.coeffs->details.size(); ++n) {
      const auto& d = r.coeffs->details[n];
      os << format_number(r.T) << ',' << n << ',' << to_string(d.method) << ',' << format_number(d.error) << ','
         << d.evals << ',' << format_number(d.rho_max > 0.0 ? std::optional<double>(d.rho_max) : std::nullopt) << ','
         << format_number(d.cutoff_shift) << '\n';
    }
  }
}

std::string plot_script_for(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw DomainError("plot-script: cannot open " + csv_path);
  std::string header, first;
  if (!std::getline(in, header)) throw DomainError("plot-script: empty CSV");
  std::ostringstream want;
  for (int i = 0; i < 13; ++i) want << (i ? "," : "") << kScanColumns[i];
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != want.str()) throw DomainError("plot-script: unexpected header '" + header + "'");
  if (!std::getline(in, first) || first.empty()) throw DomainError("plot-script: CSV has no data rows");

  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
        "# Vacuum-subtracted propagator vs T from an nhit scan.\n"
        "import csv, sys\n"
        "import matplotlib.pyplot as plt\n\n"
        "path = sys.argv[1] if len(sys.argv) > 1 else "
     << '"' << csv_path << '"'
     << "\n"
        "cols = {}\n"
        "with open(path) as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        for k, v in row.items():\n"
        "            cols.setdefault(k, []).append(float(v) if v else float('nan'))\n\n"
        "T = cols['T']\n"
        "fig, ax = plt.subplots(figsize=(7, 4.5))\n"
        "ax.plot(T, cols['exact_minus_free'], 'k-', lw=2, label='exact')\n"
        "for key, colour in (('P11', 'green'), ('P22', 'orange'), ('P33', 'brown')):\n"
        "    ax.plot(T, cols[key], '--', color=colour, label=key)\n"
        "ax.plot(T, cols['S1'], '-', color='blue', label='S1')\n"
        "ax.plot(T, cols['S2'], '-', color='red', label='S2')\n"
        "lo = [s - abs(s) * e for s, e in zip(cols['S2'], cols['eps'])]\n"
        "hi = [s + abs(s) * e for s, e in zip(cols['S2'], cols['eps'])]\n"
        "ax.fill_between(T, lo, hi, color='grey', alpha=0.35, label='S2 ± eps')\n"
        "ax.set_xlabel('T')\n"
        "ax.set_ylabel('K - K0')\n"
        "ax.legend()\n"
        "fig.tight_layout()\n"
        "out = path.rsplit('.', 1)[0] + '.png'\n"
        "fig.savefig(out, dpi=150)\n"
        "print(out)\n";
  return py.str();
}

}  // namespace nhit
