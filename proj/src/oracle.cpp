#include "nhit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "nhit/errors.hpp"
#include "nhit/quadrature.hpp"

namespace nhit {

double hit_by_time_quadrature(const HitQuery& q, int D, double rel_tol) {
  if (q.path.dim() != static_cast<std::size_t>(D)) throw DomainError("time quadrature: dimension mismatch");
  const std::size_t n = q.path.order();
  if (n > 3) throw DomainError("time quadrature: limited to n <= 3");
  if (!(q.T > 0.0)) return 0.0;
  const std::vector<double> deltas = segment_lengths(q.path);

  // G_k(t) = ∫_0^t dτ G_{k-1}(τ) K_0(Δ_{k+1}; t - τ), G_0(t) = K_0(Δ_1; t).
  // Each inner level is ten times tighter than the one enclosing it but is
  // not checked on its own: near τ = 0 or for short segments tanh-sinh's
  // estimate is pessimistic on the inner integrals, while their residual
  // noise shows up in the error estimate of the outermost integral, which is
  // checked against rel_tol.
  std::function<double(std::size_t, double)> G = [&](std::size_t k, double t) -> double {
    if (k == 0) return free_kernel_r(deltas[0], t, D);
    auto f = [&, k, t](double tau) { return G(k - 1, tau) * free_kernel_r(deltas[k], t - tau, D); };
    quad::Options opt;
    opt.rel_tol = std::max(rel_tol * std::pow(10.0, static_cast<double>(k) - static_cast<double>(n)), 1e-12);
    if (k < n) opt.abs_tol = std::numeric_limits<double>::infinity();
    return quad::tanh_sinh(f, 0.0, t, opt);
  };
  return G(n, q.T);
}

void McConfig::validate() const {
  if (n_paths < 1) throw DomainError("McConfig: n_paths must be >= 1");
  if (n_steps < 2) throw DomainError("McConfig: n_steps must be >= 2");
  if (!(bin_width > 0.0)) throw DomainError("McConfig: bin_width must be > 0");
}

namespace {

constexpr long kBlock = 4096;

struct BlockSums {
  double sum = 0.0, sum2 = 0.0;
  long hits = 0;
};

}  // namespace

McEstimate hit_by_monte_carlo(const HitQuery& q, int D, const McConfig& cfg) {
  cfg.validate();
  if (q.path.dim() != static_cast<std::size_t>(D)) throw DomainError("monte carlo: dimension mismatch");
  const std::size_t n = q.path.order();
  if (n > 2) throw DomainError("monte carlo: limited to n <= 2");
  const double T = q.T;
  if (!(T > 0.0)) return {0.0, 0.0, 0.0, 0};

  const Point& x = q.path.start();
  const Point& y = q.path.end();
  const double k0 = free_kernel(x, y, T, D);
  const int steps = cfg.n_steps;
  const double dt = T / steps;
  const double half = 0.5 * cfg.bin_width;
  const double inv_vol = std::pow(cfg.bin_width, -D);

  const long n_blocks = (cfg.n_paths + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(n_blocks);

  auto run_block = [&](long b) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::vector<double> pos(D);
    BlockSums s;
    const long first = b * kBlock, last = std::min(cfg.n_paths, first + kBlock);
    for (long p = first; p < last; ++p) {
      for (int d = 0; d < D; ++d) pos[d] = x[d];
      double t_prev = 0.0;
      // acc[k]: time-ordered occupation integral of the first k boxes.
      double acc[3] = {1.0, 0.0, 0.0};
      for (int j = 0; j < steps; ++j) {
        const double t = (j + 0.5) * dt;
        const double remaining = T - t_prev;
        const double frac = (t - t_prev) / remaining;
        const double sd = std::sqrt(2.0 * (t - t_prev) * (T - t) / remaining);
        for (int d = 0; d < D; ++d) pos[d] += frac * (y[d] - pos[d]) + sd * normal(rng);
        t_prev = t;
        for (std::size_t k = n; k >= 1; --k) {
          const Point& z = q.path.intermediates()[k - 1];
          bool inside = true;
          for (int d = 0; d < D && inside; ++d) inside = std::abs(pos[d] - z[d]) <= half;
          if (inside) acc[k] += acc[k - 1] * dt * inv_vol;
        }
      }
      const double v = acc[n];
      s.sum += v;
      s.sum2 += v * v;
      if (v != 0.0) ++s.hits;
    }
    blocks[b] = s;
  };

  unsigned workers = cfg.n_workers ? cfg.n_workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, n_blocks));
  if (workers <= 1) {
    for (long b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long b = w; b < n_blocks; b += workers) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  BlockSums total;
  for (const auto& s : blocks) {
    total.sum += s.sum;
    total.sum2 += s.sum2;
    total.hits += s.hits;
  }
  if (n > 0 && total.hits == 0) {
    throw NumericalFailure("monte carlo: no path visited the bins; increase bin_width or n_paths");
  }
  const double N = static_cast<double>(cfg.n_paths);
  const double mean = total.sum / N;
  const double var = std::max(0.0, total.sum2 / N - mean * mean) * N / std::max(1.0, N - 1.0);
  return {k0 * mean, k0 * std::sqrt(var / N), mean, total.hits};
}

}  // namespace nhit
