#include "nhit/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "nhit/errors.hpp"

namespace nhit::quad {

namespace {

void check(const char* who, double value, double err, double l1, const Options& opt) {
  if (!std::isfinite(value)) {
    throw QuadratureFailure(std::string(who) + ": non-finite result");
  }
  const double allowed = opt.slack * std::max(opt.rel_tol * l1, opt.abs_tol);
  if (err > allowed && err > 1e-300) {
    std::ostringstream os;
    os << who << ": error estimate " << err << " exceeds tolerance " << allowed
       << " (value " << value << ")";
    throw QuadratureFailure(os.str());
  }
}

// Boost's double-exponential integrators extend their abscissa tables lazily,
// which is unsafe when an integrand itself integrates with the same object.
// Keep one integrator per nesting depth (and per thread).
template <class Integrator>
class DepthPool {
 public:
  explicit DepthPool(int arg) : arg_(arg) {}
  struct Lease {
    DepthPool& pool;
    Integrator& get() { return *pool.items_[pool.depth_ - 1]; }
    ~Lease() { --pool.depth_; }
  };
  Lease acquire() {
    if (static_cast<std::size_t>(depth_) == items_.size()) items_.push_back(std::make_unique<Integrator>(arg_));
    ++depth_;
    return Lease{*this};
  }

 private:
  int arg_;
  int depth_ = 0;
  std::vector<std::unique_ptr<Integrator>> items_;
};

template <class F>
double guarded(const char* who, F&& run) {
  try {
    return run();
  } catch (const QuadratureFailure&) {
    throw;
  } catch (const NumericalFailure&) {
    throw;
  } catch (const DomainError&) {
    throw;
  } catch (const SingularConfiguration&) {
    throw;
  } catch (const std::exception& e) {
    throw QuadratureFailure(std::string(who) + ": " + e.what());
  }
}

}  // namespace

double gk(const Integrand& f, double a, double b, const Options& opt) {
  return guarded("gauss_kronrod", [&] {
    double err = 0.0, l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, opt.max_depth, opt.rel_tol, &err, &l1);
    check("gauss_kronrod", v, err, l1, opt);
    return v;
  });
}

double tanh_sinh(const Integrand& f, double a, double b, const Options& opt) {
  return guarded("tanh_sinh", [&] {
    thread_local DepthPool<boost::math::quadrature::tanh_sinh<double>> pool(15);
    auto lease = pool.acquire();
    auto& integrator = lease.get();
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    const double v = integrator.integrate(f, a, b, opt.rel_tol, &err, &l1, &levels);
    check("tanh_sinh", v, err, l1, opt);
    return v;
  });
}

double exp_sinh(const Integrand& f, double a, const Options& opt) {
  return guarded("exp_sinh", [&] {
    thread_local DepthPool<boost::math::quadrature::exp_sinh<double>> pool(12);
    auto lease = pool.acquire();
    auto& integrator = lease.get();
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    const double v = integrator.integrate(f, a, std::numeric_limits<double>::infinity(),
                                          opt.rel_tol, &err, &l1, &levels);
    check("exp_sinh", v, err, l1, opt);
    return v;
  });
}

}  // namespace nhit::quad
