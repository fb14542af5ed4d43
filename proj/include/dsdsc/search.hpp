#ifndef DSDSC_SEARCH_HPP
#define DSDSC_SEARCH_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dsdsc {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section minimization of a unimodal scalar function on [lo, hi],
/// stopping when the bracket is narrower than `xtol`.
template <typename F>
ScalarOptimum golden_section_min(F&& f, double lo, double hi, double xtol,
                                 int max_iter = 200) {
  constexpr double inv_phi = 0.6180339887498948482045868;
  double a = lo;
  double b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  return fc < fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

template <typename F>
ScalarOptimum golden_section_max(F&& f, double lo, double hi, double xtol,
                                 int max_iter = 200) {
  auto neg = [&f](double x) { return -f(x); };
  ScalarOptimum r = golden_section_min(neg, lo, hi, xtol, max_iter);
  return ScalarOptimum{r.x, -r.value};
}

/// Bisection root find on [lo, hi]; f(lo) and f(hi) must have opposite
/// signs. Stops on |f| <= ftol or a bracket narrower than xtol.
template <typename F>
double bisect_root(F&& f, double lo, double hi, double xtol, double ftol,
                   int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw std::invalid_argument("bisect_root: root not bracketed");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= ftol || (hi - lo) <= xtol) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace dsdsc

#endif  // DSDSC_SEARCH_HPP
