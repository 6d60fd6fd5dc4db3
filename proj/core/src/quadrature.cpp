#include "ghmc/quadrature.hpp"

#include <cmath>
#include <string>

#include "ghmc/errors.hpp"

namespace ghmc {

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

class Simpson {
 public:
  Simpson(const std::function<double(double)>& f, int max_depth) : f_(f), max_depth_(max_depth) {}

  double eval(double x) {
    ++evaluations_;
    return f_(x);
  }

  double refine(const Panel& p, double eps, int depth) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    const double delta = left + right - p.whole;
    if (std::abs(delta) <= 15.0 * eps) {
      error_ += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth_) {
      throw QuadratureNotConvergedError("adaptive_simpson: depth limit reached on [" +
                                        std::to_string(p.a) + ", " + std::to_string(p.b) + "]");
    }
    return refine({p.a, m, p.fa, flm, p.fm, left}, 0.5 * eps, depth + 1) +
           refine({m, p.b, p.fm, frm, p.fb, right}, 0.5 * eps, depth + 1);
  }

  long evaluations() const { return evaluations_; }
  double error() const { return error_; }

 private:
  const std::function<double(double)>& f_;
  int max_depth_;
  long evaluations_ = 0;
  double error_ = 0.0;
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int initial_panels, int max_depth) {
  if (!(b > a)) return {};
  if (initial_panels < 1) initial_panels = 1;
  Simpson simpson(f, max_depth);
  const double width = (b - a) / initial_panels;
  const double eps = abs_tol / initial_panels;
  double total = 0.0;
  double fa = simpson.eval(a);
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : lo + width;
    const double mid = 0.5 * (lo + hi);
    const double fm = simpson.eval(mid);
    const double fb = simpson.eval(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson.refine({lo, hi, fa, fm, fb, whole}, eps, 0);
    fa = fb;
  }
  return {total, simpson.error(), simpson.evaluations()};
}

}  // namespace ghmc
