#pragma once

#include <functional>

namespace ghmc {

struct QuadratureResult {
  double value = 0.0;
  /// Sum of the Richardson error estimates of the accepted panels.
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson quadrature of f over [a, b].
///
/// The interval is first cut into `initial_panels` equal panels (so narrow
/// peaks are not missed by the first five samples), then each panel is refined
/// recursively until |S2 - S1| <= 15 * eps_panel. Throws
/// QuadratureNotConvergedError when a branch reaches `max_depth`.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int initial_panels = 32, int max_depth = 48);

}  // namespace ghmc
