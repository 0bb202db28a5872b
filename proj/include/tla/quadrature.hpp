#pragma once

#include <functional>

namespace tla {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b] to an absolute tolerance.
double integrate(const RealFn& f, double a, double b, double abs_tol);

// Same, but first cut [a, b] into equal panels no wider than max_panel.
// Used for integrands that oscillate many times over the interval.
double integrate_panels(const RealFn& f, double a, double b, double max_panel,
                        double abs_tol);

}  // namespace tla
