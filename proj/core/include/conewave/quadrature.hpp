#ifndef CONEWAVE_QUADRATURE_HPP
#define CONEWAVE_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace conewave::quad {

struct Grid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite Gauss-Legendre panels on [a, b].  The panel width at position x
// is budget / rate(x) for the affine rate c0 + c1 x (the local phase rate of
// the integrand), so each panel sees a bounded phase increment.
Grid oscillatory_panels(double a, double b, double rate_c0, double rate_c1, double budget,
                        int points_per_panel, std::size_t max_nodes);

// Plain composite Gauss-Legendre with fixed panel count.
Grid uniform_panels(double a, double b, int panels, int points_per_panel);

// C^inf transition: 1 for u <= 0, 0 for u >= 1, strictly decreasing between.
double smooth_step_down(double u);

} // namespace conewave::quad

#endif
