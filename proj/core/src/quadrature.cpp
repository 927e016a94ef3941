#include "conewave/quadrature.hpp"
#include "conewave/errors.hpp"

#include <cmath>

namespace conewave::quad {

namespace {
// 10-point Gauss-Legendre on [-1, 1].
constexpr double kGlNode[10] = {
    -0.9739065285171717, -0.8650633666889845, -0.6794095682990244, -0.4333953941292472,
    -0.1488743389816312, 0.1488743389816312,  0.4333953941292472,  0.6794095682990244,
    0.8650633666889845,  0.9739065285171717};
constexpr double kGlWeight[10] = {
    0.0666713443086881, 0.1494513491505806, 0.2190863625159820, 0.2692667193099963,
    0.2955242247147529, 0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

// 16-point Gauss-Legendre on [-1, 1].
constexpr double kGlNode16[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGlWeight16[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

void append_panel(Grid& g, double lo, double hi, int pts) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double* xn = (pts == 16) ? kGlNode16 : kGlNode;
    const double* wn = (pts == 16) ? kGlWeight16 : kGlWeight;
    const int npt = (pts == 16) ? 16 : 10;
    for (int i = 0; i < npt; ++i) {
        g.nodes.push_back(mid + half * xn[i]);
        g.weights.push_back(half * wn[i]);
    }
}
} // namespace

Grid oscillatory_panels(double a, double b, double rate_c0, double rate_c1, double budget,
                        int points_per_panel, std::size_t max_nodes) {
    if (b <= a) throw invalid_parameter("oscillatory_panels: need a < b");
    Grid g;
    double x = a;
    while (x < b) {
        const double rate = std::max(rate_c0 + rate_c1 * x, 1e-3);
        const double w = std::min(budget / rate, b - x);
        append_panel(g, x, x + w, points_per_panel);
        x += w;
        if (g.nodes.size() > max_nodes) {
            throw numerical_error("propagator", "schrodinger_kernel",
                                  "resolution: quadrature step too coarse a budget for requested t");
        }
    }
    return g;
}

Grid uniform_panels(double a, double b, int panels, int points_per_panel) {
    Grid g;
    const double w = (b - a) / panels;
    for (int i = 0; i < panels; ++i) append_panel(g, a + i * w, a + (i + 1) * w, points_per_panel);
    return g;
}

double smooth_step_down(double u) {
    if (u <= 0.0) return 1.0;
    if (u >= 1.0) return 0.0;
    const double pa = std::exp(-1.0 / (1.0 - u));
    const double pb = std::exp(-1.0 / u);
    return pa / (pa + pb);
}

} // namespace conewave::quad
