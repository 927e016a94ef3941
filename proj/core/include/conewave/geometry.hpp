#ifndef CONEWAVE_GEOMETRY_HPP
#define CONEWAVE_GEOMETRY_HPP

#include "conewave/cross_section.hpp"

#include <array>

namespace conewave {

// A point of the cone C = [0, inf) x Y.  The cross-section coordinates are
// kind-dependent: arclength position for the circle, polar/azimuth (theta,
// phi) for the round 2-sphere.  x = 0 is the tip regardless of y.
struct ConePoint {
    double x = 0.0;
    std::array<double, 2> y{0.0, 0.0};
};

// Geodesic distance in (Y, h0).  Circle(L): min arc, in [0, L/2].
// Sphere(2): great-circle angle in [0, pi], computed with atan2 for accuracy
// near 0 and pi.
double cross_distance(const CrossSection& cs, const std::array<double, 2>& y,
                      const std::array<double, 2>& yp);

// Cone distance:
//   d_Y < pi : sqrt(x^2 + x'^2 - 2 x x' cos d_Y)   (law of cosines)
//   d_Y >= pi: x + x'                              (path through the tip)
// Continuous across d_Y = pi.
double cone_distance(int n, const CrossSection& cs, const ConePoint& z, const ConePoint& zp);

// Same formula with the cross-section distance supplied directly.
double cone_distance_gamma(double x, double xp, double gamma);

// True iff a geometric geodesic (missing the tip) joins the two points,
// i.e. d_Y(y, y') < pi.
bool is_geometric(const CrossSection& cs, const std::array<double, 2>& y,
                  const std::array<double, 2>& yp);

// A sampled point of the geometric Legendrian, parametrized by (s, s'):
//   tau = -cos s, tau' = cos s', rho_tilde = sin s / sin s',
//   |mu| = sin s, |mu'| = sin s', and tau^2 + |mu|^2 = 1.
struct FlowPoint {
    double s = 0.0;
    double sp = 0.0;
    double rho_tilde = 0.0;
    double tau = 0.0;
    double taup = 0.0;
    double mu_abs = 0.0;
    double mup_abs = 0.0;
    std::array<double, 2> y{0.0, 0.0};  // y(s) on the h0-geodesic from (y0, mu0)
    std::array<double, 2> yp{0.0, 0.0}; // y'(s')
};

// Both points travel the unit-speed h0-geodesic from y0 with initial
// direction mu0hat (an angle in the tangent plane for the sphere; +-1 for the
// circle).  s' = 0 with s != 0 is the projective-coordinate singularity.
FlowPoint flow_point(const CrossSection& cs, const std::array<double, 2>& y0,
                     double mu0hat, double s, double sp);

} // namespace conewave

#endif
