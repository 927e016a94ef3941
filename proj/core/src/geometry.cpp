#include "conewave/geometry.hpp"
#include "conewave/errors.hpp"

#include <cmath>

namespace conewave {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::array<double, 3> sphere_embed(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double sphere_angle(const std::array<double, 2>& y, const std::array<double, 2>& yp) {
    const auto u = sphere_embed(y[0], y[1]);
    const auto v = sphere_embed(yp[0], yp[1]);
    const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    const std::array<double, 3> cr{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                   u[0] * v[1] - u[1] * v[0]};
    const double cn = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
    return std::atan2(cn, dot);
}
} // namespace

double cross_distance(const CrossSection& cs, const std::array<double, 2>& y,
                      const std::array<double, 2>& yp) {
    if (cs.kind == CrossSectionKind::Circle || cs.sphere_dim == 1) {
        const double L = (cs.kind == CrossSectionKind::Circle) ? cs.circle_length : 2.0 * kPi;
        double d = std::fmod(std::abs(y[0] - yp[0]), L);
        return std::min(d, L - d);
    }
    if (cs.sphere_dim != 2)
        throw invalid_parameter("cross_distance: point geometry only for circle and S^2");
    return sphere_angle(y, yp);
}

double cone_distance_gamma(double x, double xp, double gamma) {
    if (gamma >= kPi) return x + xp;
    // (x - x')^2 + 4 x x' sin^2(gamma/2), stable near gamma = 0.
    const double s = std::sin(0.5 * gamma);
    const double dx = x - xp;
    return std::sqrt(dx * dx + 4.0 * x * xp * s * s);
}

double cone_distance(int /*n*/, const CrossSection& cs, const ConePoint& z, const ConePoint& zp) {
    const double gamma = cross_distance(cs, z.y, zp.y);
    return cone_distance_gamma(z.x, zp.x, gamma);
}

bool is_geometric(const CrossSection& cs, const std::array<double, 2>& y,
                  const std::array<double, 2>& yp) {
    return cross_distance(cs, y, yp) < kPi;
}

FlowPoint flow_point(const CrossSection& cs, const std::array<double, 2>& y0, double mu0hat,
                     double s, double sp) {
    if (sp == 0.0 && s != 0.0) {
        throw numerical_error("geometry", "flow_point",
                              "projective-coordinate singularity at s' = 0");
    }
    FlowPoint f;
    f.s = s;
    f.sp = sp;
    f.tau = -std::cos(s);
    f.taup = std::cos(sp);
    f.mu_abs = std::sin(s);
    f.mup_abs = std::sin(sp);
    f.rho_tilde = (sp == 0.0) ? 0.0 : std::sin(s) / std::sin(sp);

    auto geodesic = [&](double arc) -> std::array<double, 2> {
        if (cs.kind == CrossSectionKind::Circle || cs.sphere_dim == 1) {
            const double L = (cs.kind == CrossSectionKind::Circle) ? cs.circle_length : 2.0 * kPi;
            double pos = std::fmod(y0[0] + (mu0hat >= 0.0 ? arc : -arc), L);
            if (pos < 0.0) pos += L;
            return {pos, 0.0};
        }
        if (cs.sphere_dim != 2)
            throw invalid_parameter("flow_point: point geometry only for circle and S^2");
        // Rotate y0 by angle `arc` along the great circle with initial bearing
        // mu0hat (angle from the local meridian direction).
        const auto p = sphere_embed(y0[0], y0[1]);
        // Local orthonormal frame at y0: e_theta, e_phi.
        const std::array<double, 3> et{std::cos(y0[0]) * std::cos(y0[1]),
                                       std::cos(y0[0]) * std::sin(y0[1]), -std::sin(y0[0])};
        const std::array<double, 3> ep{-std::sin(y0[1]), std::cos(y0[1]), 0.0};
        std::array<double, 3> dir{};
        for (int i = 0; i < 3; ++i) dir[i] = std::cos(mu0hat) * et[i] + std::sin(mu0hat) * ep[i];
        std::array<double, 3> q{};
        for (int i = 0; i < 3; ++i) q[i] = std::cos(arc) * p[i] + std::sin(arc) * dir[i];
        const double theta = std::acos(std::clamp(q[2], -1.0, 1.0));
        const double phi = std::atan2(q[1], q[0]);
        return {theta, phi};
    };
    f.y = geodesic(s);
    f.yp = geodesic(sp);
    return f;
}

} // namespace conewave
