#include "conewave/cross_section.hpp"
#include "conewave/errors.hpp"

#include <cmath>
#include <cstdio>

namespace conewave {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sphere_volume(int m) {
    // Vol(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2)
    return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double sphere_multiplicity(int m, int l) {
    if (l == 0) return 1.0;
    if (m == 1) return 2.0; // S^1: e^{+-il theta}
    // (2l+m-1) (l+m-2)! / (l! (m-1)!)
    double r = 2.0 * l + m - 1.0;
    for (int i = 1; i <= m - 2; ++i) r *= (l + i) / static_cast<double>(i);
    return r / (m - 1.0);
}
} // namespace

std::string CrossSection::describe() const {
    char buf[64];
    if (kind == CrossSectionKind::Circle) {
        std::snprintf(buf, sizeof(buf), "circle(L=%.6g)", circle_length);
    } else {
        std::snprintf(buf, sizeof(buf), "round_sphere(m=%d)", sphere_dim);
    }
    return buf;
}

CrossSection build_spectrum_circle(double length, int J) {
    if (length <= 0.0) throw invalid_parameter("build_spectrum: circle length must be positive");
    if (J < 1) throw invalid_parameter("build_spectrum: J must be >= 1");
    CrossSection cs;
    cs.kind = CrossSectionKind::Circle;
    cs.circle_length = length;
    cs.truncation = J;
    for (int k = 0; k < J; ++k) {
        const double s = 2.0 * kPi * k / length;
        cs.eigenvalues.push_back(s * s);
        cs.multiplicities.push_back(k == 0 ? 1 : 2);
    }
    return cs;
}

CrossSection build_spectrum_sphere(int m, int J) {
    if (m < 1) throw invalid_parameter("build_spectrum: sphere dimension must be >= 1");
    if (J < 1) throw invalid_parameter("build_spectrum: J must be >= 1");
    CrossSection cs;
    cs.kind = CrossSectionKind::RoundSphere;
    cs.sphere_dim = m;
    cs.truncation = J;
    for (int l = 0; l < J; ++l) {
        cs.eigenvalues.push_back(static_cast<double>(l) * (l + m - 1.0));
        const double mult = sphere_multiplicity(m, l);
        cs.multiplicities.push_back(static_cast<int>(std::lround(mult)));
    }
    return cs;
}

CrossSection build_spectrum(CrossSectionKind kind, double param, int J) {
    if (kind == CrossSectionKind::Circle) return build_spectrum_circle(param, J);
    const int m = static_cast<int>(std::lround(param));
    if (std::abs(param - m) > 1e-12)
        throw invalid_parameter("build_spectrum: sphere dimension must be an integer");
    return build_spectrum_sphere(m, J);
}

double legendre_p(int l, double x) {
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 1; k < l; ++k) {
        const double pn = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pn;
    }
    return p;
}

double gegenbauer_c(int l, double alpha, double x) {
    if (l == 0) return 1.0;
    double cm1 = 1.0, c = 2.0 * alpha * x;
    for (int k = 1; k < l; ++k) {
        const double cn = (2.0 * (k + alpha) * x * c - (k + 2.0 * alpha - 1.0) * cm1) / (k + 1.0);
        cm1 = c;
        c = cn;
    }
    return c;
}

double projection_kernel(const CrossSection& cs, int j, double gamma) {
    if (j < 0 || j >= cs.truncation)
        throw invalid_parameter("projection_kernel: mode index out of range");
    if (cs.kind == CrossSectionKind::Circle) {
        const double L = cs.circle_length;
        if (j == 0) return 1.0 / L;
        return (2.0 / L) * std::cos(2.0 * kPi * j * gamma / L);
    }
    const int m = cs.sphere_dim;
    if (m == 1) {
        // S^1 is the circle of length 2 pi.
        if (j == 0) return 1.0 / (2.0 * kPi);
        return std::cos(j * gamma) / kPi;
    }
    const double cg = std::cos(gamma);
    if (m == 2) return (2.0 * j + 1.0) / (4.0 * kPi) * legendre_p(j, cg);
    const double alpha = 0.5 * (m - 1);
    return (2.0 * j + m - 1.0) / (m - 1.0) * gegenbauer_c(j, alpha, cg) / sphere_volume(m);
}

ModeConstants mode_constants(int n, const CrossSection& cs) {
    if (n < 3) throw invalid_parameter("mode_constants: cone dimension must be >= 3");
    ModeConstants mc;
    mc.n = n;
    const double half = 0.5 * n - 1.0;
    for (double s2 : cs.eigenvalues) {
        mc.nu.push_back(std::sqrt(half * half + s2));
        mc.im_lambda.push_back(std::sqrt((1.0 - 0.5 * n) * (1.0 - 0.5 * n) + s2));
    }
    return mc;
}

bool ConformalProfile::is_product() const {
    return kind == ProfileKind::Constant || c == 0.0;
}

double ConformalProfile::a(double x) const {
    const double xm = std::min(x, x_match);
    switch (kind) {
        case ProfileKind::Constant:
            return 1.0;
        case ProfileKind::Exponential:
            return std::exp(c * xm);
        case ProfileKind::PolyBump: {
            const double s = xm / x_match;
            return 1.0 + c * s * s * (3.0 - 2.0 * s); // C^1 smoothstep ramp
        }
    }
    return 1.0;
}

double ConformalProfile::aprime(double x) const {
    // At x_match itself use the left branch so that sup x e(x) over the
    // closed interval sees the matching-point value.
    if (x > x_match) return 0.0;
    switch (kind) {
        case ProfileKind::Constant:
            return 0.0;
        case ProfileKind::Exponential:
            return c * std::exp(c * x);
        case ProfileKind::PolyBump: {
            const double s = x / x_match;
            return c * 6.0 * s * (1.0 - s) / x_match;
        }
    }
    return 0.0;
}

std::string ConformalProfile::describe() const {
    char buf[96];
    switch (kind) {
        case ProfileKind::Constant:
            return "constant";
        case ProfileKind::Exponential:
            std::snprintf(buf, sizeof(buf), "exponential(c=%.6g,x_match=%.6g)", c, x_match);
            return buf;
        case ProfileKind::PolyBump:
            std::snprintf(buf, sizeof(buf), "poly_bump(c=%.6g,x_match=%.6g)", c, x_match);
            return buf;
    }
    return "?";
}

StabilityResult stability_constant(int n, const ConformalProfile& profile) {
    if (n < 3) throw invalid_parameter("stability_constant: cone dimension must be >= 3");
    if (profile.x_match <= 0.0)
        throw invalid_parameter("stability_constant: x_match must be positive");
    StabilityResult res;
    const ConformalProfile prof = profile;
    res.e = [prof, n](double x) { return (n - 1.0) * prof.aprime(x) / prof.a(x); };

    // sup of x e(x) over [0, x_match]: coarse pass, then two refinements down
    // to step x_match/4096.
    const double xm = profile.x_match;
    auto xe = [&](double x) { return x * res.e(x); };
    double best_x = 0.0, best = 0.0; // x e vanishes at x = 0
    const int coarse = 256;
    for (int i = 0; i <= coarse; ++i) {
        const double x = xm * i / coarse;
        const double v = xe(x);
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    for (int level = 1; level <= 2; ++level) {
        const double step = xm / (level == 1 ? 1024.0 : 4096.0);
        const double lo = std::max(0.0, best_x - 8.0 * step);
        const double hi = std::min(xm, best_x + 8.0 * step);
        for (double x = lo; x <= hi + 0.5 * step; x += step) {
            const double v = xe(std::min(x, xm));
            if (v > best) {
                best = v;
                best_x = std::min(x, xm);
            }
        }
    }
    res.ebar = best;
    if (res.ebar >= n - 1.0) {
        throw numerical_error("cross_section", "stability_constant",
                              "stability violated: sup x e(x) >= n-1");
    }
    return res;
}

} // namespace conewave
