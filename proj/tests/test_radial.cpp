#include "conewave/radial.hpp"
#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace conewave;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

ConformalProfile product_profile() {
    ConformalProfile p;
    p.kind = ProfileKind::Constant;
    p.x_match = 1.0;
    return p;
}

ConformalProfile exp_profile(double c) {
    ConformalProfile p;
    p.kind = ProfileKind::Exponential;
    p.c = c;
    p.x_match = 1.0;
    return p;
}
} // namespace

TEST_CASE("product case: mode Green functions equal the Bessel/Hankel closed form") {
    const auto cs = build_spectrum_sphere(2, 25);
    const auto mc = mode_constants(3, cs);
    for (double lam : {1.0, 2.0, 4.0}) {
        radial::NonproductAssembler as(3, cs, product_profile(), lam, 20, {0.3, 0.7, 1.4});
        for (int j = 0; j < 20; ++j) {
            for (double x : {0.3, 0.7}) {
                for (double xp : {0.7, 1.4}) {
                    if (x == xp) continue;
                    const cplx g = as.mode_green(j, x, xp);
                    const cplx ref = cplx(0.0, 0.5 * kPi) * std::pow(x * xp, -0.5) *
                                     bessel::bessel_j(mc.nu[j], lam * std::min(x, xp)) *
                                     bessel::hankel1(mc.nu[j], lam * std::max(x, xp));
                    CHECK(std::abs(g - ref) <= 1e-6 * std::abs(ref));
                }
            }
        }
    }
}

TEST_CASE("product equivalence in other dimensions and over circle links") {
    // n = 4 and n = 5 over S^2, and n = 3 over a circle of irrational angle:
    // the weight powers and the non-half-integer orders all come into play.
    struct Case {
        int n;
        CrossSection cs;
    };
    const std::vector<Case> cases = {
        {4, build_spectrum_sphere(2, 12)},
        {5, build_spectrum_sphere(2, 12)},
        {3, build_spectrum_circle(2.0 * kPi * 1.2, 12)},
    };
    for (const auto& cse : cases) {
        const auto mc = mode_constants(cse.n, cse.cs);
        radial::NonproductAssembler as(cse.n, cse.cs, product_profile(), 2.0, 8, {0.4, 1.3});
        for (int j = 0; j < 8; ++j) {
            const cplx g = as.mode_green(j, 0.4, 1.3);
            const cplx ref = cplx(0.0, 0.5 * kPi) * std::pow(0.4 * 1.3, -0.5 * (cse.n - 2)) *
                             bessel::bessel_j(mc.nu[j], 2.0 * 0.4) *
                             bessel::hankel1(mc.nu[j], 2.0 * 1.3);
            CHECK(std::abs(g - ref) <= 1e-6 * std::abs(ref));
        }
    }
}

TEST_CASE("j = 0, n = 3 regular solution is sin(lambda x)/x up to scale") {
    const auto cs = build_spectrum_sphere(2, 4);
    const auto spec = radial::make_spec(3, cs, product_profile(), 0, 1.0);
    const auto pair = radial::solve_pair(spec, 2.0);
    const double x0 = pair.grid.front();
    cplx u0, u0p, u, up;
    pair.eval_reg(x0, u0, u0p);
    for (double x : {0.4, 0.9, 1.7}) {
        pair.eval_reg(x, u, up);
        const double want = (std::sin(x) / x) / (std::sin(x0) / x0);
        CHECK(std::abs(u / u0 - want) <= 1e-8 * std::abs(want));
    }
}

TEST_CASE("outgoing data is the exact weighted Hankel function beyond x_match") {
    const auto cs = build_spectrum_sphere(2, 6);
    const auto prof = exp_profile(0.1);
    const auto spec = radial::make_spec(3, cs, prof, 2, 1.5);
    const auto pair = radial::solve_pair(spec, 2.5);
    // nu_tilde uses the matched constant a_inf.
    const double a_inf = prof.a_inf();
    CHECK(pair.nu_tilde ==
          doctest::Approx(std::sqrt(0.25 + cs.eigenvalues[2] / (a_inf * a_inf))));
    cplx u, up;
    for (double x : {1.2, 1.8, 2.4}) {
        pair.eval_out(x, u, up);
        const cplx want = std::pow(x, -0.5) * bessel::hankel1(pair.nu_tilde, 1.5 * x);
        CHECK(std::abs(u * pair.out_scale - want) <= 1e-8 * std::abs(want));
    }
}

TEST_CASE("Wronskian conservation across profiles") {
    const auto cs = build_spectrum_sphere(2, 10);
    for (const auto& prof : {product_profile(), exp_profile(0.1), exp_profile(-0.08)}) {
        for (int j : {0, 3, 7}) {
            const auto spec = radial::make_spec(3, cs, prof, j, 2.0);
            const auto pair = radial::solve_pair(spec, 2.0);
            CHECK(pair.wronskian_drift <= 1e-7);
        }
    }
}

TEST_CASE("Frobenius exponent of the regular solution") {
    const auto cs = build_spectrum_sphere(2, 10);
    const auto mc = mode_constants(3, cs);
    for (int j : {0, 2, 5}) {
        const auto spec = radial::make_spec(3, cs, exp_profile(0.1), j, 1.0);
        const auto pair = radial::solve_pair(spec, 2.0);
        // Fit the slope of log u against log x on the 10 smallest grid points.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < 10; ++i) {
            const double lx = std::log(pair.grid[i]);
            const double ly = std::log(std::abs(pair.u_reg[i]));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (10 * sxy - sx * sy) / (10 * sxx - sx * sx);
        const double want = mc.nu[j] - 0.5; // nu_j - (n-2)/2
        CHECK(std::abs(slope - want) <= 0.02 * std::max(1.0, want));
    }
}

TEST_CASE("mode Green function solves the ODE away from the source point") {
    const auto cs = build_spectrum_sphere(2, 6);
    const auto prof = exp_profile(0.1);
    const double lam = 1.5;
    const auto spec = radial::make_spec(3, cs, prof, 1, lam);
    const double xp = 1.3;
    const double h = 1e-3;
    // Put every stencil point on the solver grid so no interpolation error
    // enters the finite differences.
    radial::SolveOptions opts;
    opts.extra_points.push_back(xp);
    for (double x : {0.4, 0.8, 1.7}) {
        for (int k = -2; k <= 2; ++k) opts.extra_points.push_back(x + k * h);
    }
    const auto pair = radial::solve_pair(spec, 2.0, opts);
    for (double x : {0.4, 0.8, 1.7}) {
        cplx f[5];
        for (int k = -2; k <= 2; ++k) f[k + 2] = radial::green_mode(pair, x + k * h, xp);
        const cplx d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12 * h);
        const cplx d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12 * h * h);
        // (L_j - lambda^2) G = -G'' - ((n-1) + x e)/x G' + (sigma^2/(a^2 x^2) - lambda^2) G
        const double a = prof.a(x);
        const double e = 2.0 * prof.aprime(x) / a;
        const cplx resid = -d2 - ((2.0 + x * e) / x) * d1 +
                           (cs.eigenvalues[1] / (a * a * x * x) - lam * lam) * f[2];
        CHECK(std::abs(resid) <= 1e-4 * (1.0 + std::abs(f[2])));
    }
}

TEST_CASE("Green function symmetry and resonance guard") {
    const auto cs = build_spectrum_sphere(2, 6);
    radial::NonproductAssembler as(3, cs, exp_profile(0.1), 2.0, 4, {0.3, 1.2});
    CHECK(as.mode_green(2, 0.3, 1.2) == as.mode_green(2, 1.2, 0.3));

    // A synthetic degenerate pair triggers the resonance error.
    const auto spec = radial::make_spec(3, cs, product_profile(), 0, 1.0);
    auto pair = radial::solve_pair(spec, 2.0);
    pair.W = cplx(1e-300, 0.0);
    CHECK_THROWS_AS(radial::green_mode(pair, 0.4, 1.1), numerical_error);
}

TEST_CASE("order overflow is rejected, not degraded") {
    const auto cs = build_spectrum_sphere(2, 64);
    // Mode 61 of the sphere has nu = 61.5 > 60.
    const auto spec = radial::make_spec(3, cs, product_profile(), 61, 1.0);
    CHECK_THROWS_AS(radial::solve_pair(spec, 2.0), numerical_error);
}

TEST_CASE("assembled non-product kernel: product limit and conjugation") {
    const auto cs = build_spectrum_sphere(2, 25);
    // Product profile agrees with the closed-form kernel.
    const auto ak =
        radial::assemble_nonproduct(3, cs, product_profile(), 2.0, 0.4, 0.7, 1.1, 20);
    const auto ref = kernels::resolvent_kernel(3, cs, 2.0, 0.4, 0.7, 1.1, 20,
                                               kernels::ResolventSign::Outgoing);
    CHECK(std::abs(ak.resolvent_out - ref.value) <= 1e-6 * std::abs(ref.value));
    CHECK(ak.spectral_measure ==
          doctest::Approx(2.0 * 2.0 / kPi * ak.resolvent_out.imag()).epsilon(1e-14));

    // Incoming solve yields the conjugate mode Green function.
    const auto spec = radial::make_spec(3, cs, exp_profile(0.1), 1, 2.0);
    radial::SolveOptions oin;
    oin.outgoing = false;
    const auto pin = radial::solve_pair(spec, 2.0, oin);
    const auto pout = radial::solve_pair(spec, 2.0);
    const cplx gin = radial::green_mode(pin, 0.4, 1.1);
    const cplx gout = radial::green_mode(pout, 0.4, 1.1);
    CHECK(std::abs(gin - std::conj(gout)) <= 1e-9 * std::abs(gout));
}

TEST_CASE("first-order response to the conformal perturbation is linear") {
    const auto cs = build_spectrum_sphere(2, 10);
    const double lam = 2.0, x = 0.4, g = 0.7, xp = 1.1;
    const cplx k0 =
        radial::assemble_nonproduct(3, cs, product_profile(), lam, x, g, xp, 8).resolvent_out;
    const cplx k1 =
        radial::assemble_nonproduct(3, cs, exp_profile(1e-3), lam, x, g, xp, 8).resolvent_out;
    const cplx k2 =
        radial::assemble_nonproduct(3, cs, exp_profile(5e-4), lam, x, g, xp, 8).resolvent_out;
    const double ratio = std::abs(k1 - k0) / std::abs(k2 - k0);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("growth fit input validation") {
    const auto cs = build_spectrum_sphere(2, 10);
    std::vector<radial::SamplePair> pairs{{0.3, 1.0, 0.4}};
    CHECK_THROWS_AS(
        radial::growth_exponent_fit(3, cs, product_profile(), {1.0, 2.0}, pairs, 8),
        invalid_parameter);
    // J too small for the requested lambda range -> truncation error.
    const auto lams = kernels::geometric_grid(4.0, 64.0, 8);
    CHECK_THROWS_AS(radial::growth_exponent_fit(3, cs, product_profile(), lams, pairs, 8),
                    numerical_error);
}
