// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance and runtime budget.  Run all with no arguments or a subset
// by listing criterion numbers.

#include "conewave/bessel.hpp"
#include "conewave/cross_section.hpp"
#include "conewave/errors.hpp"
#include "conewave/geometry.hpp"
#include "conewave/index_sets.hpp"
#include "conewave/kernels.hpp"
#include "conewave/propagator.hpp"
#include "conewave/radial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace conewave;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

struct Checker {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void require_close(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            ok = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s: got %.6g want %.6g +- %.2g", what.c_str(), got,
                          want, tol);
            detail += (detail.empty() ? "" : "; ") + std::string(buf);
        }
    }
};

// ---- 1. free-space resolvent oracle ---------------------------------------
Checker criterion1() {
    Checker c;
    const auto cs = build_spectrum_sphere(2, 45);
    const double gamma = 1.2;
    double worst = 0.0;
    double ld_min = 1e300, ld_max = 0.0;
    for (double lam : {0.8, 2.0, 4.5}) {
        for (double x : {0.35, 0.5, 0.65}) {
            for (double xp : {1.1, 1.45, 1.8}) {
                const auto ks = kernels::resolvent_kernel(3, cs, lam, x, gamma, xp, 40,
                                                          kernels::ResolventSign::Outgoing);
                const double d = cone_distance_gamma(x, xp, gamma);
                ld_min = std::min(ld_min, lam * d);
                ld_max = std::max(ld_max, lam * d);
                const cplx ref = kernels::free_resolvent3(lam, d);
                worst = std::max(worst, std::abs(ks.value - ref) / std::abs(ref));
            }
        }
    }
    c.require(ld_min >= 0.5 && ld_max <= 10.0, "grid lambda*d outside [0.5, 10]");
    char buf[120];
    std::snprintf(buf, sizeof(buf), "worst rel err %.3e on 27 points, lambda*d in [%.2f, %.2f]",
                  worst, ld_min, ld_max);
    c.detail = buf;
    c.require(worst <= 1e-6, "mode sum vs e^{i lambda d}/(4 pi d) exceeded 1e-6");
    return c;
}

// ---- 2. bessel suite --------------------------------------------------------
Checker criterion2() {
    Checker c;
    using namespace conewave::bessel;
    double worst_w = 0.0;
    for (double nu = 0.0; nu <= 20.0; nu += 0.5) {
        for (double x = 0.1; x <= 100.0; x *= 1.6) {
            const auto ev = cylinder(nu, x);
            const double target = 2.0 / (kPi * x);
            worst_w = std::max(worst_w, std::abs(ev.J * ev.Yp - ev.Jp * ev.Y - target) / target);
        }
    }
    c.require(worst_w <= 1e-9, "Wronskian identity above 1e-9 relative");

    double worst_h = 0.0;
    for (double nu : {0.5, 1.5, 2.5}) {
        for (double x : {0.4, 1.3, 3.3, 9.0, 27.0}) {
            const double s = std::sin(x), co = std::cos(x);
            const double amp = std::sqrt(2.0 / (kPi * x));
            double jref, yref;
            if (nu == 0.5) {
                jref = amp * s;
                yref = -amp * co;
            } else if (nu == 1.5) {
                jref = amp * (s / x - co);
                yref = amp * (-co / x - s);
            } else {
                jref = amp * ((3.0 / (x * x) - 1.0) * s - 3.0 / x * co);
                yref = amp * ((1.0 - 3.0 / (x * x)) * co - 3.0 / x * s);
            }
            worst_h = std::max(worst_h, std::abs(bessel_j(nu, x) - jref));
            worst_h = std::max(worst_h, std::abs(bessel_y(nu, x) - yref));
        }
    }
    c.require(worst_h <= 1e-10, "half-integer closed forms above 1e-10");

    double worst_r = 0.0;
    const double h = 1e-3;
    for (double nu : {0.0, 1.3, 5.5}) {
        for (double x : {1.1, 4.4, 18.0}) {
            double fj[5], fy[5];
            for (int k = -2; k <= 2; ++k) {
                const auto ev = cylinder(nu, x + k * h);
                fj[k + 2] = ev.J;
                fy[k + 2] = ev.Y;
            }
            auto resid = [&](const double* f) {
                const double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
                const double d2 =
                    (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
                return std::abs(x * x * d2 + x * d1 + (x * x - nu * nu) * f[2]) /
                       ((1.0 + std::abs(f[2])) * x * x);
            };
            worst_r = std::max({worst_r, resid(fj), resid(fy)});
        }
    }
    c.require(worst_r <= 1e-6, "ODE residual above 1e-6");

    char buf[120];
    std::snprintf(buf, sizeof(buf), "wronskian %.2e, half-integer %.2e, ODE resid %.2e", worst_w,
                  worst_h, worst_r);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

// ---- 3. product-case equivalence -------------------------------------------
Checker criterion3() {
    Checker c;
    const auto cs = build_spectrum_sphere(2, 25);
    const auto mc = mode_constants(3, cs);
    ConformalProfile prod;
    double worst = 0.0;
    for (double lam : {1.0, 2.0, 4.0}) {
        radial::NonproductAssembler as(3, cs, prod, lam, 20, {0.3, 0.55, 0.8, 1.2, 1.6});
        for (int j = 0; j < 20; ++j) {
            for (double x : {0.3, 0.55, 0.8}) {
                for (double xp : {0.8, 1.2, 1.6}) {
                    if (x == xp) continue;
                    const cplx g = as.mode_green(j, x, xp);
                    const cplx ref = cplx(0.0, 0.5 * kPi) * std::pow(x * xp, -0.5) *
                                     bessel::bessel_j(mc.nu[j], lam * std::min(x, xp)) *
                                     bessel::hankel1(mc.nu[j], lam * std::max(x, xp));
                    worst = std::max(worst, std::abs(g - ref) / std::abs(ref));
                }
            }
        }
    }
    char buf[100];
    std::snprintf(buf, sizeof(buf), "worst rel err %.3e over 20 modes x 3 lambda", worst);
    c.detail = buf;
    c.require(worst <= 1e-6, "radial Green vs closed form exceeded 1e-6");
    return c;
}

// ---- 4. spectral-measure amplitude bound ------------------------------------
Checker criterion4() {
    Checker c;
    const auto cs = build_spectrum_sphere(2, 45);
    std::vector<radial::SamplePair> pairs;
    for (double x : {0.3, 0.35, 0.4}) {
        for (double xp : {0.28, 0.38}) {
            for (double g : {1.8, 2.4, 2.9}) pairs.push_back({x, g, xp}); // gamma < pi - 0.2
        }
    }
    const auto lams = kernels::geometric_grid(4.0, 64.0, 16);

    ConformalProfile prod;
    const auto fit_p = radial::growth_exponent_fit(3, cs, prod, lams, pairs, 40);

    ConformalProfile ex;
    ex.kind = ProfileKind::Exponential;
    ex.c = 0.1;
    ex.x_match = 1.0; // ebar = (n-1) c x_match = 0.2
    const double ebar = stability_constant(3, ex).ebar;
    const auto fit_e = radial::growth_exponent_fit(3, cs, ex, lams, pairs, 40);

    char buf[140];
    std::snprintf(buf, sizeof(buf), "product slope %.4f, ebar=%.2f profile slope %.4f",
                  fit_p.slope, ebar, fit_e.slope);
    c.detail = buf;
    c.require_close(fit_p.slope, 2.0, 0.1, "product slope != n-1 +- 0.1");
    c.require(fit_e.slope <= 2.0 + 0.5 * ebar + 0.1, "profile slope above n-1+e/2+0.1");
    return c;
}

// ---- 5. dispersive decay ------------------------------------------------------
Checker criterion5() {
    Checker c;
    const auto cs = build_spectrum_sphere(2, 45);
    const std::vector<double> xs = {0.15, 0.25, 0.38, 0.5, 0.62};
    const std::vector<double> gammas = {0.3, 0.8, 1.4, 2.1, 2.7}; // < pi - 0.2
    const auto ts = kernels::geometric_grid(0.02, 1.0, 10);

    propagator::EngineOptions opt;
    opt.eps = 2e-3;
    opt.lambda_max = 90.0;
    opt.threads = 4;
    const auto eng = propagator::SchrodingerEngine::product(3, cs, 40, xs, ts, opt);
    const auto fit = propagator::dispersive_fit(eng, gammas);

    ConformalProfile ex;
    ex.kind = ProfileKind::Exponential;
    ex.c = 0.1;
    ex.x_match = 1.0;
    const double ebar = stability_constant(3, ex).ebar;
    propagator::EngineOptions opt_np;
    opt_np.eps = 1e-2;
    opt_np.lambda_max = 40.0;
    opt_np.threads = 4;
    opt_np.radial_J = 20;
    const auto eng_np =
        propagator::SchrodingerEngine::nonproduct(3, cs, ex, xs, ts, opt_np);
    const auto fit_np = propagator::dispersive_fit(eng_np, gammas);
    double comp_min = 1e300, comp_max = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double v = fit_np.sup_abs[i] * std::pow(ts[i], 1.5 + 0.25 * ebar);
        comp_min = std::min(comp_min, v);
        comp_max = std::max(comp_max, v);
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "product alpha %.4f; profile alpha %.4f, sup*t^(n/2+e/4) span %.3g..%.3g",
                  fit.alpha, fit_np.alpha, comp_min, comp_max);
    c.detail = buf;
    c.require_close(fit.alpha, -1.5, 0.1, "product alpha != -n/2 +- 0.1");
    c.require(fit_np.alpha >= -(1.5 + 0.25 * ebar) - 0.1,
              "profile decay worse than t^{-n/2-e/4} beyond tolerance");
    c.require(comp_max <= 2.0 * comp_min,
              "sup|K| t^{n/2+e/4} not bounded across the t grid");
    return c;
}

// ---- 6. unitarity and low-energy boundedness ---------------------------------
Checker criterion6() {
    Checker c;
    const auto cs = build_spectrum_sphere(2, 16);
    std::vector<double> xgrid;
    for (int i = 1; i <= 900; ++i) xgrid.push_back(16.0 * i / 900);
    propagator::RadialEvolution ev(3, cs, {1.0, 0.3}, xgrid, 30.0, 1e-4, 1.0);
    double worst = 0.0;
    for (double t : {0.1, 0.5, 1.0}) {
        const auto u = ev.evolve(t);
        worst = std::max(worst, std::abs(ev.l2_norm(u) - 1.0));
    }
    c.require(worst <= 0.01, "unitarity violated beyond 1%");

    propagator::EngineOptions opt;
    opt.eps = 1e-3;
    opt.lambda_max = 20.0;
    opt.cut = propagator::SpectralCut::LowOnly;
    const std::vector<double> xs = {0.3, 0.7, 1.2, 1.8};
    const std::vector<double> ts = {0.0, 0.1, 0.5, 1.0};
    const auto eng = propagator::SchrodingerEngine::product(3, cs, 12, xs, ts, opt);
    double diag0 = 0.0;
    for (int a = 0; a < 4; ++a)
        diag0 = std::max(diag0, std::abs(eng.kernel(0, a, 0.0, a).value));
    double sup = 0.0;
    for (int it = 0; it < 4; ++it) {
        for (int a = 0; a < 4; ++a) {
            for (int b = a; b < 4; ++b) {
                for (double g : {0.0, 0.9, 1.7, 2.6}) {
                    sup = std::max(sup, std::abs(eng.kernel(it, a, g, b).value));
                }
            }
        }
    }
    c.require(sup <= 1.05 * diag0, "low-energy part not uniformly L1->Linf bounded");
    char buf[120];
    std::snprintf(buf, sizeof(buf), "norm dev %.4f%%, low sup %.4g <= 1.05*diag %.4g",
                  100.0 * worst, sup, 1.05 * diag0);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

// ---- 7. Strichartz sanity ------------------------------------------------------
Checker criterion7() {
    Checker c;
    const auto cs = build_spectrum_sphere(2, 4);
    std::vector<double> xgrid;
    for (int i = 1; i <= 900; ++i) xgrid.push_back(16.0 * i / 900);
    std::vector<double> tg;
    for (int i = 0; i <= 32; ++i) tg.push_back(i / 32.0);
    std::vector<double> norms;
    for (double w : {0.2, 0.3, 0.45}) {
        propagator::RadialEvolution ev(3, cs, {1.0, w}, xgrid, 30.0, 1e-4, 1.0);
        norms.push_back(propagator::strichartz_norm(ev, 2.0, 6.0, 3, tg));
    }
    const double mean = (norms[0] + norms[1] + norms[2]) / 3.0;
    double dev = 0.0;
    for (double n : norms) dev = std::max(dev, std::abs(n - mean) / mean);
    char buf[140];
    std::snprintf(buf, sizeof(buf), "L2L6 norms %.4f %.4f %.4f (spread %.1f%%)", norms[0],
                  norms[1], norms[2], 100.0 * dev);
    c.detail = buf;
    c.require(dev <= 0.2, "constant not stable within +-20% across bump widths");
    c.require(norms[0] > 0.0 && norms[2] > 0.0, "norms must be finite and positive");

    c.require(propagator::loss_exponent(3, 2.0, 0.0) == 0.0, "k(e=0) != 0");
    c.require(std::abs(propagator::loss_exponent(3, 2.0, 1.0) - 1.0 / 7.0) < 1e-15,
              "k(n=3,q=2,e=1) != 1/7");
    c.require(std::abs(propagator::loss_exponent(4, 8.0, 0.5) -
                       0.5 / (8.0 * (4.0 + 0.25))) < 1e-15,
              "loss exponent formula mismatch");
    return c;
}

// ---- 8. index-set suite ---------------------------------------------------------
Checker criterion8() {
    Checker c;
    // Closure-axiom validation.
    c.require(!IndexSet::from_entries({{1.0, 1}}, 6.0).validate(), "k-lowering not enforced");
    c.require(!IndexSet::from_entries({{1.0, 0}}, 6.0).validate(), "shift closure not enforced");
    c.require(IndexSet::natural(0.0, 6.0).validate(), "natural ladder must validate");

    // Commutativity/associativity over small sets.
    std::mt19937_64 rng(12345);
    const double zs[] = {0.0, 0.5, 1.0, 1.5, 2.0};
    auto random_set = [&]() {
        std::uniform_int_distribution<int> nent(0, 3), zi(0, 4), ki(0, 2);
        std::vector<IndexEntry> es;
        const int n = nent(rng);
        for (int i = 0; i < n; ++i) es.push_back({zs[zi(rng)], ki(rng)});
        return IndexSet::from_entries(es, 4.0).closure_completed();
    };
    bool algebra_ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = random_set(), b = random_set(), d = random_set();
        algebra_ok = algebra_ok && same_entries(ext_union(a, b), ext_union(b, a));
        algebra_ok = algebra_ok &&
                     same_entries(ext_union(ext_union(a, b), d), ext_union(a, ext_union(b, d)));
    }
    c.require(algebra_ok, "ext_union commutativity/associativity failed");

    // hat E_b for the n = 3 sphere.
    std::vector<IndexEntry> roots;
    for (int l = 0; l < 6; ++l) roots.push_back({l + 0.5, 0});
    const auto fam = parametrix_family(IndexSet::from_entries(roots, 6.0));
    c.require(fam.hat_set.contains(1.5, 1), "hat E_b missing (3/2, 1)");
    c.require(std::abs(fam.hat_set.inf() - 0.5) < 1e-12, "inf hat E_b != n/2 - 1");
    c.require(std::abs(fam.check_set.inf() - 0.5) < 1e-12, "inf check E_b != n/2 - 1");

    // Composition precondition enforcement.
    auto closed = [&](std::vector<IndexEntry> es) {
        return IndexSet::from_entries(std::move(es), 6.0).closure_completed();
    };
    IndexFamily e;
    e.lb = closed({{0.5, 0}});
    e.rb = closed({{0.2, 0}});
    e.bf = closed({{0.0, 0}});
    e.bf0 = closed({{0.0, 0}});
    IndexFamily f = e;
    f.lb = closed({{-0.5, 0}});
    bool threw = false;
    try {
        compose(e, f);
    } catch (const invalid_parameter&) {
        threw = true;
    }
    c.require(threw, "composition precondition Re(E_rb + F_lb) > 0 not enforced");
    e.rb = closed({{1.0, 0}});
    bool ok2 = true;
    try {
        compose(e, f);
    } catch (...) {
        ok2 = false;
    }
    c.require(ok2, "legal composition rejected");
    if (c.detail.empty()) c.detail = "closure, algebra, hat family, composition all hold";
    return c;
}

// ---- 9. geometry suite ------------------------------------------------------------
Checker criterion9() {
    Checker c;
    const auto sph = build_spectrum_sphere(2, 4);
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> ur(0.0, 3.0), uth(0.0, kPi), uph(0.0, 2 * kPi);
    auto embed = [](const ConePoint& p) {
        return std::array<double, 3>{p.x * std::sin(p.y[0]) * std::cos(p.y[1]),
                                     p.x * std::sin(p.y[0]) * std::sin(p.y[1]),
                                     p.x * std::cos(p.y[0])};
    };
    double worst_flat = 0.0;
    bool triangle_ok = true;
    for (int i = 0; i < 10000; ++i) {
        const ConePoint a{ur(rng), {uth(rng), uph(rng)}};
        const ConePoint b{ur(rng), {uth(rng), uph(rng)}};
        const ConePoint d{ur(rng), {uth(rng), uph(rng)}};
        const auto ea = embed(a), eb = embed(b);
        const double de = std::sqrt((ea[0] - eb[0]) * (ea[0] - eb[0]) +
                                    (ea[1] - eb[1]) * (ea[1] - eb[1]) +
                                    (ea[2] - eb[2]) * (ea[2] - eb[2]));
        const double ab = cone_distance(3, sph, a, b);
        worst_flat = std::max(worst_flat, std::abs(ab - de) / std::max(1.0, de));
        const double bd = cone_distance(3, sph, b, d);
        const double ad = cone_distance(3, sph, a, d);
        triangle_ok = triangle_ok && (ad <= ab + bd + 1e-12);
    }
    c.require(worst_flat <= 1e-12, "cone over S^2 vs flat R^3 above 1e-12");
    c.require(triangle_ok, "triangle inequality violated");

    double worst_flow = 0.0;
    for (double s = 0.2; s < kPi; s += 0.37) {
        for (double sp = 0.15; sp < kPi; sp += 0.41) {
            const auto f = flow_point(sph, {kPi / 2, 0.3}, 0.7, s, sp);
            worst_flow = std::max(worst_flow,
                                  std::abs(f.tau * f.tau + f.mu_abs * f.mu_abs - 1.0));
            worst_flow = std::max(worst_flow,
                                  std::abs(f.rho_tilde - std::sin(s) / std::sin(sp)));
            worst_flow = std::max(worst_flow, std::abs(f.tau + std::cos(s)));
            worst_flow = std::max(worst_flow, std::abs(f.taup - std::cos(sp)));
        }
    }
    c.require(worst_flow <= 1e-12, "Legendrian flow-point identities above 1e-12");
    char buf[120];
    std::snprintf(buf, sizeof(buf), "flat %.2e, flow %.2e, 10^4 triangle triples ok", worst_flat,
                  worst_flow);
    if (c.detail.empty()) c.detail = buf;
    return c;
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<Checker()> fn;
};
} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "free-space resolvent oracle (J=40, rel <= 1e-6)", 10.0, criterion1},
        {2, "bessel suite (Wronskian, half-integer, ODE residual)", 5.0, criterion2},
        {3, "product-case equivalence radial vs closed form (1e-6)", 60.0, criterion3},
        {4, "spectral-measure amplitude bound (slopes)", 600.0, criterion4},
        {5, "dispersive decay (alpha, compensated bound)", 900.0, criterion5},
        {6, "unitarity and low-energy boundedness", 600.0, criterion6},
        {7, "Strichartz sanity (L2L6, loss exponent)", 600.0, criterion7},
        {8, "index-set suite", 5.0, criterion8},
        {9, "geometry suite", 60.0, criterion9},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& cr : all) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), cr.id) == selected.end()) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Checker c;
        try {
            c = cr.fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > cr.budget_seconds) {
            c.ok = false;
            c.detail += "; exceeded runtime budget";
        }
        std::printf("[%s] criterion %d: %s (%.1f s) -- %s\n", c.ok ? "PASS" : "FAIL", cr.id,
                    cr.title, secs, c.detail.c_str());
        if (!c.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
