#include "conewave/radial.hpp"
#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/geometry.hpp"
#include "conewave/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace conewave::radial {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMaxOrder = 60.0;

using cplx = std::complex<double>;

// Cubic Hermite interpolation of (v, v') on a grid.
void eval_hermite(const std::vector<double>& grid, const std::vector<cplx>& v,
                  const std::vector<cplx>& vp, double x, cplx& u, cplx& up) {
    if (x < grid.front() - 1e-12 || x > grid.back() + 1e-12)
        throw invalid_parameter("radial: evaluation point outside the solved grid");
    auto it = std::lower_bound(grid.begin(), grid.end(), x);
    std::size_t i1 = std::min<std::size_t>(it - grid.begin(), grid.size() - 1);
    if (i1 == 0) i1 = 1;
    const std::size_t i0 = i1 - 1;
    const double h = grid[i1] - grid[i0];
    const double t = (x - grid[i0]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    u = h00 * v[i0] + h10 * h * vp[i0] + h01 * v[i1] + h11 * h * vp[i1];
    const double g00 = (6 * t2 - 6 * t) / h, g10 = 3 * t2 - 4 * t + 1;
    const double g01 = (6 * t - 6 * t2) / h, g11 = 3 * t2 - 2 * t;
    up = g00 * v[i0] + g10 * vp[i0] + g01 * v[i1] + g11 * vp[i1];
}

struct State {
    cplx u;
    cplx up;
};

// Dormand-Prince 5(4) step for u'' = f(x, u, u').
class Dopri5 {
public:
    Dopri5(const RadialOperatorSpec& spec, double rel_tol)
        : spec_(spec), rtol_(rel_tol) {}

    // Integrates from x to x_end (either direction), returning the state at
    // x_end.  h_hint carries the step size across calls.
    State integrate(State y, double x, double x_end, double& h_hint) const {
        const double dir = (x_end > x) ? 1.0 : -1.0;
        double h = (h_hint > 0.0) ? dir * h_hint : dir * 1e-4 * std::abs(x_end - x);
        if (h == 0.0) h = dir * 1e-8;
        int rejected_in_a_row = 0;
        while (dir * (x_end - x) > 0.0) {
            if (dir * (x + h) > dir * x_end) h = x_end - x;
            State ynew;
            double err = step(y, x, h, ynew);
            if (err <= 1.0) {
                x += h;
                y = ynew;
                rejected_in_a_row = 0;
            } else if (++rejected_in_a_row > 2000) {
                throw numerical_error("radial", "solve_pair", "step control stalled");
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            const double hmin = std::abs(x) * 1e-14 + 1e-300;
            if (std::abs(h) < hmin) h = dir * hmin;
        }
        h_hint = std::abs(h);
        return y;
    }

private:
    std::array<cplx, 2> f(double x, const State& s) const {
        return {s.up, spec_.rhs(x, s.u, s.up)};
    }

    double step(const State& y, double x, double h, State& out) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        const auto k1 = f(x, y);
        const auto k2 = f(x + c2 * h, adv(y, h, {1.0 / 5}, {k1}));
        const auto k3 = f(x + c3 * h, adv(y, h, {3.0 / 40, 9.0 / 40}, {k1, k2}));
        const auto k4 = f(x + c4 * h, adv(y, h, {44.0 / 45, -56.0 / 15, 32.0 / 9}, {k1, k2, k3}));
        const auto k5 = f(x + c5 * h,
                          adv(y, h, {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
                              {k1, k2, k3, k4}));
        const auto k6 =
            f(x + h, adv(y, h,
                         {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
                         {k1, k2, k3, k4, k5}));
        const State y5 = adv(y, h, {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
                             {k1, k2, k3, k4, k5, k6});
        const auto k7 = f(x + h, y5);
        const State y4 = adv(y, h,
                             {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200,
                              187.0 / 2100, 1.0 / 40},
                             {k1, k2, k3, k4, k5, k6, k7});
        out = y5;
        const double e0 = std::abs(y5.u - y4.u) / tolscale(y.u, y5.u);
        const double e1 = std::abs(y5.up - y4.up) / tolscale(y.up, y5.up);
        return std::max(e0, e1);
    }

    double tolscale(cplx a, cplx b) const {
        return 1e-300 + rtol_ * std::max(std::abs(a), std::abs(b));
    }

    static State adv(const State& y, double h, std::initializer_list<double> coeff,
                     std::initializer_list<std::array<cplx, 2>> ks) {
        State s = y;
        auto ci = coeff.begin();
        for (const auto& k : ks) {
            s.u += h * (*ci) * k[0];
            s.up += h * (*ci) * k[1];
            ++ci;
        }
        return s;
    }

    const RadialOperatorSpec& spec_;
    double rtol_;
};

// Frobenius data at x0 for the regular solution (two correction terms):
//   u = x^s (1 + c1 x + c2 x^2), s = nu - (n-2)/2, normalized by x0^{-s}.
void frobenius_init(const RadialOperatorSpec& spec, double x0, State& y) {
    const int n = spec.n;
    const double s = spec.nu - 0.5 * (n - 2);
    // Local expansions at 0: e(x) = e0 + e1 x + ...,  a(x)^{-2} = 1 + p1 x + p2 x^2 + ...
    // Both families have a(0) = 1.
    double e0 = 0.0, e1 = 0.0, p1 = 0.0, p2 = 0.0;
    const ConformalProfile& pr = spec.profile;
    if (pr.kind == ProfileKind::Exponential) {
        // a = exp(cx): e = (n-1)c, a^{-2} = exp(-2cx)
        e0 = (n - 1.0) * pr.c;
        e1 = 0.0;
        p1 = -2.0 * pr.c;
        p2 = 2.0 * pr.c * pr.c;
    } else if (pr.kind == ProfileKind::PolyBump) {
        // a = 1 + c(3 s^2 - 2 s^3), s = x/x_match: a'(0) = 0, a''(0) = 6c/x_match^2
        const double app = 6.0 * pr.c / (pr.x_match * pr.x_match);
        e0 = 0.0;
        e1 = (n - 1.0) * app; // e = (n-1) a''(0) x + O(x^2)
        p1 = 0.0;
        p2 = -app;
    }
    const double sig2 = spec.sigma2;
    const double lam2 = spec.lambda * spec.lambda;
    const double nu = spec.nu;
    const double c1 = (sig2 * p1 - e0 * s) / (1.0 + 2.0 * nu);
    const double c2 =
        -(e1 * s + e0 * (s + 1.0) * c1 + lam2 - sig2 * (p1 * c1 + p2)) / (4.0 * (1.0 + nu));
    const double poly = 1.0 + c1 * x0 + c2 * x0 * x0;
    const double dpoly = c1 + 2.0 * c2 * x0;
    y.u = cplx(poly, 0.0);
    y.up = cplx(s / x0 * poly + dpoly, 0.0);
}

void hankel_init(const RadialOperatorSpec& spec, double nu_tilde, double x_max, bool outgoing,
                 State& y) {
    const int n = spec.n;
    const double lam = spec.lambda;
    const double z = lam * x_max;
    const auto ev = bessel::cylinder(nu_tilde, z);
    cplx H(ev.J, ev.Y);
    cplx Hp(ev.Jp, ev.Yp);
    if (!outgoing) {
        H = std::conj(H);
        Hp = std::conj(Hp);
    }
    const double pf = std::pow(x_max, -0.5 * (n - 2));
    y.u = pf * H;
    y.up = -0.5 * (n - 2) / x_max * pf * H + pf * lam * Hp;
}

} // namespace

double RadialOperatorSpec::weight(double x) const {
    return std::pow(x * profile.a(x), n - 1.0);
}

cplx RadialOperatorSpec::rhs(double x, cplx u, cplx up) const {
    const double a = profile.a(x);
    const double e = (n - 1.0) * profile.aprime(x) / a;
    const double lam2 = lambda * lambda;
    return -((n - 1.0) + x * e) / x * up + (sigma2 / (a * a * x * x) - lam2) * u;
}

RadialOperatorSpec make_spec(int n, const CrossSection& cs, const ConformalProfile& profile,
                             int j, double lambda) {
    if (j < 0 || j >= cs.truncation) throw invalid_parameter("make_spec: mode index out of range");
    RadialOperatorSpec spec;
    spec.n = n;
    spec.j = j;
    spec.sigma2 = cs.eigenvalues[j];
    spec.nu = mode_constants(n, cs).nu[j];
    spec.profile = profile;
    spec.lambda = lambda;
    return spec;
}

void RadialSolutionPair::eval_reg(double x, cplx& u, cplx& up) const {
    eval_hermite(grid, u_reg, u_reg_p, x, u, up);
}

void RadialSolutionPair::eval_out(double x, cplx& u, cplx& up) const {
    if (x < grid[out_start] - 1e-12)
        throw invalid_parameter("radial: u_out evaluated below its inward sweep stop");
    eval_hermite(grid, u_out, u_out_p, x, u, up);
}

RadialSolutionPair solve_pair(const RadialOperatorSpec& spec, double x_max,
                              const SolveOptions& opts) {
    if (spec.nu > kMaxOrder)
        throw numerical_error("radial", "solve_pair", "order overflow: nu_j > 60");
    if (x_max < spec.profile.x_match)
        throw invalid_parameter("solve_pair: x_max must be >= x_match");
    if (opts.grid_size < 512) throw invalid_parameter("solve_pair: grid_size must be >= 512");

    RadialSolutionPair pair;
    pair.spec = spec;
    const int n = spec.n;
    const double s = spec.nu - 0.5 * (n - 2);
    const double a_inf = spec.profile.a_inf();
    pair.nu_tilde = std::sqrt(0.25 * (n - 2.0) * (n - 2.0) + spec.sigma2 / (a_inf * a_inf));

    // Start point: x_max/grid_size * 1e-2, floored so (x_max/x0)^s stays in range.
    double x0 = x_max / opts.grid_size * 1e-2;
    if (s > 1.0) x0 = std::max(x0, x_max * std::pow(10.0, -260.0 / s));

    // Geometric grid from x0 to x_max plus any requested sample points.
    std::vector<double> grid;
    grid.reserve(opts.grid_size + opts.extra_points.size() + 1);
    const double ratio = std::log(x_max / x0) / (opts.grid_size - 1);
    for (int i = 0; i < opts.grid_size; ++i) grid.push_back(x0 * std::exp(ratio * i));
    grid.back() = x_max;
    for (double xp : opts.extra_points) {
        if (xp <= 1.0001 * x0 || xp > x_max)
            throw invalid_parameter("solve_pair: extra point outside (x0, x_max]");
        grid.push_back(xp);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               grid.end());
    pair.grid = grid;

    const std::size_t m = grid.size();
    pair.u_reg.resize(m);
    pair.u_reg_p.resize(m);
    pair.u_out.resize(m);
    pair.u_out_p.resize(m);

    const Dopri5 rk(spec, opts.rel_tol);

    // Large solution magnitudes (x^{+-s} behaviour) are rescaled by a power
    // of two so the Wronskian stays in range; Green values are scale-free.
    auto rescale = [](std::vector<cplx>& v, std::vector<cplx>& vp, std::size_t lo,
                      std::size_t hi) -> double {
        double peak = 0.0;
        for (std::size_t i = lo; i < hi; ++i) peak = std::max(peak, std::abs(v[i]));
        if (peak < 1e120) return 1.0;
        int expo = 0;
        std::frexp(peak, &expo);
        const double scale = std::ldexp(1.0, expo);
        for (std::size_t i = lo; i < hi; ++i) {
            v[i] /= scale;
            vp[i] /= scale;
        }
        return scale;
    };

    // Regular solution: outward sweep.
    {
        State y;
        frobenius_init(spec, x0, y);
        double x = x0;
        double h = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (grid[i] > x) y = rk.integrate(y, x, grid[i], h);
            x = grid[i];
            pair.u_reg[i] = y.u;
            pair.u_reg_p[i] = y.up;
        }
        pair.reg_scale = rescale(pair.u_reg, pair.u_reg_p, 0, m);
    }
    // Outgoing (or incoming) solution: inward sweep from x_max.
    {
        pair.out_start = 0;
        if (opts.x_out_min > 0.0) {
            while (pair.out_start + 1 < m && grid[pair.out_start + 1] <= opts.x_out_min)
                ++pair.out_start;
        }
        State y;
        hankel_init(spec, pair.nu_tilde, x_max, opts.outgoing, y);
        double x = x_max;
        double h = 0.0;
        for (std::size_t i = m; i-- > pair.out_start;) {
            if (grid[i] < x) y = rk.integrate(y, x, grid[i], h);
            x = grid[i];
            pair.u_out[i] = y.u;
            pair.u_out_p[i] = y.up;
        }
        pair.out_scale = rescale(pair.u_out, pair.u_out_p, pair.out_start, m);
    }

    // Conserved Wronskian and its drift along the common part of the grid.
    std::vector<cplx> wr;
    wr.reserve(m - pair.out_start);
    for (std::size_t i = pair.out_start; i < m; ++i) {
        wr.push_back(spec.weight(grid[i]) *
                     (pair.u_reg[i] * pair.u_out_p[i] - pair.u_reg_p[i] * pair.u_out[i]));
    }
    pair.W = wr[wr.size() / 2];
    double drift = 0.0;
    for (const auto& w : wr) drift = std::max(drift, std::abs(w - pair.W));
    pair.wronskian_drift = drift / std::abs(pair.W);
    if (pair.wronskian_drift > 1e-6) {
        throw numerical_error("radial", "solve_pair", "Wronskian drift exceeds 1e-6");
    }
    return pair;
}

std::complex<double> green_mode(const RadialSolutionPair& pair, double x, double xp) {
    const double xlo = std::min(x, xp), xhi = std::max(x, xp);
    cplx ur, urp, uo, uop;
    pair.eval_reg(xlo, ur, urp);
    pair.eval_out(xhi, uo, uop);
    // Degeneracy of W relative to the local solution scale.
    const double scale =
        pair.spec.weight(xhi) * (std::abs(ur) * std::abs(uop) + std::abs(urp) * std::abs(uo));
    if (std::abs(pair.W) < 1e-12 * scale) {
        throw numerical_error("radial", "green_mode", "resonance: degenerate Wronskian");
    }
    return -ur * uo / pair.W;
}

AssembledKernel assemble_nonproduct(int n, const CrossSection& cs, const ConformalProfile& profile,
                                    double lambda, double x, double gamma, double xp, int J) {
    NonproductAssembler as(n, cs, profile, lambda, J, {x, xp});
    AssembledKernel out;
    out.resolvent_out = as.resolvent(x, gamma, xp);
    out.spectral_measure = 2.0 * lambda / kPi * out.resolvent_out.imag();
    return out;
}

NonproductAssembler::NonproductAssembler(int n, const CrossSection& cs,
                                         const ConformalProfile& profile, double lambda, int J,
                                         const std::vector<double>& x_samples, double x_max)
    : n_(n), cs_(cs), lambda_(lambda), J_(J) {
    if (J < 1 || J > cs.truncation)
        throw invalid_parameter("NonproductAssembler: J out of range for the cross-section");
    if (x_samples.empty()) throw invalid_parameter("NonproductAssembler: need sample points");
    double xm = profile.x_match;
    double xlo = x_samples.front();
    for (double x : x_samples) {
        xm = std::max(xm, x);
        xlo = std::min(xlo, x);
    }
    if (x_max > 0.0) xm = std::max(xm, x_max);
    xm *= 1.25;
    modes_.reserve(J);
    for (int j = 0; j < J; ++j) {
        SolveOptions opts;
        opts.extra_points = x_samples;
        opts.x_out_min = 0.5 * xlo;
        modes_.push_back(solve_pair(make_spec(n, cs, profile, j, lambda), xm, opts));
    }
}

std::complex<double> NonproductAssembler::resolvent(double x, double gamma, double xp) const {
    cplx sum(0.0, 0.0);
    for (int j = 0; j < J_; ++j) {
        sum += projection_kernel(cs_, j, gamma) * green_mode(modes_[j], x, xp);
    }
    return sum;
}

double NonproductAssembler::spectral_measure(double x, double gamma, double xp) const {
    return 2.0 * lambda_ / kPi * resolvent(x, gamma, xp).imag();
}

std::complex<double> NonproductAssembler::mode_green(int j, double x, double xp) const {
    return green_mode(modes_[j], x, xp);
}

GrowthFit growth_exponent_fit(int n, const CrossSection& cs, const ConformalProfile& profile,
                              const std::vector<double>& lambda_list,
                              const std::vector<SamplePair>& pairs, int J) {
    if (lambda_list.size() < 8)
        throw invalid_parameter("growth_exponent_fit: need at least 8 lambda points");
    for (std::size_t i = 1; i < lambda_list.size(); ++i) {
        if (lambda_list[i] <= lambda_list[i - 1])
            throw invalid_parameter("growth_exponent_fit: lambda list must increase");
    }
    GrowthFit fit;
    fit.lambdas = lambda_list;
    const ModeConstants mc = mode_constants(n, cs);
    // Convergence guard: the largest retained order must dominate lambda x.
    double max_lx = 0.0;
    for (const auto& p : pairs) max_lx = std::max({max_lx, p.x, p.xp});
    max_lx *= lambda_list.back();
    if (mc.nu[J - 1] < max_lx + 5.0) {
        throw numerical_error("radial", "growth_exponent_fit",
                              "truncation: J insufficient for the requested lambda grid");
    }
    for (double lam : lambda_list) {
        double s = 0.0;
        if (profile.is_product()) {
            for (const auto& p : pairs) {
                const double dE =
                    kernels::spectral_measure_kernel(n, cs, lam, p.x, p.gamma, p.xp, J)
                        .value.real();
                s = std::max(s, kernels::amplitude_ratio(n, lam, p.x, p.gamma, p.xp, dE) *
                                    std::pow(lam, n - 1.0));
            }
        } else {
            std::vector<double> xs;
            for (const auto& p : pairs) {
                xs.push_back(p.x);
                xs.push_back(p.xp);
            }
            NonproductAssembler as(n, cs, profile, lam, J, xs);
            for (const auto& p : pairs) {
                const double dE = as.spectral_measure(p.x, p.gamma, p.xp);
                s = std::max(s, kernels::amplitude_ratio(n, lam, p.x, p.gamma, p.xp, dE) *
                                    std::pow(lam, n - 1.0));
            }
        }
        fit.s_values.push_back(s);
    }
    fit.slope = kernels::loglog_slope(fit.lambdas, fit.s_values);
    return fit;
}

} // namespace conewave::radial
