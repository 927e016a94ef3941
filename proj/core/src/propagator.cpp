#include "conewave/propagator.hpp"
#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/kernels.hpp"
#include "conewave/radial.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace conewave::propagator {

namespace {
constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

// Natural cubic spline on an increasing grid (second derivatives by the
// tridiagonal sweep).
class Spline {
public:
    Spline() = default;
    Spline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        y2_.assign(n, 0.0);
        std::vector<double> u(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
            const double p = sig * y2_[i - 1] + 2.0;
            y2_[i] = (sig - 1.0) / p;
            u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
                   (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
            u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (std::size_t i = n - 1; i-- > 0;) y2_[i] = y2_[i] * y2_[i + 1] + u[i];
    }

    double operator()(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t hi = std::clamp<std::size_t>(it - x_.begin(), 1, x_.size() - 1);
        const std::size_t lo = hi - 1;
        const double h = x_[hi] - x_[lo];
        const double a = (x_[hi] - x) / h;
        const double b = (x - x_[lo]) / h;
        return a * y_[lo] + b * y_[hi] +
               ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * h * h / 6.0;
    }

private:
    std::vector<double> x_, y_;
    std::vector<double> y2_;
};

void parallel_over(int count, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}
} // namespace

double chi_low(double lambda) { return quad::smooth_step_down(lambda - 1.0); }

double chi_high(double lambda) { return 1.0 - chi_low(lambda); }

double loss_exponent(int n, double q, double ebar) {
    if (q < 2.0) throw invalid_parameter("loss_exponent: q must be >= 2");
    if (ebar < 0.0) throw invalid_parameter("loss_exponent: ebar must be >= 0");
    return ebar / (q * (n + 0.5 * ebar));
}

bool is_admissible(double q, double r, int n) {
    if (q < 2.0 || r < 2.0) return false;
    if (q == 2.0 && std::isinf(r)) return false;
    const double lhs = (std::isinf(q) ? 0.0 : 2.0 / q) + (std::isinf(r) ? 0.0 : n / r);
    return std::abs(lhs - 0.5 * n) <= 1e-12;
}

int SchrodingerEngine::pair_id(int a, int b) const {
    if (a > b) std::swap(a, b);
    return pair_index_[a * static_cast<int>(x_samples_.size()) + b];
}

SchrodingerEngine SchrodingerEngine::product(int n, const CrossSection& cs, int J,
                                             std::vector<double> x_samples,
                                             std::vector<double> t_list,
                                             const EngineOptions& opts) {
    SchrodingerEngine e;
    e.n_ = n;
    e.J_ = J;
    e.opts_ = opts;
    e.x_samples_ = std::move(x_samples);
    e.t_list_ = std::move(t_list);
    e.cs_ = cs;
    e.build(n, cs, nullptr);
    return e;
}

SchrodingerEngine SchrodingerEngine::nonproduct(int n, const CrossSection& cs,
                                                const ConformalProfile& profile,
                                                std::vector<double> x_samples,
                                                std::vector<double> t_list,
                                                const EngineOptions& opts) {
    SchrodingerEngine e;
    e.n_ = n;
    e.J_ = opts.radial_J;
    e.opts_ = opts;
    e.x_samples_ = std::move(x_samples);
    e.t_list_ = std::move(t_list);
    e.cs_ = cs;
    e.build(n, cs, &profile);
    return e;
}

void SchrodingerEngine::build(int n, const CrossSection& cs, const ConformalProfile* profile) {
    if (x_samples_.empty() || t_list_.empty())
        throw invalid_parameter("SchrodingerEngine: need samples and times");
    const int nx = static_cast<int>(x_samples_.size());
    const double x_scale = *std::max_element(x_samples_.begin(), x_samples_.end());
    double t_abs = 0.0;
    for (double t : t_list_) t_abs = std::max(t_abs, std::abs(t));

    if (opts_.lambda_max < 20.0)
        throw invalid_parameter("SchrodingerEngine: lambda_max must be >= 20");
    if (opts_.eps < 1e-4 || opts_.eps > 1e-1)
        throw invalid_parameter("SchrodingerEngine: eps must lie in [1e-4, 1e-1]");
    const double lam_max = opts_.lambda_max;

    // Spec step bound: the quadrature must resolve e^{it lambda^2} and the
    // modewise oscillation; the panel builder enforces it via the phase rate.
    grid_ = quad::oscillatory_panels(0.0, lam_max, 2.0 * x_scale + 0.5, 2.0 * t_abs,
                                     opts_.phase_budget, opts_.points_per_panel, opts_.max_nodes);
    const std::size_t nq = grid_.nodes.size();

    // Ordered pair table.
    pair_index_.assign(nx * nx, -1);
    int np = 0;
    for (int a = 0; a < nx; ++a) {
        for (int b = a; b < nx; ++b) {
            pair_index_[a * nx + b] = np;
            pair_index_[b * nx + a] = np;
            ++np;
        }
    }

    nu_ = mode_constants(n, cs).nu;
    if (J_ < 1 || J_ > cs.truncation)
        throw invalid_parameter("SchrodingerEngine: J out of range for the cross-section");

    const int nt = static_cast<int>(t_list_.size());
    mode_sum_.assign(J_, std::vector<std::vector<cplx>>(nt, std::vector<cplx>(np, {0.0, 0.0})));
    mode_sum_half_.assign(J_, std::vector<std::vector<cplx>>(nt, std::vector<cplx>(np, {0.0, 0.0})));

    // Per-node spectral weights: quadrature weight, taper, cutoff, damping.
    const double taper_start = (1.0 - opts_.taper_fraction) * lam_max;
    std::vector<double> base_w(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        const double lam = grid_.nodes[q];
        double w = grid_.weights[q];
        if (opts_.taper_fraction > 0.0 && lam > taper_start) {
            w *= quad::smooth_step_down((lam - taper_start) / (lam_max - taper_start));
        }
        if (opts_.cut == SpectralCut::LowOnly) w *= chi_low(lam);
        if (opts_.cut == SpectralCut::HighOnly) w *= chi_high(lam);
        base_w[q] = w;
    }

    // Non-product: coarse-lambda radial solves, splined per (mode, pair).
    std::vector<std::vector<Spline>> radial_spline; // [j][pair]
    if (profile != nullptr) {
        const double dl = opts_.radial_lambda_step;
        std::vector<double> coarse;
        for (double l = 0.5 * dl; l < lam_max + dl; l += dl) coarse.push_back(l);
        radial_spline.assign(J_, std::vector<Spline>(np));
        std::vector<std::vector<std::vector<double>>> imG(
            J_, std::vector<std::vector<double>>(np, std::vector<double>(coarse.size())));
        parallel_over(static_cast<int>(coarse.size()), opts_.threads, [&](int il) {
            radial::NonproductAssembler as(n, cs, *profile, coarse[il], J_, x_samples_);
            for (int j = 0; j < J_; ++j) {
                for (int a = 0; a < nx; ++a) {
                    for (int b = a; b < nx; ++b) {
                        imG[j][pair_index_[a * nx + b]][il] =
                            as.mode_green(j, x_samples_[a], x_samples_[b]).imag();
                    }
                }
            }
        });
        for (int j = 0; j < J_; ++j) {
            for (int p = 0; p < np; ++p) radial_spline[j][p] = Spline(coarse, imG[j][p]);
        }
    }

    // Stream over modes: fill S[j][t][pair].
    parallel_over(J_, opts_.threads, [&](int j) {
        std::vector<double> mode_val(np);
        std::vector<double> jrow(nx);
        for (std::size_t q = 0; q < nq; ++q) {
            const double lam = grid_.nodes[q];
            if (base_w[q] == 0.0) continue;
            if (profile == nullptr) {
                for (int a = 0; a < nx; ++a) jrow[a] = bessel::bessel_j(nu_[j], lam * x_samples_[a]);
                for (int a = 0; a < nx; ++a) {
                    for (int b = a; b < nx; ++b) {
                        const double pref =
                            lam * std::pow(x_samples_[a] * x_samples_[b], -0.5 * (n_ - 2));
                        mode_val[pair_index_[a * nx + b]] = pref * jrow[a] * jrow[b];
                    }
                }
            } else {
                for (int p = 0; p < np; ++p) {
                    mode_val[p] = 2.0 * lam / kPi * radial_spline[j][p](lam);
                }
            }
            const double lam2 = lam * lam;
            for (int it = 0; it < static_cast<int>(t_list_.size()); ++it) {
                const double phase = t_list_[it] * lam2;
                const cplx osc(std::cos(phase), std::sin(phase));
                const cplx cfull = base_w[q] * std::exp(-opts_.eps * lam2) * osc;
                const cplx chalf = base_w[q] * std::exp(-0.5 * opts_.eps * lam2) * osc;
                auto& dst = mode_sum_[j][it];
                auto& dsth = mode_sum_half_[j][it];
                for (int p = 0; p < np; ++p) {
                    dst[p] += cfull * mode_val[p];
                    dsth[p] += chalf * mode_val[p];
                }
            }
        }
    });
}

TimeKernelValue SchrodingerEngine::kernel(int it, int ix, double gamma, int ixp) const {
    const int p = pair_id(ix, ixp);
    cplx v(0.0, 0.0), vh(0.0, 0.0);
    for (int j = 0; j < J_; ++j) {
        const double pij = projection_kernel(cs_, j, gamma);
        v += pij * mode_sum_[j][it][p];
        vh += pij * mode_sum_half_[j][it][p];
    }
    TimeKernelValue out;
    out.value = v;
    out.err_est = std::abs(vh - v);
    return out;
}

DispersiveFit dispersive_fit(const SchrodingerEngine& engine, const std::vector<double>& gammas) {
    DispersiveFit fit;
    fit.t_list = engine.times();
    const int nx = static_cast<int>(engine.samples().size());
    for (int it = 0; it < static_cast<int>(fit.t_list.size()); ++it) {
        double sup = 0.0;
        for (int a = 0; a < nx; ++a) {
            for (int b = a; b < nx; ++b) {
                for (double g : gammas) {
                    sup = std::max(sup, std::abs(engine.kernel(it, a, g, b).value));
                }
            }
        }
        fit.sup_abs.push_back(sup);
    }
    fit.alpha = kernels::loglog_slope(fit.t_list, fit.sup_abs);
    return fit;
}

void RadialEvolution::setup_grid_and_bump(const RadialBump& bump,
                                          const ConformalProfile& profile) {
    if (bump.width <= 0.0 || bump.center <= 0.0)
        throw invalid_parameter("RadialEvolution: bump must have positive center and width");
    const std::size_t m = x_.size();
    xw_.assign(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double h = x_[i + 1] - x_[i];
        xw_[i] += 0.5 * h;
        xw_[i + 1] += 0.5 * h;
    }
    for (std::size_t i = 0; i < m; ++i)
        xw_[i] *= std::pow(x_[i] * profile.a(x_[i]), n_ - 1.0);

    // L2-normalized Gaussian bump against the cone volume.
    f_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = (x_[i] - bump.center) / bump.width;
        f_[i] = std::exp(-0.5 * u * u);
    }
    double nrm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) nrm2 += xw_[i] * f_[i] * f_[i];
    nrm2 *= vol_y_;
    for (auto& v : f_) v /= std::sqrt(nrm2);
    f_l2_ = 1.0;
}

RadialEvolution::RadialEvolution(int n, const CrossSection& cs, const RadialBump& bump,
                                 std::vector<double> x_grid, double lambda_max, double eps,
                                 double t_max)
    : n_(n), eps_(eps), x_(std::move(x_grid)) {
    vol_y_ = 1.0 / projection_kernel(cs, 0, 0.0); // Pi_0 = 1/Vol(Y)
    nu0_ = mode_constants(n, cs).nu[0];
    ConformalProfile prod;
    setup_grid_and_bump(bump, prod);
    const std::size_t m = x_.size();

    // Transform quadrature in x over the bump support.
    const double xa = std::max(x_.front(), bump.center - 6.0 * bump.width);
    const double xb = std::min(x_.back(), bump.center + 6.0 * bump.width);
    const int panels = std::max(32, static_cast<int>((xb - xa) * lambda_max / 2.0));
    quad::Grid xq = quad::uniform_panels(xa, xb, panels, 10);

    // Lambda nodes resolving e^{i t lambda^2} up to t_max and J(lambda x).
    lam_ = quad::oscillatory_panels(1e-6, lambda_max, 2.0 * xb + 0.5, 2.0 * t_max, 3.0, 10,
                                    4000000);

    fhat_.assign(lam_.nodes.size(), 0.0);
    for (std::size_t q = 0; q < lam_.nodes.size(); ++q) {
        const double lam = lam_.nodes[q];
        double acc = 0.0;
        for (std::size_t i = 0; i < xq.nodes.size(); ++i) {
            const double x = xq.nodes[i];
            const double u = (x - bump.center) / bump.width;
            const double fx = std::exp(-0.5 * u * u);
            acc += xq.weights[i] * std::pow(x, 0.5 * n) * bessel::bessel_j(nu0_, lam * x) * fx;
        }
        fhat_[q] = acc;
    }
    // Scale fhat by the same normalization as f_ (recompute from samples).
    {
        double raw2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double u = (x_[i] - bump.center) / bump.width;
            const double fx = std::exp(-0.5 * u * u);
            raw2 += xw_[i] * fx * fx;
        }
        raw2 *= vol_y_;
        for (auto& v : fhat_) v /= std::sqrt(raw2);
    }

    // phi_lambda(x) = x^{-(n-2)/2} J_{nu0}(lambda x) tabulated once.
    phi_.assign(lam_.nodes.size() * m, 0.0);
    for (std::size_t q = 0; q < lam_.nodes.size(); ++q) {
        const double lam = lam_.nodes[q];
        for (std::size_t i = 0; i < m; ++i) {
            phi_[q * m + i] = std::pow(x_[i], -0.5 * (n - 2)) * bessel::bessel_j(nu0_, lam * x_[i]);
        }
    }
}

RadialEvolution::RadialEvolution(int n, const CrossSection& cs, const ConformalProfile& profile,
                                 const RadialBump& bump, std::vector<double> x_grid,
                                 double lambda_max, double eps, double t_max,
                                 double radial_lambda_step)
    : n_(n), eps_(eps), product_(false), x_(std::move(x_grid)) {
    vol_y_ = 1.0 / projection_kernel(cs, 0, 0.0);
    nu0_ = mode_constants(n, cs).nu[0];
    setup_grid_and_bump(bump, profile);
    const std::size_t m = x_.size();

    lam_ = quad::oscillatory_panels(1e-6, lambda_max, 2.0 * x_.back() + 0.5, 2.0 * t_max, 3.0,
                                    10, 4000000);

    // Mode-0 spectral image g(lambda, x) = int dE_0(lambda; x, x') f(x') w dx'
    // from the radial solver on a coarse lambda grid, splined in lambda.
    std::vector<double> coarse;
    for (double l = 0.5 * radial_lambda_step; l < lambda_max + radial_lambda_step;
         l += radial_lambda_step)
        coarse.push_back(l);
    std::vector<std::vector<double>> g(coarse.size(), std::vector<double>(m, 0.0));
    for (std::size_t ic = 0; ic < coarse.size(); ++ic) {
        const double lam = coarse[ic];
        radial::SolveOptions opts;
        opts.extra_points = x_;
        opts.x_out_min = 0.25 * x_.front();
        const auto pair =
            radial::solve_pair(radial::make_spec(n, cs, profile, 0, lam),
                               std::max(profile.x_match, x_.back()) * 1.25, opts);
        // Index the output grid inside the solver grid.
        std::vector<std::size_t> idx(m);
        {
            std::size_t k = 0;
            for (std::size_t i = 0; i < m; ++i) {
                while (k + 1 < pair.grid.size() && pair.grid[k] < x_[i] - 1e-12) ++k;
                idx[i] = k;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            const std::size_t a = idx[i];
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t b = idx[j];
                const std::size_t lo = std::min(a, b), hi = std::max(a, b);
                // Stored solutions and W carry the same rescaling, so the
                // ratio is the true Green value.
                const cplx green = -pair.u_reg[lo] * pair.u_out[hi] / pair.W;
                acc += xw_[j] * f_[j] * (2.0 * lam / kPi) * green.imag();
            }
            g[ic][i] = acc;
        }
    }
    // Spline g(., x_i) onto the oscillatory nodes.
    gtab_.assign(lam_.nodes.size() * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> col(coarse.size());
        for (std::size_t ic = 0; ic < coarse.size(); ++ic) col[ic] = g[ic][i];
        const Spline sp(coarse, col);
        for (std::size_t q = 0; q < lam_.nodes.size(); ++q) {
            gtab_[q * m + i] = sp(lam_.nodes[q]);
        }
    }
}

std::vector<std::complex<double>> RadialEvolution::evolve(double t) const {
    const std::size_t m = x_.size();
    std::vector<cplx> u(m, cplx(0.0, 0.0));
    for (std::size_t q = 0; q < lam_.nodes.size(); ++q) {
        const double lam = lam_.nodes[q];
        const double lam2 = lam * lam;
        const cplx base = lam_.weights[q] * std::exp(-eps_ * lam2) *
                          cplx(std::cos(t * lam2), std::sin(t * lam2));
        if (product_) {
            const cplx c = base * lam * fhat_[q];
            const double* phi_row = &phi_[q * m];
            for (std::size_t i = 0; i < m; ++i) u[i] += c * phi_row[i];
        } else {
            const double* g_row = &gtab_[q * m];
            for (std::size_t i = 0; i < m; ++i) u[i] += base * g_row[i];
        }
    }
    return u;
}

double RadialEvolution::l2_norm(const std::vector<cplx>& u) const {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += xw_[i] * std::norm(u[i]);
    return std::sqrt(vol_y_ * s);
}

double RadialEvolution::lr_norm(const std::vector<cplx>& u, double r) const {
    if (std::isinf(r)) {
        double m = 0.0;
        for (const auto& v : u) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += xw_[i] * std::pow(std::abs(u[i]), r);
    return std::pow(vol_y_ * s, 1.0 / r);
}

double RadialEvolution::damped_l2() const {
    if (!product_) return l2_norm(evolve(0.0));
    double s = 0.0;
    for (std::size_t q = 0; q < lam_.nodes.size(); ++q) {
        const double lam = lam_.nodes[q];
        s += lam_.weights[q] * lam * fhat_[q] * fhat_[q] * std::exp(-2.0 * eps_ * lam * lam);
    }
    return std::sqrt(vol_y_ * s);
}

double strichartz_norm(const RadialEvolution& ev, double q, double r, int n,
                       const std::vector<double>& t_grid) {
    if (!is_admissible(q, r, n)) {
        throw invalid_parameter("strichartz_norm: (q, r) is not Schrodinger admissible");
    }
    std::vector<double> rnorm(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        rnorm[i] = ev.lr_norm(ev.evolve(t_grid[i]), r);
    }
    if (std::isinf(q)) return *std::max_element(rnorm.begin(), rnorm.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        const double h = t_grid[i + 1] - t_grid[i];
        s += 0.5 * h * (std::pow(rnorm[i], q) + std::pow(rnorm[i + 1], q));
    }
    return std::pow(s, 1.0 / q);
}

} // namespace conewave::propagator
