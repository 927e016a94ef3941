#ifndef CONEWAVE_PROPAGATOR_HPP
#define CONEWAVE_PROPAGATOR_HPP

#include "conewave/cross_section.hpp"
#include "conewave/quadrature.hpp"

#include <complex>
#include <vector>

namespace conewave::propagator {

// Smooth litter of the spectral axis: chi_low = 1 on [0, 1], 0 on [2, inf),
// chi_low + chi_high = 1 on lambda >= 0.
double chi_low(double lambda);
double chi_high(double lambda);

// Strichartz loss exponent k = e / (q (n + e/2)).
double loss_exponent(int n, double q, double ebar);

// Schrodinger admissibility: q, r >= 2, (q, r) != (2, inf), 2/q + n/r = n/2.
bool is_admissible(double q, double r, int n);

// A space-time exponent pair together with the cone's dimension and
// stability constant.
struct StrichartzSpec {
    double q = 2.0;
    double r = 6.0;
    int n = 3;
    double ebar = 0.0;

    bool admissible() const { return is_admissible(q, r, n); }
    double loss() const { return loss_exponent(n, q, ebar); }
};

enum class SpectralCut { Full, LowOnly, HighOnly };

// Guidance: pick lambda_max to cover the stationary band d_max/(2 t_min) and,
// when slope fidelity matters, so that eps * lambda_max^2 >~ 12; the smooth
// taper suppresses the sharp-truncation artifact on top of the damping.
struct EngineOptions {
    double lambda_max = 90.0;  // spectral window [0, lambda_max], >= 20
    double eps = 2e-3;         // Gaussian damping exp(-eps lambda^2)
    double phase_budget = 3.0; // radians of phase per quadrature panel
    int points_per_panel = 10;
    double taper_fraction = 0.2; // smooth window on the top of [0, lambda_max]
    std::size_t max_nodes = 4000000;
    SpectralCut cut = SpectralCut::Full;
    int threads = 1;
    // Non-product source: coarse lambda step for the radial solves (the mode
    // Green functions are smooth on the scale 1/(2 max x)).
    double radial_lambda_step = 0.2;
    int radial_J = 20;
};

struct TimeKernelValue {
    std::complex<double> value{0.0, 0.0};
    double err_est = 0.0; // |value(eps) - value(eps/2)|
};

// Propagator kernel engine over a fixed set of radial samples and times:
//   K(t; z, z') = int_0^{lambda_max} chi(lambda) e^{i t lambda^2 - eps lambda^2}
//                 dE(lambda; z, z') dlambda,
// dE from the closed-form product kernels or from the radial ODE solver.
class SchrodingerEngine {
public:
    static SchrodingerEngine product(int n, const CrossSection& cs, int J,
                                     std::vector<double> x_samples, std::vector<double> t_list,
                                     const EngineOptions& opts);
    static SchrodingerEngine nonproduct(int n, const CrossSection& cs,
                                        const ConformalProfile& profile,
                                        std::vector<double> x_samples, std::vector<double> t_list,
                                        const EngineOptions& opts);

    // Kernel between the ix-th and ixp-th samples at angular distance gamma.
    TimeKernelValue kernel(int it, int ix, double gamma, int ixp) const;

    const std::vector<double>& times() const { return t_list_; }
    const std::vector<double>& samples() const { return x_samples_; }
    double eps() const { return opts_.eps; }
    std::size_t node_count() const { return grid_.nodes.size(); }

private:
    SchrodingerEngine() = default;
    void build(int n, const CrossSection& cs, const ConformalProfile* profile);

    int n_ = 3;
    int J_ = 0;
    EngineOptions opts_;
    std::vector<double> x_samples_;
    std::vector<double> t_list_;
    quad::Grid grid_;
    // S[j][it][pair] mode sums for full eps and half eps; pair = ordered (a<=b).
    std::vector<std::vector<std::vector<std::complex<double>>>> mode_sum_, mode_sum_half_;
    std::vector<double> nu_;
    std::vector<int> pair_index_; // flattened (a, b) -> ordered pair id
    CrossSection cs_;

    int pair_id(int a, int b) const;
};

struct DispersiveFit {
    double alpha = 0.0;              // slope of log sup|K| vs log t
    std::vector<double> t_list;
    std::vector<double> sup_abs;     // sup over the sample grid at each t
};

// sup over (z, z') of |K(t; z, z')| on an x-sample times gamma-sample grid
// (near-antipodal gamma excluded by the caller's grid), fitted in log-log.
DispersiveFit dispersive_fit(const SchrodingerEngine& engine, const std::vector<double>& gammas);

// Radial (j = 0 only) evolution of a bump on the product cone via the order
// nu_0 Hankel-type transform; used for unitarity and Strichartz measurements.
struct RadialBump {
    double center = 1.0;
    double width = 0.3;
};

class RadialEvolution {
public:
    // Product cone: closed-form Bessel transform of order nu_0.
    RadialEvolution(int n, const CrossSection& cs, const RadialBump& bump,
                    std::vector<double> x_grid, double lambda_max, double eps, double t_max);
    // Conformal cone: the mode-0 spectral kernel comes from the radial ODE
    // solver on a coarse lambda grid (splined onto the quadrature nodes).
    RadialEvolution(int n, const CrossSection& cs, const ConformalProfile& profile,
                    const RadialBump& bump, std::vector<double> x_grid, double lambda_max,
                    double eps, double t_max, double radial_lambda_step = 0.25);

    // u(t, x_i) with the Gaussian damping applied.
    std::vector<std::complex<double>> evolve(double t) const;

    // Discrete norms against the cone volume x^{n-1} a(x)^{n-1} dx Vol(Y).
    double l2_norm(const std::vector<std::complex<double>>& u) const;
    double lr_norm(const std::vector<std::complex<double>>& u, double r) const;

    double initial_l2() const { return f_l2_; } // after L2 normalization: 1
    double damped_l2() const;                   // norm of e^{-eps lambda^2} f
    // The damped datum itself (reconstruction check: close to f for small eps).
    const std::vector<double>& f_samples() const { return f_; }

    const std::vector<double>& x_grid() const { return x_; }

private:
    void setup_grid_and_bump(const RadialBump& bump, const ConformalProfile& profile);

    int n_;
    double vol_y_;
    double nu0_;
    double eps_;
    bool product_ = true;
    std::vector<double> x_, xw_; // radial grid and volume weights
    std::vector<double> f_;
    double f_l2_ = 1.0;
    quad::Grid lam_;
    std::vector<double> fhat_; // transform of f at lambda nodes (product)
    std::vector<double> phi_;  // phi_lambda(x_i) table, flattened [q * m + i]
    std::vector<double> gtab_; // [q * m + i] spectral image (2 lam/pi Im G applied to f)
};

// Discrete L^q_t L^r_z norm of e^{it Delta} f over the time grid; requires an
// admissible pair.
double strichartz_norm(const RadialEvolution& ev, double q, double r, int n,
                       const std::vector<double>& t_grid);

} // namespace conewave::propagator

#endif
