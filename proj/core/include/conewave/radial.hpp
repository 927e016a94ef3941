#ifndef CONEWAVE_RADIAL_HPP
#define CONEWAVE_RADIAL_HPP

#include "conewave/cross_section.hpp"

#include <complex>
#include <vector>

namespace conewave::radial {

// Per-mode separated radial operator on the conformal cone:
//   L_j u = -u'' - ((n-1) + x e(x))/x u' + sigma_j^2/(a(x)^2 x^2) u,
// formally self-adjoint for the weight w(x) = x^{n-1} a(x)^{n-1}.
struct RadialOperatorSpec {
    int n = 3;
    int j = 0;
    double sigma2 = 0.0; // sigma_j^2
    double nu = 0.0;     // sqrt((n/2-1)^2 + sigma_j^2)
    ConformalProfile profile;
    double lambda = 1.0;

    double weight(double x) const;
    // u'' as a function of (x, u, u') for (L_j - lambda^2) u = 0.
    std::complex<double> rhs(double x, std::complex<double> u, std::complex<double> up) const;
};

RadialOperatorSpec make_spec(int n, const CrossSection& cs, const ConformalProfile& profile,
                             int j, double lambda);

// Regular and outgoing solutions on a grid, with the conserved
// w-weighted Wronskian W = w (u_reg u_out' - u_reg' u_out).
struct RadialSolutionPair {
    std::vector<double> grid; // increasing, in (0, x_max]
    std::vector<std::complex<double>> u_reg, u_reg_p;
    std::vector<std::complex<double>> u_out, u_out_p;
    std::complex<double> W{0.0, 0.0};
    double wronskian_drift = 0.0; // max relative deviation of W along the grid
    double nu_tilde = 0.0;        // effective order beyond x_match
    std::size_t out_start = 0;    // u_out is valid on grid[out_start..]
    double reg_scale = 1.0;       // u_reg was divided by this power of two
    double out_scale = 1.0;       // u_out was divided by this power of two
    RadialOperatorSpec spec;

    // Hermite interpolation of (u, u') on the stored grid.
    void eval_reg(double x, std::complex<double>& u, std::complex<double>& up) const;
    void eval_out(double x, std::complex<double>& u, std::complex<double>& up) const;
};

struct SolveOptions {
    int grid_size = 2048;
    double rel_tol = 1e-12;
    bool outgoing = true;             // incoming (conjugate Hankel data) if false
    std::vector<double> extra_points; // forced onto the output grid
    // Inward sweep stop for u_out; 0 means the full grid.  High orders at
    // small lambda overflow far below the evaluation window, so callers that
    // only evaluate above some x set this.
    double x_out_min = 0.0;
};

// u_reg: outward integration from x0 (two-correction-term Frobenius data);
// u_out: inward integration from x_max with exact Hankel data
//   u_out(x) = x^{-(n-2)/2} H^(1)_{nu_tilde}(lambda x) for x >= x_match,
//   nu_tilde = sqrt((n/2-1)^2 + sigma_j^2 / a_inf^2).
// Throws order-overflow for nu_j > 60 and integration-failure when the
// Wronskian drifts by more than 1e-6.
RadialSolutionPair solve_pair(const RadialOperatorSpec& spec, double x_max,
                              const SolveOptions& opts = {});

// Sturm-Liouville mode Green function G_j(x, x') = -u_reg(x_<) u_out(x_>)/W.
// Throws a resonance error when |W| is degenerate relative to the solution
// scale.
std::complex<double> green_mode(const RadialSolutionPair& pair, double x, double xp);

// Assembles the non-product resolvent and spectral measure at a point pair:
//   resolvent = sum_j Pi_j(gamma) G_j(x, x'),  dE = (2 lambda / pi) Im resolvent.
struct AssembledKernel {
    std::complex<double> resolvent_out{0.0, 0.0};
    double spectral_measure = 0.0;
};

AssembledKernel assemble_nonproduct(int n, const CrossSection& cs, const ConformalProfile& profile,
                                    double lambda, double x, double gamma, double xp, int J);

// Solves every mode once per lambda and evaluates many pairs cheaply.  The
// supplied x-samples are forced onto the integration grid so no interpolation
// error enters.
class NonproductAssembler {
public:
    NonproductAssembler(int n, const CrossSection& cs, const ConformalProfile& profile,
                        double lambda, int J, const std::vector<double>& x_samples,
                        double x_max = 0.0);

    std::complex<double> resolvent(double x, double gamma, double xp) const;
    double spectral_measure(double x, double gamma, double xp) const;
    // Mode Green value (for product-case equivalence tests).
    std::complex<double> mode_green(int j, double x, double xp) const;

private:
    int n_;
    const CrossSection& cs_;
    double lambda_;
    int J_;
    std::vector<RadialSolutionPair> modes_;
};

struct SamplePair {
    double x = 0.0;
    double gamma = 0.0;
    double xp = 0.0;
};

// S(lambda) = max over the sample pairs of |dE| (1+lambda d)^{(n-1)/2} (x x')^{(n-1)/2};
// returns the least-squares log-log slope.  The product case routes through
// the closed-form kernels, the non-product case through the radial solver.
struct GrowthFit {
    double slope = 0.0;
    std::vector<double> lambdas;
    std::vector<double> s_values;
};

GrowthFit growth_exponent_fit(int n, const CrossSection& cs, const ConformalProfile& profile,
                              const std::vector<double>& lambda_list,
                              const std::vector<SamplePair>& pairs, int J);

} // namespace conewave::radial

#endif
