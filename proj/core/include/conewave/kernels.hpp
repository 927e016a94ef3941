#ifndef CONEWAVE_KERNELS_HPP
#define CONEWAVE_KERNELS_HPP

#include "conewave/cross_section.hpp"

#include <complex>
#include <vector>

namespace conewave::kernels {

enum class ResolventSign { Outgoing, Incoming };

enum class KernelKind { ResolventOut, ResolventIn, SpectralMeasure, Propagator };

// A kernel value tagged with its arguments.  near_diagonal is set when
// lambda * d_C(z, z') < 0.05; the mode sum diverges on the diagonal as the
// truncation grows, so flagged values should not be refined in J.
struct KernelSample {
    double lambda = 0.0;
    double x = 0.0;
    double gamma = 0.0;
    double xp = 0.0;
    std::complex<double> value{0.0, 0.0};
    KernelKind kind = KernelKind::ResolventOut;
    bool near_diagonal = false;
};

// Outgoing/incoming resolvent kernel of the product cone (scalar kernel
// against the Riemannian density):
//   (i pi / 2) (x x')^{-(n-2)/2} sum_{j<J} Pi_j(gamma)
//       J_{nu_j}(lambda x_<) H^{(1)}_{nu_j}(lambda x_>)
// with the conjugate Hankel function for the incoming sign.
KernelSample resolvent_kernel(int n, const CrossSection& cs, double lambda, double x,
                              double gamma, double xp, int J, ResolventSign sign);

// Spectral measure kernel via Stone's formula specialized modewise:
//   lambda (x x')^{-(n-2)/2} sum_{j<J} Pi_j(gamma) J_{nu_j}(lambda x) J_{nu_j}(lambda x').
KernelSample spectral_measure_kernel(int n, const CrossSection& cs, double lambda, double x,
                                     double gamma, double xp, int J);

// |dE| (1 + lambda d_C)^{(n-1)/2} lambda^{-(n-1)} (x x')^{(n-1)/2}
// (the comparison quantity of the amplitude bound, in the Riemannian-density
// trivialization).  dE must be supplied by the caller so both the closed-form
// and the radial-ODE routes share this normalization.
double amplitude_ratio(int n, double lambda, double x, double gamma, double xp,
                       double dE_value);

// Free-space references on R^3 (= product cone over the round S^2):
std::complex<double> free_resolvent3(double lambda, double d); // e^{i lambda d}/(4 pi d)
double free_spectral_measure3(double lambda, double d);        // lambda^2 sinc(lambda d)/(2 pi^2)

// Geometric lambda grid helper (>= 2 points, endpoints included).
std::vector<double> geometric_grid(double lo, double hi, int count);

// Least-squares slope of log S against log lambda.
double loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& s);

} // namespace conewave::kernels

#endif
