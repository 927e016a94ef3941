#include "conewave/kernels.hpp"
#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/geometry.hpp"

#include <cmath>

namespace conewave::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDiagonalFlagThreshold = 0.05;
} // namespace

KernelSample resolvent_kernel(int n, const CrossSection& cs, double lambda, double x,
                              double gamma, double xp, int J, ResolventSign sign) {
    if (x <= 0.0 || xp <= 0.0) throw invalid_parameter("resolvent_kernel: x, x' must be positive");
    if (lambda <= 0.0) throw invalid_parameter("resolvent_kernel: lambda must be positive");
    if (J < 1 || J > cs.truncation)
        throw invalid_parameter("resolvent_kernel: J out of range for the cross-section");
    const ModeConstants mc = mode_constants(n, cs);
    const double xlo = std::min(x, xp);
    const double xhi = std::max(x, xp);
    std::complex<double> sum(0.0, 0.0);
    for (int j = 0; j < J; ++j) {
        const double nu = mc.nu[j];
        if (nu > 60.0)
            throw numerical_error("kernels", "resolvent_kernel", "mode order nu exceeds 60");
        const double pij = projection_kernel(cs, j, gamma);
        const double jlo = bessel::bessel_j(nu, lambda * xlo);
        const std::complex<double> hhi = bessel::hankel1(nu, lambda * xhi);
        sum += pij * jlo * (sign == ResolventSign::Outgoing ? hhi : std::conj(hhi));
    }
    const double pref = std::pow(x * xp, -0.5 * (n - 2));
    const std::complex<double> factor =
        (sign == ResolventSign::Outgoing) ? std::complex<double>(0.0, 0.5 * kPi)
                                          : std::complex<double>(0.0, -0.5 * kPi);
    KernelSample ks;
    ks.lambda = lambda;
    ks.x = x;
    ks.gamma = gamma;
    ks.xp = xp;
    ks.kind = (sign == ResolventSign::Outgoing) ? KernelKind::ResolventOut
                                                : KernelKind::ResolventIn;
    ks.value = factor * pref * sum;
    ks.near_diagonal = lambda * cone_distance_gamma(x, xp, gamma) < kDiagonalFlagThreshold;
    return ks;
}

KernelSample spectral_measure_kernel(int n, const CrossSection& cs, double lambda, double x,
                                     double gamma, double xp, int J) {
    if (x <= 0.0 || xp <= 0.0)
        throw invalid_parameter("spectral_measure_kernel: x, x' must be positive");
    if (lambda <= 0.0) throw invalid_parameter("spectral_measure_kernel: lambda must be positive");
    if (J < 1 || J > cs.truncation)
        throw invalid_parameter("spectral_measure_kernel: J out of range");
    const ModeConstants mc = mode_constants(n, cs);
    double sum = 0.0;
    for (int j = 0; j < J; ++j) {
        const double nu = mc.nu[j];
        if (nu > 60.0)
            throw numerical_error("kernels", "spectral_measure_kernel", "mode order nu exceeds 60");
        sum += projection_kernel(cs, j, gamma) * bessel::bessel_j(nu, lambda * x) *
               bessel::bessel_j(nu, lambda * xp);
    }
    KernelSample ks;
    ks.lambda = lambda;
    ks.x = x;
    ks.gamma = gamma;
    ks.xp = xp;
    ks.kind = KernelKind::SpectralMeasure;
    ks.value = lambda * std::pow(x * xp, -0.5 * (n - 2)) * sum;
    ks.near_diagonal = lambda * cone_distance_gamma(x, xp, gamma) < kDiagonalFlagThreshold;
    return ks;
}

double amplitude_ratio(int n, double lambda, double x, double gamma, double xp, double dE_value) {
    const double d = cone_distance_gamma(x, xp, gamma);
    return std::abs(dE_value) * std::pow(1.0 + lambda * d, 0.5 * (n - 1)) *
           std::pow(lambda, -(n - 1.0)) * std::pow(x * xp, 0.5 * (n - 1));
}

std::complex<double> free_resolvent3(double lambda, double d) {
    return std::exp(std::complex<double>(0.0, lambda * d)) / (4.0 * kPi * d);
}

double free_spectral_measure3(double lambda, double d) {
    const double ld = lambda * d;
    const double sinc = (std::abs(ld) < 1e-8) ? 1.0 - ld * ld / 6.0 : std::sin(ld) / ld;
    return lambda * lambda * sinc / (2.0 * kPi * kPi);
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (count < 2 || lo <= 0.0 || hi <= lo)
        throw invalid_parameter("geometric_grid: need count >= 2 and 0 < lo < hi");
    std::vector<double> g(count);
    const double r = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) g[i] = lo * std::exp(r * i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

double loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& s) {
    if (lambdas.size() != s.size() || lambdas.size() < 2)
        throw invalid_parameter("loglog_slope: need matching arrays with >= 2 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const int m = static_cast<int>(lambdas.size());
    for (int i = 0; i < m; ++i) {
        const double lx = std::log(lambdas[i]);
        const double ly = std::log(s[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

} // namespace conewave::kernels
