#ifndef CONEWAVE_BESSEL_HPP
#define CONEWAVE_BESSEL_HPP

#include <complex>

namespace conewave::bessel {

// One evaluation of the cylinder functions of order nu at x, with first
// derivatives.  H1 = J + iY by construction.
struct CylinderEval {
    double nu = 0.0;
    double x = 0.0;
    double J = 0.0;
    double Y = 0.0;
    double Jp = 0.0; // dJ/dx
    double Yp = 0.0; // dY/dx
    std::complex<double> H1{0.0, 0.0};
};

// Evaluates J_nu, Y_nu and derivatives for real order nu >= 0 and x > 0.
// Region switching:
//   x < 2                 : CF1 + downward recurrence + Temme series + Wronskian
//   2 <= x < max(30,2nu^2): CF1 + downward recurrence + CF2 (Steed)
//   x >= max(30, 2nu^2)   : large-argument P/Q asymptotic series
// Target: absolute error <= 1e-10 * max(1, |f|) for nu <= 60, x <= 200.
CylinderEval cylinder(double nu, double x);

// J_nu(x) for nu >= 0, x >= 0 (x = 0 returns the limit: 1 if nu == 0, else 0).
// Uses the ascending power series on its cancellation-free region
// x <= max(2, 2*sqrt(nu+1)), otherwise defers to cylinder().
double bessel_j(double nu, double x);

// Y_nu(x) for nu >= 0, x > 0.
double bessel_y(double nu, double x);

// H^(1)_nu(x) = J_nu(x) + i Y_nu(x) for nu >= 0, x > 0.
std::complex<double> hankel1(double nu, double x);

// Coefficient a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k), a_0 = 1.
double hankel_asymptotic_coeff(double nu, int k);

// Truncated large-argument expansion of H^(1)_nu:
//   sqrt(2/(pi x)) * exp(i(x - nu pi/2 - pi/4)) * sum_{k<=K} a_k(nu) (i/x)^k.
// Requires x >= max(10, 2 nu^2) and K <= 10; throws a range error otherwise.
std::complex<double> hankel1_asymptotic(double nu, double x, int K);

// Power series for J_nu; exposed for the overlap consistency tests.
double bessel_j_series(double nu, double x);

} // namespace conewave::bessel

#endif
