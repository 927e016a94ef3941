#ifndef CONEWAVE_CROSS_SECTION_HPP
#define CONEWAVE_CROSS_SECTION_HPP

#include <functional>
#include <string>
#include <vector>

namespace conewave {

enum class CrossSectionKind { Circle, RoundSphere };

// Spectral data of the compact cross-section (Y, h0): the first J distinct
// Laplace eigenvalues sigma_j^2 with multiplicities, plus closed-form pair
// projection kernels Pi_j(y, y') expressed through the angular distance.
struct CrossSection {
    CrossSectionKind kind = CrossSectionKind::RoundSphere;
    double circle_length = 0.0; // kind == Circle
    int sphere_dim = 0;         // kind == RoundSphere: dimension m of S^m
    std::vector<double> eigenvalues;  // sigma_j^2, strictly increasing, sigma_0^2 = 0
    std::vector<int> multiplicities;  // parallel to eigenvalues
    int truncation = 0;               // J = number of distinct eigenvalues kept

    std::string describe() const;
};

// circle(L): sigma_k^2 = (2 pi k / L)^2, multiplicity 2 for k >= 1.
// round_sphere(m): sigma_l^2 = l(l+m-1), multiplicity (2l+m-1)(l+m-2)!/(l!(m-1)!).
CrossSection build_spectrum_circle(double length, int J);
CrossSection build_spectrum_sphere(int m, int J);
CrossSection build_spectrum(CrossSectionKind kind, double param, int J);

// Projection kernel Pi_j(y, y') onto the j-th distinct eigenspace, as a
// function of the geodesic distance gamma in (Y, h0).
//   circle(L):        1/L for j = 0, (2/L) cos(2 pi j gamma / L) for j >= 1
//   round_sphere(m):  ((2l+m-1)/(m-1)) C_l^{(m-1)/2}(cos gamma) / Vol(S^m)
// (for m = 2 this is the familiar (2l+1)/(4 pi) P_l(cos gamma)).
double projection_kernel(const CrossSection& cs, int j, double gamma);

// Order parameters and indicial roots of the cone over cs with dimension n:
//   nu_j = sqrt((n/2 - 1)^2 + sigma_j^2),  Im lambda_j = sqrt((1 - n/2)^2 + sigma_j^2).
struct ModeConstants {
    int n = 0;
    std::vector<double> nu;
    std::vector<double> im_lambda;
};

ModeConstants mode_constants(int n, const CrossSection& cs);

// Conformal profile a(x): a(0) = 1, constant (= a_inf) beyond x_match, C^1.
enum class ProfileKind { Constant, Exponential, PolyBump };

struct ConformalProfile {
    ProfileKind kind = ProfileKind::Constant;
    double c = 0.0;       // family parameter (exponent rate / bump height)
    double x_match = 1.0; // profile is exactly constant for x >= x_match

    double a(double x) const;
    double aprime(double x) const;
    double a_inf() const { return a(x_match); }
    bool is_product() const;
    std::string describe() const;
};

// The error function e(x) = (n-1) a'(x)/a(x) and the stability constant
// ebar = sup_{[0, x_match]} x e(x), located by a three-level grid search with
// finest step x_match/4096.  Throws if ebar >= n-1.
struct StabilityResult {
    std::function<double(double)> e;
    double ebar = 0.0;
};

StabilityResult stability_constant(int n, const ConformalProfile& profile);

// Legendre P_l and Gegenbauer C_l^alpha by forward recurrence (used by the
// projection kernels; exposed for tests).
double legendre_p(int l, double x);
double gegenbauer_c(int l, double alpha, double x);

} // namespace conewave

#endif
