#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conewave::bessel {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-290;
constexpr int kMaxIter = 20000;

// Taylor coefficients of 1/Gamma(1+w) about w = 0; good to ~1e-18 on |w| <= 1/2.
constexpr double kInvGammaTaylor[] = {
    1.00000000000000000000,
    0.577215664901532860607,
    -0.655878071520253881077,
    -0.0420026350340952355290,
    0.166538611382291489502,
    -0.0421977345555443367482,
    -0.00962197152787697356211,
    0.00721894324666309954240,
    -0.00116516759185906511211,
    -0.000215241674114950972816,
    0.000128050282388116186153,
    -0.0000201348547807882386557,
    -0.00000125049348214267065735,
    0.00000113302723198169588237,
    -2.05633841697760710345e-7,
    6.11609510448141581786e-9,
    5.00200764446922293006e-9,
    -1.18127457048702014459e-9,
    1.04342671169110051049e-10,
    7.78226343990507125405e-12,
    -3.69680561864220570819e-12,
    5.10037028745447597902e-13,
    -2.05832605356650678322e-14,
    -5.34812253942301798237e-15,
    1.22677862823826079016e-15,
};

// 1/Gamma(1+w) for |w| <= 1/2.
double inv_gamma1p(double w) {
    double s = 0.0;
    double p = 1.0;
    for (double c : kInvGammaTaylor) {
        s += c * p;
        p *= w;
    }
    return s;
}

// gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)  (even series; safe at mu -> 0)
// gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
void temme_gamma(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    const double mu2 = mu * mu;
    double s_odd = 0.0, s_even = 0.0, p = 1.0;
    for (std::size_t k = 0; k + 1 < std::size(kInvGammaTaylor); k += 2) {
        s_even += kInvGammaTaylor[k] * p;
        s_odd += kInvGammaTaylor[k + 1] * p;
        p *= mu2;
    }
    gam1 = -s_odd;
    gam2 = s_even;
    gampl = inv_gamma1p(mu);
    gammi = inv_gamma1p(-mu);
}

// CF1: f = J'_nu(x)/J_nu(x) by the Lentz continued fraction; sign tracks the
// sign of J_nu.
double cf1(double nu, double x, int& sign) {
    sign = 1;
    const double xi = 1.0 / x;
    double h = nu * xi;
    if (std::abs(h) < kTiny) h = kTiny;
    double b = 2.0 * nu * xi;
    double d = 0.0;
    double c = h;
    for (int i = 1; i <= kMaxIter; ++i) {
        b += 2.0 * xi;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) sign = -sign;
        if (std::abs(del - 1.0) < 2.0 * kEps) return h;
    }
    throw numerical_error("bessel", "cylinder", "CF1 failed to converge");
}

// CF2: p + i q = (J' + iY')/(J + iY) at order mu, x >= 2 (Steed's method).
std::complex<double> cf2(double mu, double x) {
    using cplx = std::complex<double>;
    const cplx i01(0.0, 1.0);
    double a = 0.25 - mu * mu;
    cplx b(2.0 * x, 2.0);
    cplx c = b + cplx(a / x, 0.0) / b; // placeholder start; Lentz below
    // Modified Lentz on CF = a1/(b1 + a2/(b2 + ...)), a_n = (n-1/2)^2 - mu^2,
    // b_n = 2(x + n i).
    cplx f = b;
    cplx C = f;
    cplx D = 0.0;
    double an = a;
    int n = 1;
    for (; n <= kMaxIter; ++n) {
        if (n > 1) {
            an = (n - 0.5) * (n - 0.5) - mu * mu;
            b += cplx(0.0, 2.0);
        }
        const cplx aa(an, 0.0);
        if (n == 1) {
            f = b;
            C = f;
            D = 0.0;
            continue;
        }
        D = b + aa * D;
        if (std::abs(D) < kTiny) D = kTiny;
        C = b + aa / C;
        if (std::abs(C) < kTiny) C = kTiny;
        D = 1.0 / D;
        const cplx del = C * D;
        f *= del;
        if (std::abs(del - 1.0) < 4.0 * kEps) break;
    }
    if (n > kMaxIter) throw numerical_error("bessel", "cylinder", "CF2 failed to converge");
    (void)c;
    // CF value K = a1/f' form: f accumulated b1 + a2/(b2+...) so K = a1/f.
    const cplx K = cplx(a, 0.0) / f;
    return cplx(-0.5 / x, 0.0) + i01 + i01 * K / x;
}

// Temme's series: Y_mu(x) and Y_{mu+1}(x) for |mu| <= 1/2, 0 < x < 2.
void temme_y(double mu, double x, double& ymu, double& ymu1) {
    const double pimu = kPi * mu;
    const double fact = (std::abs(pimu) < 1e-15) ? 1.0 : pimu / std::sin(pimu);
    const double lnhx = -std::log(0.5 * x);
    const double e = mu * lnhx;
    const double fact2 = (std::abs(e) < 1e-15) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gamma(mu, gam1, gam2, gampl, gammi);
    double ff = 2.0 / kPi * fact * (gam1 * std::cosh(e) + gam2 * fact2 * lnhx);
    const double ee = std::exp(e);
    double p = ee / (gampl * kPi);
    double q = 1.0 / (ee * kPi * gammi);
    const double pimu2 = 0.5 * pimu;
    const double fact3 = (std::abs(pimu2) < 1e-15) ? 1.0 : std::sin(pimu2) / pimu2;
    const double r = kPi * pimu2 * fact3 * fact3;
    double c = 1.0;
    const double d = -0.25 * x * x;
    double sum = ff + r * q;
    double sum1 = p;
    const double mu2 = mu * mu;
    for (int i = 1; i <= kMaxIter; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * (ff + r * q);
        sum += del;
        const double del1 = c * p - i * del;
        sum1 += del1;
        if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) {
            ymu = -sum;
            ymu1 = -sum1 * 2.0 / x;
            return;
        }
    }
    throw numerical_error("bessel", "cylinder", "Temme series failed to converge");
}

// Large-argument P/Q sums: P + iQ = sum_k a_k(nu) (i/x)^k, truncated at the
// smallest term.
std::complex<double> pq_sum(double nu, double x) {
    std::complex<double> s(0.0, 0.0);
    std::complex<double> term(1.0, 0.0);
    const std::complex<double> iox(0.0, 1.0 / x);
    double prev = std::numeric_limits<double>::max();
    for (int k = 0; k <= 60; ++k) {
        s += term;
        const double mag = std::abs(term);
        if (mag < 1e-17) break;
        if (mag > prev) break; // divergent tail reached
        prev = mag;
        const double num = 4.0 * nu * nu - (2.0 * k + 1.0) * (2.0 * k + 1.0);
        term *= num / (8.0 * (k + 1.0)) * iox;
    }
    return s;
}

CylinderEval asymptotic_jy(double nu, double x) {
    CylinderEval ev;
    ev.nu = nu;
    ev.x = x;
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double omega = x - (0.5 * nu + 0.25) * kPi;
    const std::complex<double> pq = pq_sum(nu, x);
    const double P = pq.real(), Q = pq.imag();
    const double cw = std::cos(omega), sw = std::sin(omega);
    ev.J = amp * (P * cw - Q * sw);
    ev.Y = amp * (P * sw + Q * cw);
    // J_{nu+1}, Y_{nu+1} for the derivatives.
    const std::complex<double> pq1 = pq_sum(nu + 1.0, x);
    const double omega1 = omega - 0.5 * kPi;
    const double c1 = std::cos(omega1), s1 = std::sin(omega1);
    const double J1 = amp * (pq1.real() * c1 - pq1.imag() * s1);
    const double Y1 = amp * (pq1.real() * s1 + pq1.imag() * c1);
    ev.Jp = nu / x * ev.J - J1;
    ev.Yp = nu / x * ev.Y - Y1;
    ev.H1 = std::complex<double>(ev.J, ev.Y);
    return ev;
}

CylinderEval steed_temme(double nu, double x) {
    CylinderEval ev;
    ev.nu = nu;
    ev.x = x;
    const double xi = 1.0 / x;
    const double w = 2.0 * xi / kPi; // Wronskian J Y' - J' Y

    int sign = 1;
    const double f_nu = cf1(nu, x, sign);

    // Downward recurrence from nu to mu in [-1/2, 1/2) (x < 2) or to
    // mu = nu - max(0, int(nu - x + 1.5)) (x >= 2).
    const int nl = (x < 2.0) ? static_cast<int>(nu + 0.5)
                             : std::max(0, static_cast<int>(nu - x + 1.5));
    const double mu = nu - nl;

    double rjl = sign * kTiny;
    double rjpl = f_nu * rjl;
    const double rjl_at_nu = rjl;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    const double f_mu = rjpl / rjl;

    double rjmu, rymu, rymup, ry1;
    if (x < 2.0) {
        temme_y(mu, x, rymu, ry1);
        rymup = mu * xi * rymu - ry1;
        rjmu = w / (rymup - f_mu * rymu);
    } else {
        const std::complex<double> pq = cf2(mu, x);
        const double p = pq.real(), q = pq.imag();
        double gam = (p - f_mu) / q;
        rjmu = std::sqrt(w / ((p - f_mu) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = mu * xi * rymu - rymup;
    }

    // Rescale the J chain so that it matches the normalized value at mu.
    const double scale = rjmu / rjl;
    ev.J = rjl_at_nu * scale;
    ev.Jp = f_nu * ev.J;

    // Upward recurrence for Y from mu to nu (stable direction).
    double y_prev = rymu;
    double y_cur = ry1;
    double order = mu + 1.0;
    for (int l = 1; l < nl; ++l) {
        const double y_next = 2.0 * order * xi * y_cur - y_prev;
        y_prev = y_cur;
        y_cur = y_next;
        order += 1.0;
    }
    if (nl == 0) {
        ev.Y = rymu;
        ev.Yp = rymup;
    } else {
        ev.Y = y_cur;
        // Y'_nu = nu/x Y_nu - Y_{nu+1}
        const double y_up = 2.0 * order * xi * y_cur - y_prev;
        ev.Yp = nu * xi * ev.Y - y_up;
    }
    ev.H1 = std::complex<double>(ev.J, ev.Y);
    return ev;
}

} // namespace

double bessel_j_series(double nu, double x) {
    if (x == 0.0) return (nu == 0.0) ? 1.0 : 0.0;
    // J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-1)^k (x/2)^{2k} / (k! (nu+1)_k)
    const double h = 0.5 * x;
    double lead;
    if (nu <= 170.0) {
        lead = std::pow(h, nu) / std::tgamma(nu + 1.0);
    } else {
        lead = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
    }
    double term = 1.0;
    double sum = 1.0;
    const double h2 = h * h;
    for (int k = 1; k <= 2000; ++k) {
        term *= -h2 / (k * (nu + k));
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return lead * sum;
}

CylinderEval cylinder(double nu, double x) {
    if (nu < 0.0) throw invalid_parameter("bessel: order must be nonnegative");
    if (x <= 0.0) throw invalid_parameter("bessel: argument must be positive");
    if (x >= std::max(30.0, 2.0 * nu * nu)) return asymptotic_jy(nu, x);
    return steed_temme(nu, x);
}

double bessel_j(double nu, double x) {
    if (nu < 0.0) throw invalid_parameter("bessel_j: order must be nonnegative");
    if (x < 0.0) throw invalid_parameter("bessel_j: argument must be nonnegative");
    if (x == 0.0) return (nu == 0.0) ? 1.0 : 0.0;
    // Series region: max term is the first, so no cancellation growth.
    if (x <= std::max(2.0, 2.0 * std::sqrt(nu + 1.0))) return bessel_j_series(nu, x);
    return cylinder(nu, x).J;
}

double bessel_y(double nu, double x) {
    if (x <= 0.0) throw invalid_parameter("bessel_y: argument must be positive");
    return cylinder(nu, x).Y;
}

std::complex<double> hankel1(double nu, double x) {
    if (x <= 0.0) throw invalid_parameter("hankel1: argument must be positive");
    const CylinderEval ev = cylinder(nu, x);
    return ev.H1;
}

double hankel_asymptotic_coeff(double nu, int k) {
    if (k < 0) throw invalid_parameter("hankel_asymptotic_coeff: k must be >= 0");
    double a = 1.0;
    for (int j = 1; j <= k; ++j) {
        a *= (4.0 * nu * nu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j);
    }
    return a;
}

std::complex<double> hankel1_asymptotic(double nu, double x, int K) {
    if (K < 0 || K > 10) throw invalid_parameter("hankel1_asymptotic: K must be in [0, 10]");
    if (x < std::max(10.0, 2.0 * nu * nu)) {
        throw numerical_error("bessel", "hankel1_asymptotic",
                              "argument below validity threshold max(10, 2 nu^2)");
    }
    std::complex<double> sum(0.0, 0.0);
    const std::complex<double> iox(0.0, 1.0 / x);
    std::complex<double> p(1.0, 0.0);
    for (int k = 0; k <= K; ++k) {
        sum += hankel_asymptotic_coeff(nu, k) * p;
        p *= iox;
    }
    const double omega = x - (0.5 * nu + 0.25) * kPi;
    const std::complex<double> phase(std::cos(omega), std::sin(omega));
    return std::sqrt(2.0 / (kPi * x)) * phase * sum;
}

} // namespace conewave::bessel
