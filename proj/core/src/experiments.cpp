#include "conewave/experiments.hpp"
#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/geometry.hpp"
#include "conewave/index_sets.hpp"
#include "conewave/kernels.hpp"
#include "conewave/output.hpp"
#include "conewave/propagator.hpp"
#include "conewave/radial.hpp"
#include "conewave/version.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace conewave {

namespace {
constexpr double kPi = 3.14159265358979323846;

const std::vector<std::string> kCommonKeys = {
    "cone.n",      "cross_section.kind", "cross_section.param", "modes.J",
    "profile.kind", "profile.c",         "profile.x_match",     "experiment.type",
    "output.directory", "output.formats", "output.seed"};

std::vector<std::string> with_common(std::vector<std::string> extra) {
    extra.insert(extra.end(), kCommonKeys.begin(), kCommonKeys.end());
    return extra;
}

std::vector<std::string> experiment_keys(const std::string& type) {
    if (type == "spectrum") return with_common({});
    if (type == "resolvent-slice")
        return with_common({"experiment.lambda", "experiment.x", "experiment.gamma",
                            "experiment.xp_min", "experiment.xp_max", "experiment.xp_count",
                            "experiment.sign"});
    if (type == "spectral-measure")
        return with_common({"experiment.lambda_min", "experiment.lambda_max",
                            "experiment.lambda_count", "experiment.x", "experiment.gamma",
                            "experiment.xp"});
    if (type == "dispersive-fit")
        return with_common({"experiment.t_min", "experiment.t_max", "experiment.t_count",
                            "experiment.eps", "experiment.lambda_max", "experiment.x_count",
                            "experiment.gamma_count"});
    if (type == "strichartz")
        return with_common({"experiment.q", "experiment.r", "experiment.bump_center",
                            "experiment.bump_width", "experiment.t_count", "experiment.eps",
                            "experiment.lambda_max"});
    if (type == "index-sets") return with_common({"experiment.cutoff"});
    if (type == "flow-sweep") return with_common({"experiment.s_count", "experiment.sp_count"});
    throw invalid_parameter("config: unknown experiment.type '" + type + "'");
}

std::vector<std::string> resolved_config_header(const Config& cfg) {
    std::vector<std::string> lines;
    lines.push_back(std::string("conewave ") + version_string);
    for (const auto& [k, v] : cfg.entries()) lines.push_back(k + " = " + v);
    return lines;
}

bool wants_format(const Config& cfg, const std::string& fmt) {
    const std::string formats = cfg.get_string("output.formats", "csv");
    return formats.find(fmt) != std::string::npos;
}

std::string kind_name(kernels::KernelKind k) {
    switch (k) {
        case kernels::KernelKind::ResolventOut: return "resolvent_out";
        case kernels::KernelKind::ResolventIn: return "resolvent_in";
        case kernels::KernelKind::SpectralMeasure: return "spectral_measure";
        case kernels::KernelKind::Propagator: return "propagator";
    }
    return "?";
}
} // namespace

ConeSetup cone_from_config(const Config& cfg) {
    ConeSetup setup;
    setup.n = cfg.get_int("cone.n");
    const std::string kind = cfg.get_string("cross_section.kind");
    const double param = cfg.get_double("cross_section.param");
    setup.J = cfg.get_int("modes.J", 20);
    if (kind == "circle") {
        setup.cs = build_spectrum(CrossSectionKind::Circle, param, setup.J);
    } else if (kind == "round_sphere") {
        setup.cs = build_spectrum(CrossSectionKind::RoundSphere, param, setup.J);
    } else {
        throw invalid_parameter("config: cross_section.kind must be circle or round_sphere");
    }
    const std::string pk = cfg.get_string("profile.kind", "constant");
    if (pk == "constant") {
        setup.profile.kind = ProfileKind::Constant;
    } else if (pk == "exponential") {
        setup.profile.kind = ProfileKind::Exponential;
    } else if (pk == "poly_bump") {
        setup.profile.kind = ProfileKind::PolyBump;
    } else {
        throw invalid_parameter("config: profile.kind must be constant, exponential or poly_bump");
    }
    setup.profile.c = cfg.get_double("profile.c", 0.0);
    setup.profile.x_match = cfg.get_double("profile.x_match", 1.0);
    setup.ebar = stability_constant(setup.n, setup.profile).ebar;
    return setup;
}

void validate_experiment(const Config& cfg) {
    const std::string type = cfg.get_string("experiment.type");
    cfg.enforce_known_keys(experiment_keys(type));
    cone_from_config(cfg); // constructs and checks spectra, profile, stability
    if (type == "strichartz") {
        const double q = cfg.get_double("experiment.q", 2.0);
        const double r = cfg.get_double("experiment.r", 6.0);
        const int n = cfg.get_int("cone.n");
        if (!propagator::is_admissible(q, r, n)) {
            throw invalid_parameter("config: (q, r) is not Schrodinger admissible for this n");
        }
    }
}

namespace {

RunResult run_spectrum(const Config& cfg, const ConeSetup& s, const std::string& dir) {
    RunResult res;
    const ModeConstants mc = mode_constants(s.n, s.cs);
    const std::string path = dir + "/spectrum.csv";
    CsvWriter csv(path, {"j", "sigma2", "multiplicity", "nu", "im_lambda"},
                  resolved_config_header(cfg));
    for (int j = 0; j < s.cs.truncation; ++j) {
        csv.row({static_cast<double>(j), s.cs.eigenvalues[j],
                 static_cast<double>(s.cs.multiplicities[j]), mc.nu[j], mc.im_lambda[j]});
    }
    res.artifacts.push_back(path);
    res.summary.push_back("spectrum: " + s.cs.describe() + ", J = " +
                          std::to_string(s.cs.truncation) + ", ebar = " + format_double(s.ebar));
    return res;
}

RunResult run_resolvent_slice(const Config& cfg, const ConeSetup& s, const std::string& dir) {
    RunResult res;
    const double lambda = cfg.get_double("experiment.lambda", 1.0);
    const double x = cfg.get_double("experiment.x", 0.5);
    const double gamma = cfg.get_double("experiment.gamma", 1.0);
    const double lo = cfg.get_double("experiment.xp_min", 0.8);
    const double hi = cfg.get_double("experiment.xp_max", 2.0);
    const int count = cfg.get_int("experiment.xp_count", 64);
    const std::string signstr = cfg.get_string("experiment.sign", "out");
    const auto sign = (signstr == "in") ? kernels::ResolventSign::Incoming
                                        : kernels::ResolventSign::Outgoing;
    const std::string path = dir + "/resolvent_slice.csv";
    CsvWriter csv(path, {"lambda", "x", "y_gamma", "xp", "value_re", "value_im", "kind"},
                  resolved_config_header(cfg));
    for (int i = 0; i < count; ++i) {
        const double xp = lo + (hi - lo) * i / (count - 1);
        std::complex<double> v;
        kernels::KernelKind kk;
        if (s.profile.is_product()) {
            const auto ks = kernels::resolvent_kernel(s.n, s.cs, lambda, x, gamma, xp, s.J, sign);
            v = ks.value;
            kk = ks.kind;
        } else {
            const auto ak = radial::assemble_nonproduct(s.n, s.cs, s.profile, lambda, x, gamma,
                                                        xp, s.J);
            v = (sign == kernels::ResolventSign::Outgoing) ? ak.resolvent_out
                                                           : std::conj(ak.resolvent_out);
            kk = (sign == kernels::ResolventSign::Outgoing) ? kernels::KernelKind::ResolventOut
                                                            : kernels::KernelKind::ResolventIn;
        }
        csv.row_mixed({format_double(lambda), format_double(x), format_double(gamma),
                       format_double(xp), format_double(v.real()), format_double(v.imag()),
                       kind_name(kk)});
    }
    res.artifacts.push_back(path);

    // Non-product runs also emit the per-mode radial solutions for plotting.
    if (!s.profile.is_product()) {
        const std::string rpath = dir + "/radial_modes.csv";
        CsvWriter rcsv(rpath, {"j", "x", "u_reg_re", "u_reg_im", "u_out_re", "u_out_im"},
                       resolved_config_header(cfg));
        const double xmax = std::max(s.profile.x_match, hi) * 1.25;
        for (int j = 0; j < std::min(s.J, 6); ++j) {
            radial::SolveOptions opts;
            opts.grid_size = 512;
            opts.x_out_min = 0.01 * xmax;
            const auto pair =
                radial::solve_pair(radial::make_spec(s.n, s.cs, s.profile, j, lambda), xmax, opts);
            for (std::size_t i = pair.out_start; i < pair.grid.size(); i += 4) {
                rcsv.row({static_cast<double>(j), pair.grid[i], pair.u_reg[i].real(),
                          pair.u_reg[i].imag(), pair.u_out[i].real(), pair.u_out[i].imag()});
            }
        }
        res.artifacts.push_back(rpath);
    }
    res.summary.push_back("resolvent-slice: lambda = " + format_double(lambda) + ", " +
                          std::to_string(count) + " points");
    return res;
}

RunResult run_spectral_measure(const Config& cfg, const ConeSetup& s, const std::string& dir) {
    RunResult res;
    const double l0 = cfg.get_double("experiment.lambda_min", 0.5);
    const double l1 = cfg.get_double("experiment.lambda_max", 8.0);
    const int count = cfg.get_int("experiment.lambda_count", 64);
    const double x = cfg.get_double("experiment.x", 0.5);
    const double gamma = cfg.get_double("experiment.gamma", 1.0);
    const double xp = cfg.get_double("experiment.xp", 1.2);
    const std::string path = dir + "/spectral_measure.csv";
    CsvWriter csv(path, {"lambda", "x", "y_gamma", "xp", "value_re", "value_im", "kind"},
                  resolved_config_header(cfg));
    const auto grid = kernels::geometric_grid(l0, l1, count);
    for (double lam : grid) {
        double v;
        if (s.profile.is_product()) {
            v = kernels::spectral_measure_kernel(s.n, s.cs, lam, x, gamma, xp, s.J).value.real();
        } else {
            v = radial::assemble_nonproduct(s.n, s.cs, s.profile, lam, x, gamma, xp, s.J)
                    .spectral_measure;
        }
        csv.row_mixed({format_double(lam), format_double(x), format_double(gamma),
                       format_double(xp), format_double(v), "0", "spectral_measure"});
    }
    res.artifacts.push_back(path);
    res.summary.push_back("spectral-measure: " + std::to_string(count) + " lambda points");
    return res;
}

RunResult run_dispersive_fit(const Config& cfg, const ConeSetup& s, const std::string& dir,
                             int threads) {
    RunResult res;
    const double t0 = cfg.get_double("experiment.t_min", 0.02);
    const double t1 = cfg.get_double("experiment.t_max", 1.0);
    const int tcount = cfg.get_int("experiment.t_count", 8);
    const int xcount = cfg.get_int("experiment.x_count", 6);
    const int gcount = cfg.get_int("experiment.gamma_count", 6);
    const unsigned seed = static_cast<unsigned>(cfg.get_int("output.seed", 1));

    propagator::EngineOptions opts;
    opts.eps = cfg.get_double("experiment.eps", 2e-3);
    opts.lambda_max = cfg.get_double("experiment.lambda_max", 20.0);
    opts.threads = threads;

    // Jittered sample grids (deterministic given output.seed).
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jit(-0.3, 0.3);
    std::vector<double> xs;
    for (int i = 0; i < xcount; ++i) {
        const double base = 0.12 + 0.5 * i / std::max(1, xcount - 1);
        const double step = 0.5 / std::max(1, xcount - 1);
        xs.push_back(base + jit(rng) * step);
    }
    std::vector<double> gs;
    for (int i = 0; i < gcount; ++i) {
        // exclude near-antipodal pairs (gamma > pi - 0.2)
        const double base = 0.2 + (kPi - 0.45) * i / std::max(1, gcount - 1);
        const double step = (kPi - 0.45) / std::max(1, gcount - 1);
        gs.push_back(std::min(base + jit(rng) * step, kPi - 0.21));
    }
    const auto t_list = kernels::geometric_grid(t0, t1, tcount);

    propagator::SchrodingerEngine engine =
        s.profile.is_product()
            ? propagator::SchrodingerEngine::product(s.n, s.cs, s.J, xs, t_list, opts)
            : propagator::SchrodingerEngine::nonproduct(s.n, s.cs, s.profile, xs, t_list, opts);
    const auto fit = propagator::dispersive_fit(engine, gs);

    const std::string path = dir + "/dispersive_fit.csv";
    auto header = resolved_config_header(cfg);
    header.push_back("eps = " + format_double(engine.eps()));
    header.push_back("lambda_max = " + format_double(opts.lambda_max));
    header.push_back("nodes = " + std::to_string(engine.node_count()));
    std::string xg = "x_grid =", gg = "gamma_grid =";
    for (double v : xs) xg += " " + format_double(v);
    for (double v : gs) gg += " " + format_double(v);
    header.push_back(xg);
    header.push_back(gg);
    header.push_back("fitted_alpha = " + format_double(fit.alpha));
    CsvWriter csv(path, {"t", "sup_abs", "fitted_alpha"}, header);
    for (std::size_t i = 0; i < fit.t_list.size(); ++i) {
        csv.row({fit.t_list[i], fit.sup_abs[i], fit.alpha});
    }
    res.artifacts.push_back(path);
    if (wants_format(cfg, "svg")) {
        const std::string svg = dir + "/dispersive_fit.svg";
        write_loglog_svg(svg, "sup |K(t)| vs t", {fit.t_list, fit.sup_abs}, fit.alpha);
        res.artifacts.push_back(svg);
    }
    res.summary.push_back("dispersive-fit: alpha = " + format_double(fit.alpha) +
                          " (target -n/2 = " + format_double(-0.5 * s.n) +
                          ", ebar = " + format_double(s.ebar) + ")");
    return res;
}

RunResult run_strichartz(const Config& cfg, const ConeSetup& s, const std::string& dir) {
    RunResult res;
    const double q = cfg.get_double("experiment.q", 2.0);
    const double r = cfg.get_double("experiment.r", 6.0);
    const double center = cfg.get_double("experiment.bump_center", 1.0);
    const double width = cfg.get_double("experiment.bump_width", 0.3);
    const int tcount = cfg.get_int("experiment.t_count", 33);
    const double eps = cfg.get_double("experiment.eps", 1e-4);
    const double lmax = cfg.get_double("experiment.lambda_max", 30.0);

    std::vector<double> xgrid;
    const int m = s.profile.is_product() ? 900 : 300;
    const double xtop = s.profile.is_product() ? 16.0 : 10.0;
    for (int i = 1; i <= m; ++i) xgrid.push_back(0.02 + xtop * i / m);
    propagator::RadialEvolution ev =
        s.profile.is_product()
            ? propagator::RadialEvolution(s.n, s.cs, {center, width}, xgrid, lmax, eps, 1.0)
            : propagator::RadialEvolution(s.n, s.cs, s.profile, {center, width}, xgrid, lmax,
                                          eps, 1.0);
    std::vector<double> tgrid;
    for (int i = 0; i < tcount; ++i) tgrid.push_back(1.0 * i / (tcount - 1));
    const double norm = propagator::strichartz_norm(ev, q, r, s.n, tgrid);
    const double k_loss = propagator::loss_exponent(s.n, q, s.ebar);

    const std::string path = dir + "/strichartz.csv";
    CsvWriter csv(path, {"q", "r", "bump_center", "bump_width", "norm", "loss_k"},
                  resolved_config_header(cfg));
    csv.row({q, r, center, width, norm, k_loss});
    res.artifacts.push_back(path);
    res.summary.push_back("strichartz: ||u||_{L^" + format_double(q) + " L^" + format_double(r) +
                          "} = " + format_double(norm) + ", loss k = " + format_double(k_loss));
    return res;
}

RunResult run_index_sets(const Config& cfg, const ConeSetup& s, const std::string& dir) {
    RunResult res;
    const double cutoff = cfg.get_double("experiment.cutoff", 6.0);
    const ModeConstants mc = mode_constants(s.n, s.cs);
    std::vector<IndexEntry> roots;
    for (double il : mc.im_lambda) {
        if (il <= cutoff) roots.push_back({il, 0});
    }
    const IndexSet eb = IndexSet::from_entries(roots, cutoff);
    const ParametrixFamily fam = parametrix_family(eb);
    const std::string path = dir + "/index_sets.txt";
    std::ofstream out(path);
    for (const auto& line : resolved_config_header(cfg)) out << "# " << line << "\n";
    out << "E_b (boundary spectrum, Im lambda_j):\n" << eb.to_string();
    out << "hat E_b:\n" << fam.hat_set.to_string();
    out << "check E_b:\n" << fam.check_set.to_string();
    out << "tilde E_b:\n" << fam.tilde_set.to_string();
    out << "inf hat E_b = " << format_double(fam.hat_set.inf()) << "\n";
    out << "inf check E_b = " << format_double(fam.check_set.inf()) << "\n";
    out << "inf tilde E_b = " << format_double(fam.tilde_set.inf()) << "\n";
    res.artifacts.push_back(path);
    res.summary.push_back("index-sets: inf hat E_b = " + format_double(fam.hat_set.inf()) +
                          " (n/2 - 1 = " + format_double(0.5 * s.n - 1.0) + ")");
    return res;
}

RunResult run_flow_sweep(const Config& cfg, const ConeSetup& s, const std::string& dir) {
    RunResult res;
    const int sc = cfg.get_int("experiment.s_count", 24);
    const int spc = cfg.get_int("experiment.sp_count", 24);
    const std::string path = dir + "/flow_sweep.csv";
    CsvWriter csv(path, {"s", "sp", "rho_tilde", "tau", "taup", "mu_abs", "mup_abs"},
                  resolved_config_header(cfg));
    const std::array<double, 2> y0 =
        (s.cs.kind == CrossSectionKind::Circle) ? std::array<double, 2>{0.0, 0.0}
                                                : std::array<double, 2>{kPi / 2, 0.0};
    for (int i = 1; i <= sc; ++i) {
        for (int k = 1; k <= spc; ++k) {
            const double sv = kPi * i / (sc + 1);
            const double spv = kPi * k / (spc + 1);
            const auto fp = flow_point(s.cs, y0, 0.0, sv, spv);
            csv.row({fp.s, fp.sp, fp.rho_tilde, fp.tau, fp.taup, fp.mu_abs, fp.mup_abs});
        }
    }
    res.artifacts.push_back(path);
    res.summary.push_back("flow-sweep: " + std::to_string(sc * spc) + " Legendrian samples");
    return res;
}

} // namespace

RunResult run_experiment(const Config& cfg, const std::string& output_override, int threads) {
    validate_experiment(cfg);
    const ConeSetup setup = cone_from_config(cfg);
    std::string dir = cfg.get_string("output.directory", "out");
    if (!output_override.empty()) dir = output_override;
    std::filesystem::create_directories(dir);
    const std::string type = cfg.get_string("experiment.type");
    if (type == "spectrum") return run_spectrum(cfg, setup, dir);
    if (type == "resolvent-slice") return run_resolvent_slice(cfg, setup, dir);
    if (type == "spectral-measure") return run_spectral_measure(cfg, setup, dir);
    if (type == "dispersive-fit") return run_dispersive_fit(cfg, setup, dir, threads);
    if (type == "strichartz") return run_strichartz(cfg, setup, dir);
    if (type == "index-sets") return run_index_sets(cfg, setup, dir);
    if (type == "flow-sweep") return run_flow_sweep(cfg, setup, dir);
    throw invalid_parameter("config: unknown experiment.type '" + type + "'");
}

std::vector<std::string> oracle_reference_lines() {
    std::vector<std::string> out;
    // Sphere S^2 enumeration: l(l+1) with multiplicity 2l+1.
    out.push_back("sphere2.sigma2 = 0 2 6 12 20");
    out.push_back("sphere2.mult = 1 3 5 7 9");
    // n = 3 indicial roots: Im lambda_l = l + 1/2 exactly.
    out.push_back("n3.sphere2.im_lambda = 0.5 1.5 2.5 3.5 4.5");
    // Half-integer Bessel closed forms.
    const double x = kPi / 2;
    out.push_back("besselj.half.at_pi_over_2 = " +
                  format_double(std::sqrt(2.0 / (kPi * x)) * std::sin(x)));
    out.push_back("bessely.half.at_pi_over_2 = " +
                  format_double(-std::sqrt(2.0 / (kPi * x)) * std::cos(x)));
    // Free-space references at lambda = 1, d = 1.
    out.push_back("free.resolvent.re = " + format_double(std::cos(1.0) / (4.0 * kPi)));
    out.push_back("free.resolvent.im = " + format_double(std::sin(1.0) / (4.0 * kPi)));
    out.push_back("free.spectral_measure.diag = " + format_double(1.0 / (2.0 * kPi * kPi)));
    // Loss exponent at n = 3, q = 2, e = 1.
    out.push_back("loss_exponent.n3.q2.e1 = " + format_double(1.0 / 7.0));
    // Free dispersive amplitude (4 pi t)^{-3/2} at t = 0.5.
    out.push_back("free.dispersive.t0p5 = " + format_double(std::pow(4.0 * kPi * 0.5, -1.5)));
    return out;
}

} // namespace conewave
