// hzeta: command-line front end for the Hurwitz zeta denseness toolkit.
//
// Subcommands: eval, afe-check, fit, search, approx-fn, constants,
// algebraic, kernel-mass, verify-all.  Output is JSON (default) or CSV.
// Exit codes: 0 success/satisfied, 2 valid-but-unsatisfied, 1 error.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hz/afe.hpp"
#include "hz/algebraic.hpp"
#include "hz/effective.hpp"
#include "hz/errors.hpp"
#include "hz/fit.hpp"
#include "hz/kernel.hpp"
#include "hz/scan.hpp"
#include "hz/search.hpp"
#include "hz/simd/kernels.hpp"
#include "hz/types.hpp"
#include "hz/zeta_core.hpp"

using json = nlohmann::ordered_json;
using cd = std::complex<double>;

namespace {

struct Options {
    std::string minpoly;
    std::string interval;
    double sigma = 1.0;
    int N = -1;
    double epsilon = 0.05;
    std::string targets;
    double T = 1000.0;
    long grid = 200000;
    unsigned long seed = 0;
    int precision_digits = 0;
    std::string out = "json";
    std::string registry;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

hz::BigInt parse_integer(std::string s) {
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = s[0] == '-';
        s.erase(s.begin());
    }
    // Strip leading zeros so the multiprecision parser never sees an
    // octal-looking literal.
    const auto first = s.find_first_not_of('0');
    s = first == std::string::npos ? "0" : s.substr(first);
    if (s.find_first_not_of("0123456789") != std::string::npos)
        throw hz::DomainError("bad integer literal '" + s + "'");
    hz::BigInt v(s);
    return negative ? -v : v;
}

hz::BigRat parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw hz::DomainError("empty rational literal");
    const auto slash = s.find('/');
    if (slash != std::string::npos)
        return hz::BigRat(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
    const auto dot = s.find('.');
    if (dot == std::string::npos) return hz::BigRat(parse_integer(s));
    const std::string frac = s.substr(dot + 1);
    hz::BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return hz::BigRat(parse_integer(s.substr(0, dot) + frac), den);
}

hz::alg::AlgebraicPtr make_parameter(const Options& opt) {
    if (opt.minpoly.empty() && opt.interval.empty()) return hz::alg::preset_sqrt2m1();
    if (opt.minpoly.empty() || opt.interval.empty())
        throw hz::DomainError("--alpha-minpoly and --alpha-interval must be given together");
    std::vector<hz::BigInt> coeffs;
    for (const auto& c : split(opt.minpoly, ',')) coeffs.push_back(parse_integer(c));
    const auto iv = split(opt.interval, ',');
    if (iv.size() != 2) throw hz::DomainError("--alpha-interval expects lo,hi");
    return hz::alg::make_algebraic(std::move(coeffs), parse_rational(iv[0]),
                                   parse_rational(iv[1]));
}

std::vector<cd> parse_targets(const std::string& text) {
    std::vector<cd> a;
    for (const auto& entry : split(text, ';')) {
        if (entry.empty()) continue;
        const auto parts = split(entry, ',');
        if (parts.empty() || parts.size() > 2)
            throw hz::DomainError("--targets entries must be re or re,im");
        const double re = std::stod(parts[0]);
        const double im = parts.size() == 2 ? std::stod(parts[1]) : 0.0;
        a.emplace_back(re, im);
    }
    if (a.empty()) throw hz::DomainError("--targets parsed to an empty list");
    return a;
}

json complex_json(const cd& z) { return json::array({z.real(), z.imag()}); }

void flatten_csv(const json& j, const std::string& prefix, std::vector<std::string>& heads,
                 std::vector<std::string>& row) {
    auto cell = [](const json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten_csv(v, prefix.empty() ? k : prefix + "." + k, heads, row);
        return;
    }
    if (j.is_array()) {
        std::string joined;
        for (const auto& v : j) {
            if (!joined.empty()) joined += ';';
            joined += cell(v);
        }
        heads.push_back(prefix);
        row.push_back(joined);
        return;
    }
    heads.push_back(prefix);
    row.push_back(cell(j));
}

void emit(const json& j, const Options& opt) {
    if (opt.out == "csv") {
        std::vector<std::string> heads, row;
        flatten_csv(j, "", heads, row);
        for (std::size_t i = 0; i < heads.size(); ++i)
            std::printf("%s%s", heads[i].c_str(), i + 1 < heads.size() ? "," : "\n");
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i];
            const bool quote = cell.find_first_of(",\";") != std::string::npos;
            if (quote) {
                std::string escaped = "\"";
                for (char c : cell) {
                    escaped += c;
                    if (c == '"') escaped += c;
                }
                cell = escaped + "\"";
            }
            std::printf("%s%s", cell.c_str(), i + 1 < row.size() ? "," : "\n");
        }
        return;
    }
    std::printf("%s\n", j.dump(2).c_str());
}

hz::eff::ConstantsRegistry load_registry(const Options& opt) {
    if (opt.registry.empty()) return {};
    return hz::eff::ConstantsRegistry::load(opt.registry);
}

int cmd_eval(const Options& opt) {
    const auto param = make_parameter(opt);
    const hz::Alpha alpha = hz::alg::alpha_of(param);
    hz::Precision prec;
    if (opt.precision_digits > 0)
        prec = hz::Precision::make(opt.precision_digits,
                                   std::pow(10.0, 2 - opt.precision_digits));
    const int kmax = std::max(0, opt.N);
    json out;
    out["sigma"] = opt.sigma;
    out["t"] = opt.T;
    out["alpha"] = alpha.approx();
    json rows = json::array();
    for (int k = 0; k <= kmax; ++k) {
        const auto r = hz::zeta::hurwitz_zeta({opt.sigma, opt.T}, alpha, k, prec);
        json row;
        row["k"] = k;
        row["value"] = complex_json(r.value);
        row["error_radius"] = r.error_radius;
        row["terms_used"] = r.terms_used;
        rows.push_back(row);
    }
    out["derivatives"] = rows;
    emit(out, opt);
    return 0;
}

int cmd_afe_check(const Options& opt, bool t_given) {
    const auto param = make_parameter(opt);
    const hz::Alpha alpha = hz::alg::alpha_of(param);
    const double mu = 1.0 / 3.0;
    const double T = t_given ? opt.T : 1e4;  // decay regime needs t >> 10^2
    const std::array<double, 2> centers{T / 100.0, T};
    const auto fit = hz::afe::fit_decay_exponent(opt.sigma, alpha, mu, centers);
    const bool decays = fit.medians.back() < fit.medians.front() && fit.nu_hat > 0;
    json out;
    out["sigma"] = opt.sigma;
    out["mu"] = mu;
    out["strip_lower_edge"] = hz::afe::strip_lower_edge(mu);
    out["t_centers"] = fit.t_centers;
    out["median_errors"] = fit.medians;
    out["nu_hat"] = fit.nu_hat;
    out["decay_observed"] = decays;
    emit(out, opt);
    return decays ? 0 : 2;
}

int cmd_fit(const Options& opt) {
    const auto param = make_parameter(opt);
    const hz::Alpha alpha = hz::alg::alpha_of(param);
    hz::fit::TargetSpec spec;
    spec.sigma = opt.sigma;
    spec.epsilon = opt.epsilon;
    spec.a = opt.targets.empty() ? std::vector<cd>{{1, 1}, {0, 0}, {0.5, 0}}
                                 : parse_targets(opt.targets);
    spec.N = static_cast<int>(spec.a.size()) - 1;
    if (opt.N >= 0 && opt.N != spec.N)
        throw hz::DomainError("--N disagrees with the number of --targets entries");
    const long R = 1;
    const long Q = 100000;
    const auto result = hz::fit::fit_targets(spec, alpha, R, Q);
    const bool satisfied = std::all_of(result.achieved.begin(), result.achieved.end(),
                                       [&](double e) { return e < spec.epsilon; });
    json out;
    out["R"] = R;
    out["Q"] = Q;
    out["certificate"] = {{"passes", result.certificate.passes},
                          {"E", result.certificate.E_value},
                          {"good_lhs", result.certificate.good_lhs},
                          {"good_rhs", result.certificate.good_rhs}};
    out["solver"] = {{"iterations", result.solution.iterations},
                     {"residual", result.solution.residual},
                     {"best_effort", result.solution.best_effort}};
    out["rounding"] = {{"certificate_lhs", result.rounding.certificate_lhs},
                       {"certificate_rhs", result.rounding.certificate_rhs}};
    out["achieved"] = result.achieved;
    out["epsilon"] = spec.epsilon;
    out["satisfied"] = satisfied;
    out["theta0_size"] = result.theta0.theta.size();
    json head = json::array();
    for (std::size_t n = 0; n < std::min<std::size_t>(16, result.theta0.theta.size()); ++n)
        head.push_back(result.theta0.theta[n]);
    out["theta0_head"] = head;
    emit(out, opt);
    return satisfied ? 0 : 2;
}

int cmd_search(const Options& opt) {
    const auto param = make_parameter(opt);
    const hz::Alpha alpha = hz::alg::alpha_of(param);
    hz::fit::TargetSpec spec;
    spec.sigma = opt.sigma;
    spec.epsilon = opt.epsilon;
    spec.a = opt.targets.empty() ? std::vector<cd>{{1.2, 0.0}} : parse_targets(opt.targets);
    spec.N = static_cast<int>(spec.a.size()) - 1;
    if (opt.N >= 0 && opt.N != spec.N)
        throw hz::DomainError("--N disagrees with the number of --targets entries");
    hz::search::SearchWindow window;
    window.T = opt.T;
    window.grid_points = opt.grid;
    const auto rep = hz::search::search_shift(spec, alpha, window);
    json out;
    out["window"] = {{"T", window.T}, {"grid_points", window.grid_points}};
    out["tau_best"] = rep.tau_best;
    out["errors_per_k"] = rep.errors_per_k;
    out["max_error"] = rep.max_error;
    out["epsilon"] = spec.epsilon;
    out["satisfied"] = rep.satisfied;
    out["em_points"] = rep.em_points;
    out["afe_points"] = rep.afe_points;
    emit(out, opt);
    return rep.satisfied ? 0 : 2;
}

int cmd_approx_fn(const Options& opt) {
    const auto param = make_parameter(opt);
    const hz::Alpha alpha = hz::alg::alpha_of(param);
    hz::search::ApproxJob job;
    job.s0 = {opt.sigma, 0.0};
    job.r = 0.25;
    job.epsilon = opt.epsilon;
    json out;
    if (!opt.targets.empty()) {
        const auto a = parse_targets(opt.targets);
        if (a.size() != 1)
            throw hz::DomainError("approx-fn --targets takes a single constant value");
        const cd c = a[0];
        job.f = [c](cd) { return c; };
        out["f"] = {{"kind", "constant"}, {"value", complex_json(c)}};
    } else {
        // Plant mid-window on a grid point; off-grid plants need step sizes
        // far below the high-derivative needle width to be recoverable.
        const double h = opt.T / static_cast<double>(opt.grid - 1);
        const double tau_star = opt.T + std::round(0.5 * opt.T / h) * h;
        job.f = [&alpha, tau_star](cd s) {
            return hz::scan::em_point(s.real(), tau_star + s.imag(), alpha, 0);
        };
        out["f"] = {{"kind", "planted"}, {"tau_star", tau_star}};
    }
    hz::search::SearchWindow window;
    window.T = opt.T;
    window.grid_points = opt.grid;
    const auto rep = hz::search::approx_function(job, alpha, window);
    out["tau"] = rep.tau;
    out["delta"] = rep.delta;
    out["n_used"] = rep.n_used;
    out["m_tau"] = rep.m_tau;
    out["search_max_error"] = rep.search.max_error;
    out["max_error_on_disk"] = rep.max_error_on_disk;
    out["bound_3eps_ok"] = rep.bound_3eps_ok;
    out["sigma1_bound"] = rep.sigma1_bound;
    out["sigma2_value"] = rep.sigma2_value;
    out["sigma2_bound"] = rep.sigma2_bound;
    out["sigma3_value"] = rep.sigma3_value;
    json coeffs = json::array();
    for (const auto& c : rep.coeffs) coeffs.push_back(complex_json(c));
    out["coeffs"] = coeffs;
    emit(out, opt);
    return rep.bound_3eps_ok ? 0 : 2;
}

int cmd_constants(const Options& opt) {
    const auto reg = load_registry(opt);
    reg.validate();
    json out;
    out["registry"] = json::parse(reg.to_json());
    out["xi"] = {{"value", hz::afe::StripConstants::xi()},
                 {"numerator", 6400},
                 {"denominator", 8578443}};
    out["theta"] = hz::afe::StripConstants{}.theta();
    out["E_1_200_1_1"] = hz::eff::capital_E(1, 200, 1.0, 1);
    out["density_lower_bound_Q2"] = hz::eff::density_lower_bound(2);
    if (!opt.targets.empty()) {
        const auto param = make_parameter(opt);
        const auto targets = parse_targets(opt.targets);
        const int N = static_cast<int>(targets.size()) - 1;
        const auto budget =
            hz::eff::plan_budget(opt.sigma, N, param->approx(), opt.epsilon, targets,
                                 param->degree() + 1, reg);
        const auto audit = hz::eff::audit_budget(budget, reg);
        out["budget"] = json::parse(budget.to_json());
        json checks = json::array();
        for (const auto& c : audit.checks)
            checks.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
        out["audit"] = {{"checks", checks}, {"all_hold", audit.all_hold}};
    }
    emit(out, opt);
    return 0;
}

int cmd_algebraic(const Options& opt) {
    const auto param = make_parameter(opt);
    json out;
    out["degree"] = param->degree();
    out["height"] = param->height().str();
    out["certifying_prime"] = param->certifying_prime();
    out["alpha"] = param->approx();
    const long Q = 2, M = 1;
    out["kappa_log"] = hz::alg::kappa_constant(Q, M, *param);
    const auto mem = hz::alg::membership_A(*param, Q, M);
    json m;
    m["Q"] = Q;
    m["M"] = M;
    m["in_A1"] = mem.in_A1;
    m["in_A2"] = mem.in_A2;
    m["xy_range"] = mem.xy_range;
    if (mem.witness)
        m["witness"] = {{"m", mem.witness->m}, {"x", mem.witness->x}, {"y", mem.witness->y}};
    out["membership"] = m;
    out["in_A"] = mem.in_A1 || mem.in_A2;
    emit(out, opt);
    return 0;
}

int cmd_kernel_mass(const Options& opt) {
    const auto param = make_parameter(opt);
    const hz::Alpha alpha = hz::alg::alpha_of(param);
    const auto cfg = hz::kern::KernelConfig::make(2);
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    json rows = json::array();
    bool all_within = true;
    const double bound = 0.25;  // Q^-2 at Q = 2
    for (int draw = 0; draw < 3; ++draw) {
        hz::fit::PhaseVector theta1;
        theta1.theta.resize(cfg.Q);
        for (auto& x : theta1.theta) x = draw == 0 ? 0.0 : uni(rng);
        const double mass = hz::kern::kernel_mass(cfg, alpha, theta1, opt.T);
        const bool within = std::abs(mass - 1.0) < bound;
        all_within = all_within && within;
        rows.push_back({{"theta1", theta1.theta}, {"mass", mass}, {"within_bound", within}});
    }
    json out;
    out["Q"] = cfg.Q;
    out["delta"] = cfg.delta;
    out["T"] = opt.T;
    out["bound"] = bound;
    out["draws"] = rows;
    out["all_within_bound"] = all_within;
    emit(out, opt);
    return all_within ? 0 : 2;
}

int cmd_verify_all(const Options& opt) {
    json checks = json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool pass, double value) {
        checks.push_back({{"name", name}, {"pass", pass}, {"value", value}});
        all = all && pass;
    };

    const double pi = std::acos(-1.0);
    const auto z2 = hz::zeta::hurwitz_zeta({2.0, 0.0}, hz::Alpha(1.0));
    record("riemann_zeta_2", std::abs(z2.value - cd(pi * pi / 6, 0)) < 1e-12,
           std::abs(z2.value - cd(pi * pi / 6, 0)));

    const auto zh = hz::zeta::hurwitz_zeta({2.0, 0.0}, hz::Alpha(0.5));
    record("hurwitz_half_identity", std::abs(zh.value - cd(pi * pi / 2, 0)) < 1e-10,
           std::abs(zh.value - cd(pi * pi / 2, 0)));

    double mass = 0;
    {
        const int n = 1 << 16;
        double acc = 0;
        for (int i = 1; i < n; ++i)
            acc += hz::kern::mollifier_eval(-1.0 + 2.0 * i / n);
        mass = acc * (2.0 / n);
    }
    record("mollifier_unit_mass", std::abs(mass - 1.0) < 1e-8, std::abs(mass - 1.0));

    bool c0_ok = true;
    double c0_worst = 0;
    for (long Q : {2L, 3L, 4L}) {
        const auto cfg = hz::kern::KernelConfig::make(Q);
        const auto c0 = hz::kern::fourier_coeff(0, cfg);
        c0_worst = std::max(c0_worst, std::abs(c0 - cd(cfg.delta, 0)));
        c0_ok = c0_ok && std::abs(c0 - cd(cfg.delta, 0)) < 1e-10;
    }
    record("fourier_c0_is_delta", c0_ok, c0_worst);

    const double e_val = hz::eff::capital_E(1, 200, 1.0, 1);
    record("capital_E_closed_form", std::abs(e_val - std::log(100.0) / 32.0) < 1e-12,
           std::abs(e_val - std::log(100.0) / 32.0));

    const auto dens = hz::eff::density_lower_bound_exact(2);
    record("density_exact_3_128", dens == hz::BigRat(3, 128),
           hz::eff::density_lower_bound(2));

    const double xi = hz::afe::StripConstants::xi();
    const double lhs = 3.0 + 1.0 / 6.0;
    const double rhs = (40.0 / 267.0) * std::sqrt(1.0 / (3.0 * xi));
    record("xi_degree_equality", std::abs(lhs - rhs) / rhs < 1e-12,
           std::abs(lhs - rhs) / rhs);

    const auto sqrt2 = hz::alg::preset_sqrt2m1();
    record("preset_root_isolated",
           std::abs(sqrt2->approx() - (std::sqrt(2.0) - 1.0)) < 1e-14,
           std::abs(sqrt2->approx() - (std::sqrt(2.0) - 1.0)));

    {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        const hz::Alpha alpha(std::sqrt(2.0) - 1.0);
        hz::fit::PolydiscSolution sol;
        sol.z.resize(20);
        for (auto& v : sol.z) {
            const double re = uni(rng), im = uni(rng);
            const double r = std::hypot(re, im);
            v = r > 1 ? cd(re / r, im / r) : cd(re, im);
        }
        const auto rounded = hz::fit::round_phases(sol, 1, 21, 1.0, 0, alpha);
        record("rounding_certificate", rounded.certificate_lhs <= rounded.certificate_rhs,
               rounded.certificate_lhs);
    }

    if (hz::simd::avx2_available()) {
        const hz::Alpha alpha(std::sqrt(2.0) - 1.0);
        hz::scan::GridSpec spec{1000.0, 0.01, 256};
        const auto a = hz::scan::em_grid(1.0, alpha, 1, spec, hz::simd::Kind::scalar);
        const auto b = hz::scan::em_grid(1.0, alpha, 1, spec, hz::simd::Kind::avx2);
        double worst = 0;
        for (int k = 0; k <= 1; ++k)
            for (std::size_t j = 0; j < spec.count; ++j)
                worst = std::max(worst, std::abs(a.values[k][j] - b.values[k][j]));
        record("simd_paths_agree", worst < 1e-12, worst);
    }

    json out;
    out["checks"] = checks;
    out["all_pass"] = all;
    emit(out, opt);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hurwitz zeta effective-denseness toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha-minpoly", opt.minpoly,
                        "integer minimal polynomial coefficients c0,c1,...");
        sub->add_option("--alpha-interval", opt.interval, "isolating interval lo,hi");
        sub->add_option("--sigma", opt.sigma, "real part of s");
        sub->add_option("--N", opt.N, "derivative order / target degree");
        sub->add_option("--epsilon", opt.epsilon, "accuracy demand");
        sub->add_option("--targets", opt.targets, "semicolon-separated re,im targets");
        sub->add_option("--T", opt.T, "height / window start");
        sub->add_option("--grid", opt.grid, "grid point count");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--precision-digits", opt.precision_digits,
                        "working precision in digits (0 = default tier)");
        sub->add_option("--out", opt.out, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--registry", opt.registry, "constants registry JSON file");
        return sub;
    };

    auto* c_eval = add_common(app.add_subcommand("eval", "evaluate zeta(s; alpha)"));
    auto* c_afe = add_common(app.add_subcommand("afe-check", "truncation decay check"));
    auto* c_fit = add_common(app.add_subcommand("fit", "phase fit against targets"));
    auto* c_search = add_common(app.add_subcommand("search", "shift search on [T, 2T]"));
    auto* c_approx = add_common(app.add_subcommand("approx-fn", "disk approximation"));
    auto* c_const = add_common(app.add_subcommand("constants", "registry and budget"));
    auto* c_alg = add_common(app.add_subcommand("algebraic", "parameter report"));
    auto* c_kernel = add_common(app.add_subcommand("kernel-mass", "kernel mass estimate"));
    auto* c_verify = add_common(app.add_subcommand("verify-all", "fast invariant sweep"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_eval->parsed()) return cmd_eval(opt);
        if (c_afe->parsed()) return cmd_afe_check(opt, c_afe->count("--T") > 0);
        if (c_fit->parsed()) return cmd_fit(opt);
        if (c_search->parsed()) return cmd_search(opt);
        if (c_approx->parsed()) return cmd_approx_fn(opt);
        if (c_const->parsed()) return cmd_constants(opt);
        if (c_alg->parsed()) return cmd_algebraic(opt);
        if (c_kernel->parsed()) return cmd_kernel_mass(opt);
        if (c_verify->parsed()) return cmd_verify_all(opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "{\"error\": \"%s\"}\n", e.what());
        return 1;
    }
    return 1;
}
