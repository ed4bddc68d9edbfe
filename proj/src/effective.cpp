#include "hz/effective.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hz/afe.hpp"
#include "hz/errors.hpp"

namespace hz::eff {

namespace {

void check_ERQ(long R, double sigma, int N) {
    if (R < 1) throw DomainError("capital_E: R must be >= 1");
    if (!(sigma > 0.5) || sigma > 1.0) throw DomainError("capital_E: sigma in (1/2, 1]");
    if (N < 1) throw DomainError("capital_E: N must be >= 1");
}

}  // namespace

double capital_E_log(long R, double logQ, double sigma, int N) {
    check_ERQ(R, sigma, N);
    const double logR1 = std::log(static_cast<double>(R) + 1.0);
    if (!(logQ > logR1)) throw DomainError("capital_E: Q must exceed R+1");
    const double n3 = static_cast<double>(N) * N * N;
    if (sigma == 1.0) return std::log((logQ - logR1) / (32.0 * n3));
    const double x = (1.0 - sigma) / (4.0 * n3) * (logQ - logR1);
    const double bracket_log = x > 500.0 ? x : std::log(std::expm1(x));
    return (1.0 - sigma) * std::log(static_cast<double>(R)) - (3.0 + sigma) * std::log(2.0) -
           std::log(1.0 - sigma) + bracket_log;
}

double capital_E(long R, long Q, double sigma, int N) {
    check_ERQ(R, sigma, N);
    if (Q <= R + 1) throw DomainError("capital_E: Q must exceed R+1");
    return std::exp(capital_E_log(R, std::log(static_cast<double>(Q)), sigma, N));
}

BigRat density_lower_bound_exact(long Q) {
    if (Q < 2) throw DomainError("density_lower_bound: Q must be >= 2");
    BigInt den = 2;
    for (long i = 0; i < 2 * Q + 2; ++i) den *= Q;
    return BigRat(BigInt(Q) * Q - 1, den);
}

double density_lower_bound(long Q) {
    return density_lower_bound_exact(Q).convert_to<double>();
}

// ── constants registry ───────────────────────────────────────────────────

void ConstantsRegistry::validate() const {
    for (double v : {c0, c1, c2, c3, c4, c5, C0, C1, C2, C3, C4, C5})
        if (!(v > 0)) throw DomainError("ConstantsRegistry: constants must be positive");
    if (!(nu > 0)) throw DomainError("ConstantsRegistry: nu must be positive");
    if (!(h_alpha >= 1)) throw DomainError("ConstantsRegistry: h_alpha must be >= 1");
    if (!(log_q0_cap > 0)) throw DomainError("ConstantsRegistry: log_q0_cap must be positive");
}

std::string ConstantsRegistry::to_json() const {
    nlohmann::json j;
    j["c0"] = c0; j["c1"] = c1; j["c2"] = c2; j["c3"] = c3; j["c4"] = c4; j["c5"] = c5;
    j["C0"] = C0; j["C1"] = C1; j["C2"] = C2; j["C3"] = C3; j["C4"] = C4; j["C5"] = C5;
    j["nu"] = nu;
    j["h_alpha"] = h_alpha;
    j["log_q0_cap"] = log_q0_cap;
    const afe::StripConstants sc;
    j["eta"] = sc.eta;
    j["theta"] = sc.theta();
    j["xi"] = afe::StripConstants::xi();
    return j.dump(2);
}

ConstantsRegistry ConstantsRegistry::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("registry: invalid JSON: ") + e.what());
    }
    ConstantsRegistry reg;
    const afe::StripConstants sc;
    for (auto& [key, val] : j.items()) {
        if (key == "c0") reg.c0 = val.get<double>();
        else if (key == "c1") reg.c1 = val.get<double>();
        else if (key == "c2") reg.c2 = val.get<double>();
        else if (key == "c3") reg.c3 = val.get<double>();
        else if (key == "c4") reg.c4 = val.get<double>();
        else if (key == "c5") reg.c5 = val.get<double>();
        else if (key == "C0") reg.C0 = val.get<double>();
        else if (key == "C1") reg.C1 = val.get<double>();
        else if (key == "C2") reg.C2 = val.get<double>();
        else if (key == "C3") reg.C3 = val.get<double>();
        else if (key == "C4") reg.C4 = val.get<double>();
        else if (key == "C5") reg.C5 = val.get<double>();
        else if (key == "nu") reg.nu = val.get<double>();
        else if (key == "h_alpha") reg.h_alpha = val.get<double>();
        else if (key == "log_q0_cap") reg.log_q0_cap = val.get<double>();
        else if (key == "eta") {
            if (std::abs(val.get<double>() - sc.eta) > 1e-12)
                throw DomainError("registry: eta is fixed and cannot be overridden");
        } else if (key == "theta") {
            if (std::abs(val.get<double>() - sc.theta()) > 1e-12)
                throw DomainError("registry: theta is fixed and cannot be overridden");
        } else if (key == "xi") {
            if (std::abs(val.get<double>() - afe::StripConstants::xi()) > 1e-12)
                throw DomainError("registry: xi is fixed and cannot be overridden");
        } else if (key == "comment") {
            // free-form
        } else {
            throw DomainError("registry: unknown key '" + key + "'");
        }
    }
    reg.validate();
    return reg;
}

ConstantsRegistry ConstantsRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("registry: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

// ── budget planner ───────────────────────────────────────────────────────

namespace {

// log of the systine right-hand side at Q0 = exp(logQ0) for index k.
double systine_rhs_log(long R, double logQ0, double sigma, int N, int k) {
    const double g = (logQ0 - std::log(static_cast<double>(R) + 1.0)) / (2.0 * N * logQ0);
    return capital_E_log(R, logQ0, sigma, N) + N * std::log(g) + std::lgamma(k + 1.0) +
           std::lgamma(N - k + 1.0) + k * std::log(logQ0);
}

bool systine_ok(long R, double logQ0, double sigma, int N,
                const std::vector<std::complex<double>>& targets, double A_floor,
                const ConstantsRegistry& reg) {
    for (int k = 0; k <= N; ++k) {
        const double lhs =
            std::log(reg.c2 * (std::abs(targets[static_cast<std::size_t>(k)]) +
                               1.0 / std::sqrt(A_floor)));
        if (!(lhs <= systine_rhs_log(R, logQ0, sigma, N, k))) return false;
    }
    return true;
}

LogMag ceil_if_plain(const LogMag& x) {
    const double p = x.plain();
    if (std::isfinite(p) && p < 9e15) return LogMag::from_plain(std::ceil(p - 1e-9));
    return x;
}

// K(Q,M,alpha) bound in log-space for worst-case degree d_alpha and height
// h_alpha, with log H(Q,M) <= MQ log(2Q).
LogMag kappa_log_mag(const LogMag& Q, const LogMag& M, int d_alpha, double h_alpha) {
    const LogMag MQ = M * Q;
    const LogMag logH = MQ * Q.scale(2.0).ln();
    const LogMag term1 = (logH + (MQ + LogMag::from_plain(2)).ln()).scale(d_alpha - 1.0);
    const double unit = std::log(h_alpha) + 0.5 * std::log(d_alpha + 1.0);
    const LogMag term2 = (MQ + LogMag::from_plain(1)).scale(unit);
    return term1 + term2;
}

}  // namespace

EffectiveBudget plan_budget(double sigma, int N, double A_floor, double epsilon,
                            const std::vector<std::complex<double>>& targets, int d,
                            const ConstantsRegistry& reg) {
    reg.validate();
    if (!(sigma > 0.51) || sigma > 1.0)
        throw DomainError("plan_budget: sigma must lie in (0.51, 1]");
    if (N < 1) throw DomainError("plan_budget: N must be >= 1");
    if (!(epsilon > 0)) throw DomainError("plan_budget: epsilon must be positive");
    if (!(A_floor > 0) || A_floor > 1) throw DomainError("plan_budget: A_floor in (0,1]");
    if (targets.size() != static_cast<std::size_t>(N) + 1)
        throw DomainError("plan_budget: need exactly N+1 targets");
    if (d < 3 || !afe::degree_admissible(d, sigma))
        throw DomainError("plan_budget: degree d inadmissible at this sigma");

    EffectiveBudget b;
    b.sigma = sigma;
    b.N = N;
    b.A_floor = A_floor;
    b.epsilon = epsilon;
    b.d = d;
    b.d_alpha = d - 1;
    b.targets = targets;

    const double r_real = reg.c0 * std::pow(epsilon, 4.0 / (1.0 - 2.0 * sigma));
    const double r_floor = std::exp(static_cast<double>(N) / sigma) + 1.0;
    const double r_need = std::max({r_real, r_floor, 2.0});
    if (r_need > 9e15) throw CapError("plan_budget: R exceeds the integer range");
    b.R = static_cast<long>(std::ceil(r_need - 1e-9));

    // Q0: smallest magnitude >= c1 R passing the systine system; the RHS is
    // increasing in Q0, so bisect in log space.
    double lo = std::log(std::max(reg.c1 * b.R, static_cast<double>(b.R) + 2.0)) + 1e-12;
    if (!systine_ok(b.R, lo, sigma, N, targets, A_floor, reg)) {
        double hi = reg.log_q0_cap;
        if (!systine_ok(b.R, hi, sigma, N, targets, A_floor, reg))
            throw CapError("plan_budget: Q0 search exceeded log_q0_cap");
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (systine_ok(b.R, mid, sigma, N, targets, A_floor, reg))
                hi = mid;
            else
                lo = mid;
        }
        lo = hi;
    }
    if (std::exp(lo) < 9e15) {
        long q0 = static_cast<long>(std::ceil(std::exp(lo) - 1e-9));
        q0 = std::max(q0, static_cast<long>(std::ceil(reg.c1 * b.R - 1e-9)));
        q0 = std::max(q0, b.R + 2);
        while (!systine_ok(b.R, std::log(static_cast<double>(q0)), sigma, N, targets, A_floor,
                           reg))
            ++q0;
        b.Q0 = LogMag::from_plain(static_cast<double>(q0));
    } else {
        b.Q0 = LogMag::from_ln(lo);
    }
    b.E_log = capital_E_log(b.R, b.Q0.ln_plain(), sigma, N);
    b.E_value = std::exp(b.E_log);

    b.Q = ceil_if_plain((b.Q0 + LogMag::from_plain(std::pow(epsilon, -8.0))).scale(reg.c3));
    b.M = ceil_if_plain(b.Q.pow_(2.0).scale(2.0).exp_().scale(reg.c4));
    b.K = kappa_log_mag(b.Q, b.M, b.d_alpha, reg.h_alpha).exp_();

    const double bbb_exp = 4.0 * d / (4.0 * (d - b.d_alpha) - 3.0);
    const LogMag inner =
        b.K.ln() + (b.M + LogMag::from_plain(2)) * b.Q.pow_(2.0).exp_();
    LogMag t_req = inner.scale(bbb_exp).exp_();
    const LogMag eps_branch = LogMag::from_plain(std::pow(epsilon, -2.0 * reg.nu));
    if (eps_branch > t_req) t_req = eps_branch;
    b.T = t_req.scale(reg.c5);
    return b;
}

AuditReport audit_budget(const EffectiveBudget& b, const ConstantsRegistry& reg) {
    AuditReport rep;
    auto push = [&rep](const std::string& name, bool holds, const std::string& detail) {
        rep.checks.push_back({name, holds, detail});
    };
    std::ostringstream os;
    os.precision(10);

    const double r_req = reg.c0 * std::pow(b.epsilon, 4.0 / (1.0 - 2.0 * b.sigma));
    os.str("");
    os << "R = " << b.R << " vs c0 eps^(4/(1-2s)) = " << r_req;
    push("R_lower_bound", static_cast<double>(b.R) >= r_req, os.str());

    const double logq0 = b.Q0.ln_plain();
    os.str("");
    os << "log Q0 = " << logq0 << " vs log(c1 R) = " << std::log(reg.c1 * b.R);
    push("Q0_vs_c1R", logq0 >= std::log(reg.c1 * b.R) - 1e-12, os.str());

    for (int k = 0; k <= b.N; ++k) {
        const double lhs = std::log(
            reg.c2 * (std::abs(b.targets[static_cast<std::size_t>(k)]) +
                      1.0 / std::sqrt(b.A_floor)));
        const double rhs = systine_rhs_log(b.R, logq0, b.sigma, b.N, k);
        os.str("");
        os << "log lhs = " << lhs << " vs log rhs = " << rhs;
        push("systine_k" + std::to_string(k), lhs <= rhs, os.str());
    }

    const LogMag q_req = (b.Q0 + LogMag::from_plain(std::pow(b.epsilon, -8.0))).scale(reg.c3);
    push("Q_vs_c3(Q0+eps^-8)", b.Q >= q_req,
         "log Q = " + std::to_string(b.Q.ln_plain()) +
             " vs log req = " + std::to_string(q_req.ln_plain()));

    const LogMag m_req = b.Q.pow_(2.0).scale(2.0).exp_().scale(reg.c4);
    push("M_vs_c4_exp2Q2", b.M >= m_req, logmag_json(b.M) + " vs " + logmag_json(m_req));

    const double bbb_exp = 4.0 * b.d / (4.0 * (b.d - b.d_alpha) - 3.0);
    const LogMag k_mag = kappa_log_mag(b.Q, b.M, b.d_alpha, reg.h_alpha).exp_();
    const LogMag inner = k_mag.ln() + (b.M + LogMag::from_plain(2)) * b.Q.pow_(2.0).exp_();
    LogMag t_req = inner.scale(bbb_exp).exp_();
    const LogMag eps_branch = LogMag::from_plain(std::pow(b.epsilon, -2.0 * reg.nu));
    if (eps_branch > t_req) t_req = eps_branch;
    t_req = t_req.scale(reg.c5);
    push("T_vs_BBB", b.T >= t_req, logmag_json(b.T) + " vs " + logmag_json(t_req));

    rep.all_hold = true;
    for (const AuditCheck& c : rep.checks) rep.all_hold = rep.all_hold && c.holds;
    return rep;
}

std::string logmag_json(const LogMag& x) {
    nlohmann::json j;
    switch (x.level()) {
        case 0:
            j["scale"] = "value";
            j["value"] = x.raw();
            break;
        case 1:
            j["scale"] = "ln";
            j["log"] = x.raw();
            break;
        case 2:
            j["scale"] = "ln-ln";
            j["loglog"] = x.raw();
            break;
        default:
            j["scale"] = "ln^" + std::to_string(x.level());
            j["iterated_log"] = x.raw();
            break;
    }
    return j.dump();
}

std::string EffectiveBudget::to_json() const {
    nlohmann::json j;
    j["sigma"] = sigma;
    j["N"] = N;
    j["A_floor"] = A_floor;
    j["epsilon"] = epsilon;
    j["d"] = d;
    j["d_alpha"] = d_alpha;
    nlohmann::json tj = nlohmann::json::array();
    for (const auto& a : targets) tj.push_back({a.real(), a.imag()});
    j["targets"] = tj;
    j["R"] = R;
    j["Q0"] = nlohmann::json::parse(logmag_json(Q0));
    j["Q"] = nlohmann::json::parse(logmag_json(Q));
    j["M"] = nlohmann::json::parse(logmag_json(M));
    j["T"] = nlohmann::json::parse(logmag_json(T));
    j["K"] = nlohmann::json::parse(logmag_json(K));
    j["E_value"] = std::isfinite(E_value) ? nlohmann::json(E_value)
                                          : nlohmann::json::parse(logmag_json(
                                                LogMag::from_ln(E_log)));
    j["E_log"] = E_log;
    return j.dump(2);
}

}  // namespace hz::eff
