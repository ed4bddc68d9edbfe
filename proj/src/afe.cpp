#include "hz/afe.hpp"

#include <algorithm>
#include <cmath>

#include "hz/errors.hpp"
#include "hz/scan.hpp"
#include "hz/zeta_core.hpp"

namespace hz::afe {

namespace {

// Shared truncation report so the k = 0 derivative path is bit-for-bit the
// plain path: same cutoff arithmetic, same summation order, same reference.
TruncationReport trunc_report(const ComplexPoint& s, const Alpha& alpha, int k, double mu,
                              const Precision& ref_prec) {
    TruncationReport rep;
    rep.cutoff = static_cast<long>(std::floor(std::pow(s.t, mu)));
    rep.truncated_value = scan::truncated_point(s.sigma, s.t, alpha, k, mu);
    rep.reference_value = zeta::hurwitz_zeta(s, alpha, k, ref_prec).value;
    rep.abs_error = std::abs(rep.truncated_value - rep.reference_value);
    return rep;
}

}  // namespace

double strip_lower_edge(double mu, const StripConstants& sc) {
    if (!(mu > 0.0) || mu > 1.0) throw DomainError("strip_lower_edge: mu must lie in (0, 1]");
    return 1.0 - sc.theta() * mu * mu;
}

bool degree_admissible(int d, double sigma, const StripConstants& sc) {
    (void)sc;
    if (d < 3) throw DomainError("degree_admissible: d must be >= 3");
    if (!(sigma > 0.5) || sigma > 1.0) throw DomainError("degree_admissible: sigma in (1/2, 1]");
    if (sigma == 1.0) return true;
    const double lhs = d + 1.0 / (2.0 * d);
    const double rhs = (40.0 / 267.0) * std::sqrt(1.0 / (3.0 * (1.0 - sigma)));
    // boundary equality (d = 3 at sigma = 1 - xi) must pass despite rounding
    return lhs <= rhs * (1.0 + 1e-12) + 1e-12;
}

TruncationReport truncated_zeta(const ComplexPoint& s, const Alpha& alpha, double mu,
                                const Precision& ref_prec) {
    if (!(mu > 0.0) || mu > 1.0) throw DomainError("truncated_zeta: mu must lie in (0, 1]");
    if (!(s.t >= 2.0)) throw DomainError("truncated_zeta: t must be >= 2");
    const double edge = strip_lower_edge(mu);
    if (!(s.sigma > edge) || s.sigma > 2.0)
        throw StripError("truncated_zeta: sigma outside (A(mu), 2]");
    return trunc_report(s, alpha, 0, mu, ref_prec);
}

TruncationReport truncated_zeta_deriv(const ComplexPoint& s, const Alpha& alpha, int d, int k,
                                      const Precision& ref_prec) {
    if (d < 3) throw DomainError("truncated_zeta_deriv: d must be >= 3");
    if (k < 0 || k > 10) throw DomainError("truncated_zeta_deriv: k must lie in [0, 10]");
    if (!(s.t >= 2.0)) throw DomainError("truncated_zeta_deriv: t must be >= 2");
    const double mu_d = 1.0 / (d + 1.0 / (2.0 * d));
    const double edge = strip_lower_edge(mu_d);
    if (s.sigma < edge || s.sigma > 1.0)
        throw StripError("truncated_zeta_deriv: sigma outside [A(1/(d+1/2d)), 1]");
    return trunc_report(s, alpha, k, 1.0 / d, ref_prec);
}

GrowthCheck growth_bound_check(double sigma, double t, const Alpha& alpha, double calibC,
                               const StripConstants& sc) {
    if (!(t >= 3.0)) throw DomainError("growth_bound_check: t must be >= 3");
    if (!(sigma >= 0.5) || sigma > 1.0) throw DomainError("growth_bound_check: sigma in [0.5, 1]");
    if (!(calibC > 0.0)) throw DomainError("growth_bound_check: calibC must be positive");

    // native-double path: |zeta_1| needs ~1e-11, far below the shape scale
    const double al = alpha.approx();
    const std::complex<double> z1 =
        scan::em_point(sigma, t, alpha, 0) -
        std::pow(al, -sigma) *
            std::complex<double>(std::cos(t * std::log(al)), -std::sin(t * std::log(al)));

    GrowthCheck g;
    g.observed = std::abs(z1);
    g.bound = calibC * std::pow(t, sc.eta * std::pow(1.0 - sigma, 1.5)) *
              std::pow(std::log(t), 2.0 / 3.0);
    g.holds = g.observed <= g.bound;
    return g;
}

double calibrate_growth_constant(const Alpha& alpha, const StripConstants& sc) {
    double worst = 0;
    for (int si = 0; si <= 5; ++si) {
        const double sigma = 0.5 + 0.1 * si;
        for (int ti = 0; ti <= 8; ++ti) {
            const double t = std::pow(10.0, 1.0 + 0.25 * ti);  // 10 .. 10^3
            GrowthCheck g = growth_bound_check(sigma, t, alpha, 1.0, sc);
            worst = std::max(worst, g.observed / g.bound);
        }
    }
    return worst;
}

DecayFit fit_decay_exponent(double sigma, const Alpha& alpha, double mu,
                            std::span<const double> t_centers, int points_per_center,
                            const Precision& ref_prec) {
    if (t_centers.size() < 2) throw DomainError("fit_decay_exponent: need >= 2 decade centers");
    if (points_per_center < 1) throw DomainError("fit_decay_exponent: points_per_center >= 1");

    DecayFit fit;
    for (double tc : t_centers) {
        std::vector<double> errs;
        errs.reserve(static_cast<std::size_t>(points_per_center));
        for (int i = 0; i < points_per_center; ++i) {
            const double t = tc * (1.0 + 0.02 * i);
            errs.push_back(truncated_zeta({sigma, t}, alpha, mu, ref_prec).abs_error);
        }
        std::sort(errs.begin(), errs.end());
        const std::size_t mid = errs.size() / 2;
        const double med = errs.size() % 2 == 1 ? errs[mid] : 0.5 * (errs[mid - 1] + errs[mid]);
        fit.t_centers.push_back(tc);
        fit.medians.push_back(med);
    }

    // least squares on (log t, log median); nu_hat = -slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit.t_centers.size());
    for (std::size_t i = 0; i < fit.t_centers.size(); ++i) {
        const double x = std::log(fit.t_centers[i]);
        const double y = std::log(std::max(fit.medians[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.nu_hat = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    return fit;
}

}  // namespace hz::afe
