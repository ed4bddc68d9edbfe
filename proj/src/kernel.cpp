#include "hz/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hz/errors.hpp"
#include "hz/scan.hpp"

namespace hz::kern {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr long kFourierCap = 1000000;

double bump_raw(double x) {
    if (!(std::fabs(x) < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
}

// Doubling trapezoid; the bump's derivatives all vanish at the endpoints,
// so the rule converges superalgebraically.
template <typename F>
double trapezoid_refine(F&& f, double lo, double hi, double tol, int min_level = 4) {
    double prev = 0.5 * (hi - lo) * (f(lo) + f(hi));
    long n = 1;
    for (int level = 1; level <= 24; ++level) {
        const double h = (hi - lo) / (2.0 * n);
        double add = 0;
        for (long i = 0; i < n; ++i) add += f(lo + (2.0 * i + 1.0) * h);
        const double cur = 0.5 * prev + h * add;
        if (level >= min_level && std::fabs(cur - prev) <= tol * (1.0 + std::fabs(cur)))
            return cur;
        prev = cur;
        n *= 2;
    }
    throw QuadratureError("trapezoid_refine: no convergence at level 24");
}

double dist_to_integers(double x) {
    const double r = x - std::nearbyint(x);
    return std::fabs(r);
}

}  // namespace

double mollifier_normalization() {
    static const double value =
        trapezoid_refine([](double x) { return bump_raw(x); }, -1.0, 1.0, 1e-15);
    return value;
}

double mollifier_eval(double x) {
    return bump_raw(x) / mollifier_normalization();
}

KernelConfig KernelConfig::make(long Q) {
    if (Q < 2) throw DomainError("KernelConfig: Q must be >= 2");
    return {Q, 1.0 / (static_cast<double>(Q) * static_cast<double>(Q))};
}

void KernelConfig::validate() const {
    if (Q < 2) throw DomainError("KernelConfig: Q must be >= 2");
    if (delta != 1.0 / (static_cast<double>(Q) * static_cast<double>(Q)))
        throw DomainError("KernelConfig: delta must equal Q^-2");
}

std::complex<double> fourier_coeff(long n, const KernelConfig& cfg) {
    cfg.validate();
    if (std::labs(n) > kFourierCap) throw DomainError("fourier_coeff: |n| above cap");
    const double freq = kTwoPi * static_cast<double>(n) * cfg.delta;
    // enough starting resolution to see every oscillation of e(-n delta u)
    int min_level = 4;
    while ((1L << min_level) < static_cast<long>(8.0 * std::fabs(freq))) ++min_level;
    const double re = trapezoid_refine(
        [&](double u) { return mollifier_eval(u) * std::cos(freq * u); }, -1.0, 1.0, 1e-13,
        min_level);
    const double im = trapezoid_refine(
        [&](double u) { return mollifier_eval(u) * std::sin(-freq * u); }, -1.0, 1.0, 1e-13,
        min_level);
    return cfg.delta * std::complex<double>{re, im};
}

double big_lambda(const fit::PhaseVector& theta, const KernelConfig& cfg) {
    cfg.validate();
    if (static_cast<long>(theta.theta.size()) != cfg.Q)
        throw DomainError("big_lambda: theta length must equal Q");
    double prod = 1.0;
    for (double t : theta.theta) {
        prod *= mollifier_eval(dist_to_integers(t) / cfg.delta);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

fit::PhaseVector curve_gamma(double tau, const Alpha& alpha, long Q) {
    if (Q < 1) throw DomainError("curve_gamma: Q must be >= 1");
    if (!std::isfinite(tau)) throw DomainError("curve_gamma: tau must be finite");
    const double al = alpha.approx();
    fit::PhaseVector out;
    out.theta.resize(Q);
    for (long n = 0; n < Q; ++n)
        out.theta[n] = std::log(static_cast<double>(n) + al) / kTwoPi * tau;
    out.normalize();
    return out;
}

double kernel_mass(const KernelConfig& cfg, const Alpha& alpha, const fit::PhaseVector& theta1,
                   double T, double step, simd::Kind kind) {
    cfg.validate();
    if (!(T > 0)) throw DomainError("kernel_mass: T must be positive");
    if (static_cast<long>(theta1.theta.size()) != cfg.Q)
        throw DomainError("kernel_mass: theta1 length must equal Q");
    const double mandated = cfg.delta * kTwoPi / (10.0 * std::log(static_cast<double>(cfg.Q) + 1.0));
    if (step == 0.0) step = mandated;
    if (!(step > 0)) throw DomainError("kernel_mass: step must be positive");
    if (step > mandated * (1.0 + 1e-12))
        throw QuadratureError("kernel_mass: step too coarse to resolve the kernel");

    long intervals = static_cast<long>(std::ceil(T / step));
    if (intervals % 2 != 0) ++intervals;
    if (intervals > 200000000L) throw CapError("kernel_mass: quadrature grid too large");
    const double h = T / static_cast<double>(intervals);

    const double al = alpha.approx();
    std::vector<double> freq(cfg.Q), shift(cfg.Q);
    for (long n = 0; n < cfg.Q; ++n) {
        freq[n] = std::log(static_cast<double>(n) + al) / kTwoPi;
        shift[n] = -theta1.theta[n];
    }
    const double log_norm = -static_cast<double>(cfg.Q) * std::log(mollifier_normalization());
    const simd::BumpFn bump = simd::select_bump(kind);

    const long total = intervals + 1;
    const long chunk = 1L << 16;
    std::vector<double> vals(std::min(total, chunk));
    double sum = 0;
    for (long j0 = 0; j0 < total; j0 += chunk) {
        const long J = std::min(chunk, total - j0);
        simd::BumpScanArgs args;
        args.freq = freq.data();
        args.shift = shift.data();
        args.q = static_cast<std::size_t>(cfg.Q);
        args.inv_delta = 1.0 / cfg.delta;
        args.log_norm = log_norm;
        args.tau0 = T + static_cast<double>(j0) * h;
        args.h = h;
        args.J = static_cast<std::size_t>(J);
        args.out = vals.data();
        bump(args);
        for (long j = 0; j < J; ++j) {
            const long g = j0 + j;
            const double w = (g == 0 || g == intervals) ? 1.0 : (g % 2 == 1 ? 4.0 : 2.0);
            sum += w * vals[j];
        }
    }
    const double integral = sum * h / 3.0;
    return integral / (std::pow(cfg.delta, static_cast<double>(cfg.Q)) * T);
}

double empirical_density(const KernelConfig& cfg, const Alpha& alpha, double sigma,
                         const fit::TargetSpec& targets, double T, long grid) {
    cfg.validate();
    targets.validate();
    if (!(T > 0)) throw DomainError("empirical_density: T must be positive");
    if (grid < 1000) throw DomainError("empirical_density: grid must be >= 1000");
    const double q2 = static_cast<double>(cfg.Q) * static_cast<double>(cfg.Q);
    const double threshold = std::sqrt(2.0 * (q2 + 1.0) / (q2 - 1.0)) * targets.epsilon;

    scan::GridSpec spec{T, T / static_cast<double>(grid - 1), static_cast<std::size_t>(grid)};
    const scan::DerivGrid dg = scan::em_grid(sigma, alpha, targets.N, spec);
    long hits = 0;
    for (long j = 0; j < grid; ++j) {
        double worst = 0;
        for (int k = 0; k <= targets.N; ++k)
            worst = std::max(worst, std::abs(dg.values[k][j] - targets.a[k]));
        if (worst < threshold) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(grid);
}

}  // namespace hz::kern
