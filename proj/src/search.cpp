#include "hz/search.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "hz/errors.hpp"
#include "hz/scan.hpp"

namespace hz::search {

namespace {

constexpr double kCrossoverTau = 1.0e4;  // EM path below, truncated path above
constexpr double kMuTruncated = 0.5;
constexpr int kContourNodes = 1 << 9;
constexpr std::size_t kScanChunk = 1 << 15;
constexpr double kInvGolden = 0.6180339887498949;

double factorial(int k) {
    double f = 1;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

std::complex<double> zeta_point(double sigma, double tau, const Alpha& alpha, int k) {
    if (tau <= kCrossoverTau) return scan::em_point(sigma, tau, alpha, k);
    return scan::truncated_point(sigma, tau, alpha, k, kMuTruncated);
}

// max_k |zeta^(k)(sigma + i tau) - a_k|, optionally keeping the per-k errors.
double target_error(const fit::TargetSpec& targets, const Alpha& alpha, double tau,
                    std::vector<double>* per_k) {
    double worst = 0;
    if (per_k) per_k->assign(targets.a.size(), 0.0);
    for (int k = 0; k < static_cast<int>(targets.a.size()); ++k) {
        const double err = std::abs(zeta_point(targets.sigma, tau, alpha, k) - targets.a[k]);
        if (per_k) (*per_k)[k] = err;
        worst = std::max(worst, err);
    }
    return worst;
}

}  // namespace

void SearchWindow::validate() const {
    if (!(T > 0) || !std::isfinite(T)) throw DomainError("search window requires T > 0");
    if (grid_points < 2) throw DomainError("search window requires at least 2 grid points");
    if (refine_iters < 0) throw DomainError("refine_iters must be non-negative");
}

void ApproxJob::validate() const {
    if (!f) throw DomainError("approximation job requires a target function");
    if (!(r > 0) || !std::isfinite(r)) throw DomainError("disk radius must be positive");
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
    if (!(delta0 > 0 && delta0 < 1)) throw DomainError("delta0 must lie in (0, 1)");
    if (s0.t != 0) throw DomainError("s0 must be real; fold any imaginary part into tau");
    if (N < 1 || N > 10) throw DomainError("Taylor degree cap must lie in [1, 10]");
}

SearchReport search_shift(const fit::TargetSpec& targets, const Alpha& alpha,
                          const SearchWindow& window) {
    targets.validate();
    window.validate();

    const long count = window.grid_points;
    const double h = window.T / static_cast<double>(count - 1);
    const int kmax = targets.N;

    SearchReport report;
    double best_grid_err = std::numeric_limits<double>::infinity();
    double best_grid_tau = window.T;

    long j0 = 0;
    while (j0 < count) {
        const std::size_t chunk =
            std::min<std::size_t>(kScanChunk, static_cast<std::size_t>(count - j0));
        scan::GridSpec spec{window.T + static_cast<double>(j0) * h, h, chunk};
        // Keep each chunk on a single evaluation path; split at the crossover.
        std::size_t take = chunk;
        const bool em_path = spec.tau0 <= kCrossoverTau;
        if (em_path && spec.tau_max() > kCrossoverTau) {
            take = static_cast<std::size_t>((kCrossoverTau - spec.tau0) / h) + 1;
            spec.count = take;
        }
        const scan::DerivGrid grid =
            em_path ? scan::em_grid(targets.sigma, alpha, kmax, spec)
                    : scan::truncated_grid(targets.sigma, alpha, kmax, kMuTruncated, spec);
        (em_path ? report.em_points : report.afe_points) += static_cast<long>(take);
        for (std::size_t j = 0; j < take; ++j) {
            double err = 0;
            for (int k = 0; k <= kmax; ++k)
                err = std::max(err, std::abs(grid.values[k][j] - targets.a[k]));
            if (err < best_grid_err) {
                best_grid_err = err;
                best_grid_tau = spec.tau(j);
            }
        }
        j0 += static_cast<long>(take);
    }

    // Golden-section refinement around the best grid point; every candidate
    // is compared through the pointwise path, so the result never worsens.
    double best_tau = best_grid_tau;
    double best_err = target_error(targets, alpha, best_tau, nullptr);
    auto consider = [&](double tau) {
        const double err = target_error(targets, alpha, tau, nullptr);
        if (err < best_err || (err == best_err && tau < best_tau)) {
            best_err = err;
            best_tau = tau;
        }
        return err;
    };
    double lo = std::max(window.T, best_grid_tau - h);
    double hi = std::min(2.0 * window.T, best_grid_tau + h);
    double x1 = hi - (hi - lo) * kInvGolden;
    double x2 = lo + (hi - lo) * kInvGolden;
    double f1 = consider(x1);
    double f2 = consider(x2);
    for (int it = 0; it < window.refine_iters; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * kInvGolden;
            f1 = consider(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * kInvGolden;
            f2 = consider(x2);
        }
    }

    report.tau_best = best_tau;
    report.max_error = target_error(targets, alpha, best_tau, &report.errors_per_k);
    report.satisfied = report.max_error < targets.epsilon;
    return report;
}

std::vector<std::complex<double>> taylor_coeffs(const ApproxJob& job, int N) {
    job.validate();
    if (N < 0) throw DomainError("Taylor degree must be non-negative");

    const std::complex<double> s0{job.s0.sigma, job.s0.t};
    auto quad = [&](int nodes) {
        std::vector<std::complex<double>> a(static_cast<std::size_t>(N) + 1);
        std::vector<std::complex<double>> samples(nodes);
        for (int j = 0; j < nodes; ++j) {
            const double phi = 2.0 * M_PI * j / nodes;
            samples[j] = job.f(s0 + job.r * std::polar(1.0, phi));
        }
        for (int k = 0; k <= N; ++k) {
            std::complex<double> acc = 0;
            for (int j = 0; j < nodes; ++j) {
                const double phi = 2.0 * M_PI * j / nodes;
                acc += samples[j] * std::polar(1.0, -k * phi);
            }
            a[k] = acc / (static_cast<double>(nodes) * std::pow(job.r, k));
        }
        return a;
    };

    const auto coarse = quad(kContourNodes);
    const auto fine = quad(2 * kContourNodes);
    for (int k = 0; k <= N; ++k) {
        if (std::abs(fine[k] - coarse[k]) > 1e-8)
            throw QuadratureError("contour quadrature inconsistent under node doubling");
    }
    return fine;
}

double choose_delta(double M_tau, int N, double r, double epsilon) {
    if (!(M_tau >= 0) || !std::isfinite(M_tau)) throw DomainError("M_tau must be finite");
    if (N < 0) throw DomainError("N must be non-negative");
    if (!(r > 0)) throw DomainError("r must be positive");
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");

    auto g = [&](double d) {
        return M_tau * std::pow(d, N) / (1.0 - d) - epsilon * (2.0 - std::exp(d * r));
    };
    double lo = 1e-12;
    double hi = std::min(1.0 - 1e-12, std::log(2.0) / r);
    if (!(g(lo) < 0.0) || !(g(hi) > 0.0))
        throw BracketError("delta equation does not bracket a root on (0, min(1, log2/r))");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    const double delta = 0.5 * (lo + hi);
    if (std::abs(g(delta)) >= 1e-10)
        throw ConvergenceError("delta bisection residual above 1e-10");
    return delta;
}

ApproxReport approx_function(const ApproxJob& job, const Alpha& alpha,
                             const SearchWindow& window) {
    job.validate();
    window.validate();
    if (!(window.T > job.r))
        throw DomainError("search window must start above the disk radius");

    const std::complex<double> s0{job.s0.sigma, 0.0};
    if (!(std::abs(job.f(s0)) > job.epsilon))
        throw DomainError("epsilon must be smaller than |f(s0)|");

    double m_f = 0;
    for (int j = 0; j < kContourNodes; ++j) {
        const double phi = 2.0 * M_PI * j / kContourNodes;
        m_f = std::max(m_f, std::abs(job.f(s0 + job.r * std::polar(1.0, phi))));
    }

    // Taylor tail on |s - s0| <= delta0 r from the computed coefficients,
    // completed beyond the cap by the Cauchy majorant |a_k| r^k <= M.
    const auto full = taylor_coeffs(job, job.N);
    auto tail_bound = [&](int n) {
        double tail = m_f * std::pow(job.delta0, job.N + 1) / (1.0 - job.delta0);
        for (int k = n + 1; k <= job.N; ++k)
            tail += std::abs(full[k]) * std::pow(job.delta0 * job.r, k);
        return tail;
    };
    // The delta equation needs N >= 1 to bracket, so degree 0 is never
    // selected even when the tail already vanishes there.
    int n_used = -1;
    for (int n = 1; n <= job.N; ++n) {
        if (tail_bound(n) < job.epsilon) {
            n_used = n;
            break;
        }
    }
    if (n_used < 0) throw CapError("Taylor degree cap too small for the requested epsilon");

    ApproxReport report;
    report.n_used = n_used;
    report.sigma1_bound = tail_bound(n_used);
    report.coeffs.assign(full.begin(), full.begin() + n_used + 1);

    fit::TargetSpec targets;
    targets.sigma = job.s0.sigma;
    targets.N = n_used;
    targets.epsilon = job.epsilon;
    targets.a.resize(static_cast<std::size_t>(n_used) + 1);
    for (int k = 0; k <= n_used; ++k) targets.a[k] = factorial(k) * report.coeffs[k];
    report.search = search_shift(targets, alpha, window);
    report.tau = report.search.tau_best;

    auto shifted_zeta = [&](std::complex<double> s, int k) {
        return zeta_point(s.real(), report.tau + s.imag(), alpha, k);
    };

    double m_tau = 0;
    for (int j = 0; j < kContourNodes; ++j) {
        const double phi = 2.0 * M_PI * j / kContourNodes;
        m_tau = std::max(m_tau, std::abs(shifted_zeta(s0 + job.r * std::polar(1.0, phi), 0)));
    }
    report.m_tau = m_tau;
    report.delta = choose_delta(m_tau, n_used, job.r, job.epsilon);
    report.sigma3_value =
        m_tau * std::pow(report.delta, n_used) / (1.0 - report.delta);

    const double rho_max = report.delta * job.r;
    report.sigma2_bound = job.epsilon * std::exp(rho_max);
    double sigma2 = 0;
    for (int k = 0; k <= n_used; ++k) {
        const double err = std::abs(shifted_zeta(s0, k) - targets.a[k]);
        sigma2 += err * std::pow(rho_max, k) / factorial(k);
    }
    report.sigma2_value = sigma2;

    // Sunflower sampling of the disk |s - s0| <= delta * r.
    const int samples = 1000;
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        const double rho = rho_max * std::sqrt((i + 0.5) / samples);
        const double phi = 2.0 * M_PI * kInvGolden * i;
        const std::complex<double> s = s0 + rho * std::polar(1.0, phi);
        worst = std::max(worst, std::abs(shifted_zeta(s, 0) - job.f(s)));
    }
    report.max_error_on_disk = worst;
    report.bound_3eps_ok = worst < 3.0 * job.epsilon;
    return report;
}

}  // namespace hz::search
