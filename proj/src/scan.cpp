#include "hz/scan.hpp"

#include <algorithm>
#include <cmath>

#include "em_common.hpp"
#include "hz/errors.hpp"

namespace hz::scan {

namespace {

using cd = std::complex<double>;

constexpr double TWO_PI = 6.283185307179586476925286766559;
constexpr double DOUBLE_PATH_TARGET = 1e-9;
constexpr long DOUBLE_PATH_CAP = 1L << 22;

double tail_bound_d(double sigma, double t, double alpha, long m) {
    const int J2 = 2 * em::BERN_PAIRS + 1;
    double prod = 1;
    for (int r = 0; r < J2; ++r) prod *= std::hypot(sigma + r, t);
    const double denom_exp = sigma + (J2 - 1);
    return 4.0 * prod / std::pow(TWO_PI, J2) * std::pow(m + alpha, -denom_exp) / denom_exp;
}

cd poly_deriv_eval_d(const std::vector<long long>& c, int i, cd s) {
    cd acc = 0;
    for (int q = static_cast<int>(c.size()) - 1; q >= i; --q) {
        long long f = c[q];
        for (int r = 0; r < i; ++r) f *= (q - r);
        acc = acc * s + static_cast<double>(f);
    }
    return acc;
}

void validate_common(double sigma, const Alpha& alpha, int kmax) {
    if (sigma < -5.0 || sigma > 5.0) throw DomainError("scan: sigma outside [-5, 5]");
    if (kmax < 0 || kmax > 10) throw DomainError("scan: kmax must lie in [0, 10]");
    (void)alpha;
}

void validate_grid(const GridSpec& grid) {
    if (grid.count == 0) throw DomainError("scan: empty grid");
    if (grid.count > 1 && !(grid.h > 0)) throw DomainError("scan: grid step must be positive");
}

// Fill amp rows amp[k][i] = (-log(i+alpha))^k (i+alpha)^{-sigma} for
// i in [n_lo, n_hi).
void fill_amp(double sigma, double al, int kmax, long n_lo, long n_hi, std::vector<double>& w,
              std::vector<double>& amp) {
    const std::size_t n = static_cast<std::size_t>(n_hi - n_lo);
    w.resize(n);
    amp.resize(static_cast<std::size_t>(kmax + 1) * n);
    for (long i = n_lo; i < n_hi; ++i) {
        const double base = static_cast<double>(i) + al;
        const double lg = std::log(base);
        const std::size_t idx = static_cast<std::size_t>(i - n_lo);
        w[idx] = lg;
        double a = std::pow(base, -sigma);
        for (int k = 0; k <= kmax; ++k) {
            amp[static_cast<std::size_t>(k) * n + idx] = a;
            a *= -lg;
        }
    }
}

void run_kernel(const std::vector<double>& w, const std::vector<double>& amp, int kmax,
                const GridSpec& grid, std::size_t j_off, std::size_t j_cnt, simd::Kind kind,
                std::vector<std::vector<cd>>& values) {
    if (j_cnt == 0) return;
    const std::size_t n = w.size();
    std::vector<double> out_re(static_cast<std::size_t>(kmax + 1) * j_cnt);
    std::vector<double> out_im(out_re.size());
    simd::PhaseSumArgs args;
    args.w = w.data();
    args.amp = amp.data();
    args.n = n;
    args.kmax = kmax;
    args.tau0 = grid.tau(j_off);
    args.h = grid.h;
    args.J = j_cnt;
    args.out_re = out_re.data();
    args.out_im = out_im.data();
    simd::select_phase(kind)(args);
    for (int k = 0; k <= kmax; ++k) {
        for (std::size_t j = 0; j < j_cnt; ++j) {
            values[static_cast<std::size_t>(k)][j_off + j] =
                cd(out_re[static_cast<std::size_t>(k) * j_cnt + j],
                   out_im[static_cast<std::size_t>(k) * j_cnt + j]);
        }
    }
}

}  // namespace

long em_cutoff(double sigma, double tmax, double alpha_val) {
    long m = std::max<long>(2 * static_cast<long>(std::ceil(std::fabs(tmax))), 50);
    while (tail_bound_d(sigma, tmax, alpha_val, m) > DOUBLE_PATH_TARGET) {
        if (m >= DOUBLE_PATH_CAP)
            throw PrecisionError("scan: EM cutoff cap reached before the double-path target");
        m *= 2;
    }
    return m;
}

std::complex<double> em_corrections(double sigma, double tau, double alpha_val, long m, int k) {
    const double w = static_cast<double>(m) + alpha_val;
    const double L = std::log(w);
    const cd s(sigma, tau);
    const cd w_ms = std::pow(w, -sigma) * cd(std::cos(tau * L), -std::sin(tau * L));

    cd acc = 0;

    // pole piece w^{1-s}/(s-1): iterate i = k down to 0 so the power of
    // (s-1)^{-1} grows by one per step
    {
        const cd w_1ms = w * w_ms;
        const cd inv = 1.0 / (s - 1.0);
        std::vector<double> mli(static_cast<std::size_t>(k) + 1);
        double mlk = 1;
        for (int i = 0; i <= k; ++i) {
            mli[static_cast<std::size_t>(i)] = mlk;
            mlk *= -L;
        }
        cd p = inv;
        for (int i = k; i >= 0; --i) {
            double fct = 1;
            for (int r = 1; r <= k - i; ++r) fct *= r;
            const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
            acc += em::binom(k, i) * sign * fct * mli[static_cast<std::size_t>(i)] * w_1ms * p;
            p *= inv;
        }
    }

    // half term
    {
        double mlk = 1;
        for (int r = 0; r < k; ++r) mlk *= -L;
        acc += 0.5 * mlk * w_ms;
    }

    // Bernoulli corrections
    {
        const auto& pt = em::poch_table();
        for (int j = 1; j <= em::BERN_PAIRS; ++j) {
            const double wpow = std::pow(w, 1.0 - 2.0 * j);
            const cd scale = em::BERN_OVER_FACT[static_cast<std::size_t>(j)] * wpow * w_ms;
            for (int i = 0; i <= k; ++i) {
                double mlki = 1;
                for (int r = 0; r < k - i; ++r) mlki *= -L;
                acc += em::binom(k, i) * poly_deriv_eval_d(pt[static_cast<std::size_t>(j)], i, s) *
                       mlki * scale;
            }
        }
    }

    return acc;
}

DerivGrid em_grid(double sigma, const Alpha& alpha, int kmax, const GridSpec& grid,
                  simd::Kind kind) {
    validate_common(sigma, alpha, kmax);
    validate_grid(grid);
    const double al = alpha.approx();
    const double tmax = std::max(std::fabs(grid.tau0), std::fabs(grid.tau_max()));
    if (std::fabs(sigma - 1.0) < 1e-12 && grid.tau0 <= 0.0 && grid.tau_max() >= 0.0)
        throw PoleError("scan: grid crosses the pole at s = 1");
    const long m = em_cutoff(sigma, tmax, al);

    DerivGrid out;
    out.kmax = kmax;
    out.grid = grid;
    out.cutoff_min = out.cutoff_max = m;
    out.values.assign(static_cast<std::size_t>(kmax) + 1,
                      std::vector<cd>(grid.count));

    std::vector<double> w, amp;
    fill_amp(sigma, al, kmax, 0, m, w, amp);
    run_kernel(w, amp, kmax, grid, 0, grid.count, kind, out.values);

    for (std::size_t j = 0; j < grid.count; ++j) {
        const double tau = grid.tau(j);
        for (int k = 0; k <= kmax; ++k) {
            out.values[static_cast<std::size_t>(k)][j] += em_corrections(sigma, tau, al, m, k);
        }
    }
    return out;
}

DerivGrid truncated_grid(double sigma, const Alpha& alpha, int kmax, double mu,
                         const GridSpec& grid, simd::Kind kind) {
    validate_common(sigma, alpha, kmax);
    validate_grid(grid);
    if (!(mu > 0.0) || mu > 1.0) throw DomainError("scan: mu must lie in (0, 1]");
    if (!(grid.tau0 >= 2.0)) throw DomainError("scan: truncated grids need t >= 2");
    const double al = alpha.approx();

    DerivGrid out;
    out.kmax = kmax;
    out.grid = grid;
    out.values.assign(static_cast<std::size_t>(kmax) + 1,
                      std::vector<cd>(grid.count));
    out.cutoff_min = static_cast<long>(std::floor(std::pow(grid.tau0, mu)));
    out.cutoff_max = static_cast<long>(std::floor(std::pow(grid.tau_max(), mu)));

    std::vector<double> w, amp;
    std::size_t j = 0;
    while (j < grid.count) {
        const long cut = static_cast<long>(std::floor(std::pow(grid.tau(j), mu)));
        // last grid index with the same cutoff: first t with floor(t^mu) > cut
        // is t_next = (cut+1)^{1/mu}
        const double t_next = std::pow(static_cast<double>(cut) + 1.0, 1.0 / mu);
        std::size_t j_end = grid.count;
        if (t_next <= grid.tau_max()) {
            j_end = std::min(
                grid.count,
                static_cast<std::size_t>(std::max(0.0, std::ceil((t_next - grid.tau0) / grid.h))));
            while (j_end < grid.count &&
                   static_cast<long>(std::floor(std::pow(grid.tau(j_end), mu))) == cut)
                ++j_end;
            while (j_end > j + 1 &&
                   static_cast<long>(std::floor(std::pow(grid.tau(j_end - 1), mu))) != cut)
                --j_end;
        }
        if (j_end <= j) j_end = j + 1;
        fill_amp(sigma, al, kmax, 0, cut + 1, w, amp);
        run_kernel(w, amp, kmax, grid, j, j_end - j, kind, out.values);
        j = j_end;
    }
    return out;
}

std::complex<double> em_point(double sigma, double tau, const Alpha& alpha, int k) {
    validate_common(sigma, alpha, k);
    if (std::hypot(sigma - 1.0, tau) < 1e-12) throw PoleError("scan: s inside pole guard");
    const double al = alpha.approx();
    const long m = em_cutoff(sigma, std::fabs(tau), al);
    cd acc = 0;
    for (long n = 0; n < m; ++n) {
        const double base = static_cast<double>(n) + al;
        const double lg = std::log(base);
        double a = std::pow(base, -sigma);
        for (int r = 0; r < k; ++r) a *= -lg;
        acc += a * cd(std::cos(tau * lg), -std::sin(tau * lg));
    }
    return acc + em_corrections(sigma, tau, al, m, k);
}

std::complex<double> truncated_point(double sigma, double tau, const Alpha& alpha, int k,
                                     double mu) {
    validate_common(sigma, alpha, k);
    if (!(mu > 0.0) || mu > 1.0) throw DomainError("scan: mu must lie in (0, 1]");
    if (!(tau >= 2.0)) throw DomainError("scan: truncated sums need t >= 2");
    const double al = alpha.approx();
    const long cut = static_cast<long>(std::floor(std::pow(tau, mu)));
    cd acc = 0;
    for (long n = 0; n <= cut; ++n) {
        const double base = static_cast<double>(n) + al;
        const double lg = std::log(base);
        double a = std::pow(base, -sigma);
        for (int r = 0; r < k; ++r) a *= -lg;
        acc += a * cd(std::cos(tau * lg), -std::sin(tau * lg));
    }
    return acc;
}

}  // namespace hz::scan
