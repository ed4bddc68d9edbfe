#include "hz/zeta_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "hz/mp.hpp"

namespace hz::zeta {

using mp::Cx;

namespace {

constexpr int BERN_PAIRS = 5;  // corrections through B_10
constexpr long M_CAP = 1L << 26;

// B_{2j} / (2j)! for j = 1..5 as exact rationals of the tier.
template <class R>
std::array<R, BERN_PAIRS + 1> bern_over_fact() {
    std::array<R, BERN_PAIRS + 1> b{};
    b[1] = R(1) / R(12);
    b[2] = R(-1) / R(720);
    b[3] = R(1) / R(30240);
    b[4] = R(-1) / R(1209600);
    b[5] = R(1) / R(47900160);
    return b;
}

// Integer coefficients of the rising factorial (x)_{2j-1}, ascending.
std::vector<long long> pochhammer_coeffs(int len) {
    std::vector<long long> c{0, 1};  // x
    for (int r = 1; r < len; ++r) {
        // multiply by (x + r)
        std::vector<long long> nxt(c.size() + 1, 0);
        for (size_t q = 0; q < c.size(); ++q) {
            nxt[q] += c[q] * r;
            nxt[q + 1] += c[q];
        }
        c = std::move(nxt);
    }
    return c;
}

const std::array<std::vector<long long>, BERN_PAIRS + 1>& poch_table() {
    static const auto table = [] {
        std::array<std::vector<long long>, BERN_PAIRS + 1> t{};
        for (int j = 1; j <= BERN_PAIRS; ++j) t[j] = pochhammer_coeffs(2 * j - 1);
        return t;
    }();
    return table;
}

// i-th derivative of the coefficient polynomial at complex s.
template <class R>
Cx<R> poly_deriv_eval(const std::vector<long long>& c, int i, const Cx<R>& s) {
    Cx<R> acc{R(0), R(0)};
    for (int q = static_cast<int>(c.size()) - 1; q >= i; --q) {
        long long f = c[q];
        for (int r = 0; r < i; ++r) f *= (q - r);
        acc = acc * s + Cx<R>{R(f), R(0)};
    }
    return acc;
}

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Remainder bound after the B_10 correction with m initial terms.  rho = 0
// gives the direct bound; rho = 1/2 the Cauchy-disk majorant for
// derivatives (caller multiplies by k! 2^k).
template <class R>
R tail_bound(const R& sigma, const R& t, const R& alpha, long m, double rho) {
    using std::abs;
    using std::pow;
    using std::sqrt;
    const int J2 = 2 * BERN_PAIRS + 1;  // 11
    R prod(1);
    for (int r = 0; r < J2; ++r) {
        R re = sigma + r;
        prod *= sqrt(re * re + t * t) + R(rho);
    }
    R twopi = 2 * mp::const_pi<R>();
    R denom_exp = sigma - R(rho) + (J2 - 1);
    R w = R(m) + alpha;
    return 4 * prod / pow(twopi, J2) * pow(w, -denom_exp) / denom_exp;
}

template <class R>
struct EmOut {
    Cx<R> value;
    R err;
    long m = 0;
};

// Full Euler-Maclaurin evaluation of the k-th s-derivative; start_n = 1
// drops the n = 0 term (zeta_1).
template <class R>
EmOut<R> em_eval(const Cx<R>& s, const R& alpha, int k, const R& target, int start_n) {
    using std::abs;
    using std::log;
    using std::pow;

    const R sigma = s.re, t = s.im;
    const double rho = (k == 0) ? 0.0 : 0.5;
    double kfact2k = 1;
    for (int i = 1; i <= k; ++i) kfact2k *= 2.0 * i;

    long m = std::max<long>(2 * static_cast<long>(std::ceil(std::fabs(mp::to_double(t)))), 50);
    R tb;
    for (;;) {
        tb = R(kfact2k) * tail_bound<R>(sigma, t, alpha, m, rho);
        if (tb <= target / 2) break;
        if (m >= M_CAP)
            throw PrecisionError("hurwitz_zeta: tail bound did not reach target below the term cap");
        m *= 2;
    }

    Cx<R> acc{R(0), R(0)};
    R abssum(0);
    for (long n = start_n; n < m; ++n) {
        R base = R(n) + alpha;
        Cx<R> term = mp::rpow<R>(base, -s);
        if (k > 0) {
            R ml = -log(base), p(1);
            for (int i = 0; i < k; ++i) p *= ml;
            term = p * term;
        }
        acc += term;
        abssum += abs(term.re) + abs(term.im);
    }

    const R w = R(m) + alpha;
    const R L = log(w);
    const Cx<R> w_ms = mp::rpow<R>(w, -s);
    const Cx<R> sm1{sigma - R(1), t};

    // pole piece w^{1-s}/(s-1), differentiated by Leibniz
    {
        Cx<R> w_1ms = w * w_ms;
        Cx<R> inv = Cx<R>{R(1), R(0)} / sm1;
        // (s-1)^{-(k-i+1)} built by repeated multiplication
        std::vector<Cx<R>> invpow(k + 2);
        invpow[0] = Cx<R>{R(1), R(0)};
        for (int p = 1; p <= k + 1; ++p) invpow[p] = invpow[p - 1] * inv;
        for (int i = 0; i <= k; ++i) {
            double fct = 1;
            for (int r = 1; r <= k - i; ++r) fct *= r;
            double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
            R mli(1);
            for (int r = 0; r < i; ++r) mli *= -L;
            Cx<R> piece = R(binom(k, i) * sign * fct) * mli * w_1ms * invpow[k - i + 1];
            acc += piece;
            abssum += abs(piece.re) + abs(piece.im);
        }
    }

    // half term
    {
        R mlk(1);
        for (int r = 0; r < k; ++r) mlk *= -L;
        Cx<R> piece = (mlk / R(2)) * w_ms;
        acc += piece;
        abssum += abs(piece.re) + abs(piece.im);
    }

    // Bernoulli corrections
    {
        auto bf = bern_over_fact<R>();
        const auto& pt = poch_table();
        for (int j = 1; j <= BERN_PAIRS; ++j) {
            R wpow = pow(w, R(1 - 2 * j));  // w^{-(2j-1)}
            Cx<R> scale = bf[j] * wpow * w_ms;
            for (int i = 0; i <= k; ++i) {
                Cx<R> pd = poly_deriv_eval<R>(pt[j], i, s);
                R mlki(1);
                for (int r = 0; r < k - i; ++r) mlki *= -L;
                Cx<R> piece = R(binom(k, i)) * pd * mlki * scale;
                acc += piece;
                abssum += abs(piece.re) + abs(piece.im);
            }
        }
    }

    R rounding = mp::tier_eps<R>() * abssum * R(12 + std::log2(static_cast<double>(m)));
    EmOut<R> out;
    out.value = acc;
    out.err = tb + rounding;
    out.m = m;
    return out;
}

template <class R>
EvalResult run_tier(const ComplexPoint& s, const Alpha& alpha, int k, const Precision& prec,
                    int start_n) {
    R al = mp::alpha_as<R>(alpha);
    Cx<R> sc{R(s.sigma), R(s.t)};
    auto out = em_eval<R>(sc, al, k, R(prec.target_abs_error), start_n);
    EvalResult r;
    r.value = mp::to_cd(out.value);
    double conv = 4e-16 * (1.0 + std::abs(r.value));
    r.error_radius = mp::to_double(out.err) + conv;
    r.terms_used = out.m;
    if (r.error_radius > prec.target_abs_error * 1.01 + conv)
        throw PrecisionError("hurwitz_zeta: achieved error radius exceeds target at this tier");
    return r;
}

EvalResult dispatch(const ComplexPoint& s, const Alpha& alpha, int k, const Precision& prec,
                    int start_n) {
    prec.validate();
    if (!s.finite()) throw DomainError("hurwitz_zeta: non-finite s");
    if (s.sigma < -5.0 || s.sigma > 5.0) throw DomainError("hurwitz_zeta: sigma outside [-5, 5]");
    if (std::fabs(s.t) > 1e7) throw DomainError("hurwitz_zeta: |t| above 1e7 cap");
    if (k < 0 || k > 10) throw DomainError("hurwitz_zeta: k must lie in [0, 10]");
    if (std::hypot(s.sigma - 1.0, s.t) < POLE_GUARD) throw PoleError("hurwitz_zeta: s inside pole guard");

    if (prec.working_digits <= 16) return run_tier<double>(s, alpha, k, prec, start_n);
    if (prec.working_digits <= 50) return run_tier<mp::f50>(s, alpha, k, prec, start_n);
    return run_tier<mp::f100>(s, alpha, k, prec, start_n);
}

}  // namespace

EvalResult hurwitz_zeta(const ComplexPoint& s, const Alpha& alpha, int k, const Precision& prec) {
    return dispatch(s, alpha, k, prec, 0);
}

EvalResult zeta_one(const ComplexPoint& s, const Alpha& alpha, const Precision& prec) {
    return dispatch(s, alpha, 0, prec, 1);
}

EvalResult riemann_zeta(const ComplexPoint& s, const Precision& prec) {
    return hurwitz_zeta(s, Alpha(1.0), 0, prec);
}

PartialSumReport partial_sum_asymptotics(double T, double sigma) {
    if (!(T >= 2.0)) throw DomainError("partial_sum_asymptotics: T must be >= 2");
    if (T > 2e7) throw CapError("partial_sum_asymptotics: T above 2e7 cap");
    if (!(sigma > 0.0) || sigma > 2.0) throw DomainError("partial_sum_asymptotics: sigma in (0,2]");

    const long NT = static_cast<long>(std::floor(T));
    double sum = 0;
    for (long n = NT; n >= 1; --n) sum += std::pow(static_cast<double>(n), -sigma);

    PartialSumReport rep;
    rep.sum = sum;
    if (std::fabs(sigma - 1.0) < 1e-14) {
        rep.predicted = std::log(T) + std::numbers::egamma;
    } else {
        double zeta_sigma =
            riemann_zeta({sigma, 0.0}, Precision{30, 1e-13}).value.real();
        rep.predicted = std::pow(T, 1.0 - sigma) / (1.0 - sigma) + zeta_sigma;
    }
    rep.residual = rep.sum - rep.predicted;
    return rep;
}

PairSumReport pair_sum_bound(double T, double sigma, double alpha, int j) {
    if (!(T >= 2.0)) throw DomainError("pair_sum_bound: T must be >= 2");
    if (T > 1e4) throw CapError("pair_sum_bound: T above 1e4 cap");
    if (!(alpha > 0.0) || alpha > 1.0) throw DomainError("pair_sum_bound: alpha in (0,1]");
    if (!(sigma > 0.0) || sigma > 3.0) throw DomainError("pair_sum_bound: sigma in (0,3]");
    if (j != 0 && j != 1) throw DomainError("pair_sum_bound: j must be 0 or 1");

    const long NT = static_cast<long>(std::floor(T));
    std::vector<double> a(NT + 1), lg(NT + 1);
    for (long n = 1; n <= NT; ++n) {
        a[n] = std::pow(n + alpha, -sigma);
        lg[n] = std::log(n + alpha);
    }

    double sum = 0;
    if (j == 0) {
        double s1 = 0, s2 = 0;
        for (long n = 1; n <= NT; ++n) {
            s1 += a[n];
            s2 += a[n] * a[n];
        }
        sum = s1 * s1 - s2;
    } else {
        for (long m = 1; m <= NT; ++m) {
            for (long n = 1; n <= NT; ++n) {
                if (n == m) continue;
                sum += a[m] * a[n] / std::fabs(lg[n] - lg[m]);
            }
        }
    }

    PairSumReport rep;
    rep.sum = sum;
    rep.ratio = sum / (std::pow(T, 2.0 - 2.0 * sigma) * std::pow(std::log(T), j));
    return rep;
}

LogRatioReport log_ratio_bound(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("log_ratio_bound: x, y must be positive");
    if (x == y) throw DomainError("log_ratio_bound: x and y must differ");
    LogRatioReport rep;
    rep.lhs = std::fabs(std::log(x) - std::log(y));
    rep.rhs = std::fabs(x - y) / std::max(x, y);
    // The inequality is exact mathematics; the slack only absorbs the last
    // few ulps when x and y agree to near machine precision.
    rep.holds = rep.lhs - rep.rhs >= -1e-14 * std::max(1.0, rep.rhs);
    return rep;
}

}  // namespace hz::zeta
