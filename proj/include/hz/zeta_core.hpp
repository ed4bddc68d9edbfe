#pragma once

// Hurwitz zeta evaluation core.
//
// zeta(s; alpha) = sum_{n>=0} (n+alpha)^{-s} continued by Euler-Maclaurin:
// initial block of m terms, pole term (m+alpha)^{1-s}/(s-1), half term, and
// Bernoulli corrections B_2..B_10.  The remainder after the B_10 pair is
// bounded by 4 |(s)_11| / (2 pi)^11 * (m+alpha)^{-(sigma+10)} / (sigma+10),
// which follows from |B~_11(x)| <= 4 * 11! / (2 pi)^11.  m starts at
// max(2 ceil|t|, 50) and doubles until the bound meets the target.
//
// Derivatives in s come from differentiating each term (Leibniz on the
// polynomial-times-exponential pieces); the differentiated remainder is
// bounded via Cauchy's estimate on a radius-1/2 disk, k! 2^k times the
// k=0 bound evaluated at sigma - 1/2 with |s+r| inflated by 1/2.
//
// All functions here are pure; concurrent calls on distinct arguments are
// safe.  The admissible domain is sigma in [-5, 5], |t| <= 1e7, k <= 10.

#include <complex>

#include "hz/types.hpp"

namespace hz::zeta {

inline constexpr double POLE_GUARD = 1e-12;

// k-th s-derivative of zeta(s; alpha).  alpha in (0,1], 0 <= k <= 10.
EvalResult hurwitz_zeta(const ComplexPoint& s, const Alpha& alpha, int k = 0,
                        const Precision& prec = {});

// zeta_1(s; alpha) = zeta(s; alpha) - alpha^{-s}: the n=0 term removed.
EvalResult zeta_one(const ComplexPoint& s, const Alpha& alpha, const Precision& prec = {});

// Riemann zeta as the alpha = 1 special case (shared growth machinery).
EvalResult riemann_zeta(const ComplexPoint& s, const Precision& prec = {});

// ── real-axis partial sum asymptotics ────────────────────────────────────
// sum_{n<=T} n^{-sigma} against log T + gamma (sigma = 1) or
// T^{1-sigma}/(1-sigma) + zeta(sigma) (sigma in (0,2] \ {1}).

struct PartialSumReport {
    double sum = 0;
    double predicted = 0;
    double residual = 0;
};

PartialSumReport partial_sum_asymptotics(double T, double sigma);

// ── off-diagonal pair sums ───────────────────────────────────────────────
// sum over 1 <= m != n <= T of (m+alpha)^{-sigma} (n+alpha)^{-sigma},
// weighted by |log((n+alpha)/(m+alpha))|^{-1} when j = 1; ratio divides by
// T^{2-2sigma} (log T)^j.

struct PairSumReport {
    double sum = 0;
    double ratio = 0;
};

PairSumReport pair_sum_bound(double T, double sigma, double alpha, int j);

// ── elementary log-ratio lower bound ─────────────────────────────────────
// |log(x/y)| >= |x-y| / max(x,y) for positive x != y.

struct LogRatioReport {
    double lhs = 0;
    double rhs = 0;
    bool holds = false;
};

LogRatioReport log_ratio_bound(double x, double y);

}  // namespace hz::zeta
