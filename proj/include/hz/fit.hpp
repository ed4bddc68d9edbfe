#pragma once

// Twisted Dirichlet polynomials and the constructive fit pipeline: the
// interpolation-based feasibility certificate, a projected-gradient
// polydisc solver for the moment system g_k(z, alpha) = A_k, and greedy
// unimodular rounding with an l2 certificate.  Phases are stored in full
// turns: e(theta) = exp(2 pi i theta).

#include <complex>
#include <vector>

#include "hz/types.hpp"

namespace hz::fit {

struct PhaseVector {
    std::vector<double> theta;  // reduced mod 1 to [0,1)

    void normalize();
};

struct TwistedPolynomial {
    long Q = 1;
    PhaseVector theta;
    Alpha alpha{1.0};

    void validate() const;
};

struct TargetSpec {
    std::vector<std::complex<double>> a;  // N+1 derivative targets
    double sigma = 1.0;
    int N = 0;
    double epsilon = 0.1;
    double A_floor = 1.0;

    void validate() const;
};

// Sum_{n=0}^{Q-1} e(theta_n) (-log(n+alpha))^k (n+alpha)^(-s); k <= 10.
std::complex<double> eval_twisted(const TwistedPolynomial& poly, const ComplexPoint& s,
                                  int k = 0);

// A_k = a_k - sum_{n=0}^{R-1} (-1)^n (-log(n+alpha))^k (n+alpha)^(-sigma).
std::vector<std::complex<double>> tail_offsets(const TargetSpec& targets, long R,
                                               const Alpha& alpha);

struct InterpolationCertificate {
    std::vector<double> x_nodes;  // log(R+alpha) ... log Q, N+1 nodes
    double S = 0;                 // half-width log(Q/(R+alpha)) / (4N^3)
    double good_lhs = 0;          // interpolation inequality, offset direction
    double good_rhs = 0;
    double E_value = 0;
    std::vector<double> systine_rhs;
    std::vector<double> offsets_abs;
    bool passes = false;
};

// Evaluates the moment-feasibility inequalities |A_k| <= E * RHS_k at
// alpha = targets.A_floor; a failing certificate is a valid result, not an
// error.  Callers pin A_floor to the parameter actually in use.
InterpolationCertificate feasibility_certificate(long R, long Q, double sigma, int N,
                                                 const TargetSpec& targets);

struct PolydiscSolution {
    std::vector<std::complex<double>> z;  // indices R..Q-1
    double residual = 0;
    long iterations = 0;
    bool best_effort = false;
    std::vector<double> trace;  // objective per iteration, non-increasing
};

// Minimizes sum_k |g_k(z, alpha) - A_k|^2 over the polydisc by projected
// gradient with step 1/L, L = 2 sum_n ||v_n||^2, warmed by the minimum-norm
// least-squares point.  Throws after max_iter iterations unless best_effort
// is set, in which case the best point found is returned.
PolydiscSolution solve_polydisc(const std::vector<std::complex<double>>& offsets, long R, long Q,
                                double sigma, int N, const Alpha& alpha, double tol,
                                long max_iter = 100000, bool best_effort = false);

struct RoundedPhases {
    std::vector<double> theta;  // indices R..Q-1
    double certificate_lhs = 0;
    double certificate_rhs = 0;
};

// Greedy unimodular rounding in decreasing ||v_n|| order over a 64-point
// phase grid with local refinement; asserts the l2 certificate
// ||sum (z_n - e(theta_n)) v_n||^2 <= 4 sum ||v_n||^2 afterwards.
RoundedPhases round_phases(const PolydiscSolution& sol, long R, long Q, double sigma, int N,
                           const Alpha& alpha);

struct FitResult {
    PhaseVector theta0;  // full phase vector, prefix theta_n = n/2 mod 1
    std::vector<double> achieved;
    InterpolationCertificate certificate;
    PolydiscSolution solution;
    RoundedPhases rounding;
};

// Certificate, solve, round, evaluate.  A failing certificate switches the
// solver to best-effort; achieved errors are reported either way.
FitResult fit_targets(const TargetSpec& targets, const Alpha& alpha, long R, long Q);

// ||v_n||^2 = sum_{k<=N} log(n+alpha)^(2k) (n+alpha)^(-2 sigma), the
// rounding cost weight for index n.
double coeff_norm2(long n, double alpha_val, double sigma, int N);

}  // namespace hz::fit
