#pragma once

// Desk-scale shift search and function approximation: grid scan plus
// golden-section refinement for tau with max_k |zeta^(k) - a_k| minimal,
// contour-quadrature Taylor coefficients, the delta-selection root solve,
// and the end-to-end disk-approximation workflow.

#include <complex>
#include <functional>
#include <vector>

#include "hz/fit.hpp"
#include "hz/types.hpp"

namespace hz::search {

struct SearchWindow {
    double T = 1000.0;          // window is [T, 2T]
    long grid_points = 200000;
    int refine_iters = 60;

    void validate() const;
};

struct SearchReport {
    double tau_best = 0;
    std::vector<double> errors_per_k;
    double max_error = 0;
    bool satisfied = false;
    long em_points = 0;   // grid points served by the Euler-Maclaurin path
    long afe_points = 0;  // grid points served by the truncated path (tau > 1e4)
};

// Scans [T, 2T], refines the best grid point by golden section, and
// reports whether max_k |zeta^(k)(sigma + i tau; alpha) - a_k| < epsilon.
// Ties prefer the lowest tau.
SearchReport search_shift(const fit::TargetSpec& targets, const Alpha& alpha,
                          const SearchWindow& window);

struct ApproxJob {
    ComplexPoint s0{1.0, 0.0};  // t must be 0; fold shifts into tau
    double r = 0.1;
    std::function<std::complex<double>(std::complex<double>)> f;
    double epsilon = 0.05;
    double delta0 = 0.5;
    int N = 10;  // cap on the Taylor degree selected from the tail bound

    void validate() const;
};

// f^(k)(s0)/k! for k = 0..N via trapezoidal contour quadrature with 2^9
// nodes on |s - s0| = r; doubling the node count must agree to 1e-8.
std::vector<std::complex<double>> taylor_coeffs(const ApproxJob& job, int N);

// Root delta of M_tau delta^N/(1-delta) = epsilon (2 - exp(delta r)) on
// (0, min(1, log2/r)), residual below 1e-10.
double choose_delta(double M_tau, int N, double r, double epsilon);

struct ApproxReport {
    double tau = 0;
    double delta = 0;
    int n_used = 0;
    double m_tau = 0;  // max of |zeta(s + i tau)| on the contour
    double max_error_on_disk = 0;
    bool bound_3eps_ok = false;
    double sigma1_bound = 0;  // Taylor tail bound on the delta0 r disk at n_used
    double sigma2_value = 0;  // partial-sum discrepancy on the disk
    double sigma2_bound = 0;  // epsilon * exp(delta r)
    double sigma3_value = 0;  // M_tau delta^N/(1-delta) at the chosen delta
    SearchReport search;
    std::vector<std::complex<double>> coeffs;
};

// Taylor coefficients -> shift search on derivative targets -> M(tau) on
// the contour -> delta selection -> 3-epsilon verification on 10^3
// deterministic disk samples.
ApproxReport approx_function(const ApproxJob& job, const Alpha& alpha,
                             const SearchWindow& window);

}  // namespace hz::search
