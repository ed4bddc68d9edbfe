#pragma once

// Effective constants and the budget planner: E(R,Q,sigma), the density
// lower bound, the constants registry (the calibration knobs c0..c5 and
// C0..C5 with the fitted decay exponent nu), and the planner that walks
// the full parameter tower R -> Q0 -> Q -> M -> T, keeping astronomically
// large entries as iterated-log magnitudes.

#include <string>
#include <vector>

#include "hz/logmag.hpp"
#include "hz/types.hpp"

namespace hz::eff {

// sigma < 1:  R^(1-sigma)/(2^(3+sigma)(1-sigma)) [ (Q/(R+1))^((1-sigma)/(4N^3)) - 1 ]
// sigma = 1:  log(Q/(R+1)) / (2^5 N^3)
// Requires Q > R+1.  As sigma -> 1- the first branch tends to half the
// sigma = 1 value.
double capital_E(long R, long Q, double sigma, int N);

// Same quantity as log E with Q given as log Q, for planner searches where
// Q overflows a double.
double capital_E_log(long R, double logQ, double sigma, int N);

// (1/2) Q^(-2Q) (1 - Q^(-2)) as an exact rational; Q >= 2.
BigRat density_lower_bound_exact(long Q);
double density_lower_bound(long Q);

struct ConstantsRegistry {
    double c0 = 1, c1 = 1, c2 = 1, c3 = 1, c4 = 1, c5 = 1;
    double C0 = 1, C1 = 1, C2 = 1, C3 = 1, C4 = 1, C5 = 1;
    double nu = 0.05;       // fitted truncation decay exponent (afe export)
    double h_alpha = 2;     // assumed parameter height for the K bound
    double log_q0_cap = 1e6;

    void validate() const;
    std::string to_json() const;
    static ConstantsRegistry from_json_text(const std::string& text);
    static ConstantsRegistry load(const std::string& path);
};

struct EffectiveBudget {
    double sigma = 1;
    int N = 0;
    double A_floor = 1;
    double epsilon = 0;
    int d = 3;
    int d_alpha = 2;  // worst admissible degree, d-1

    std::vector<std::complex<double>> targets;

    long R = 0;
    LogMag Q0;  // integers, kept as magnitudes once they leave double range
    LogMag Q;
    LogMag M;
    LogMag T;
    double E_value = 0;  // E(R, Q0, sigma), +inf when only the log fits
    double E_log = 0;
    LogMag K;

    std::string to_json() const;
};

struct AuditCheck {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    bool all_hold = false;
};

// Smallest parameter tower satisfying Theorem-style constraints with the
// registry's constants:
//   R  >= c0 eps^(4/(1-2 sigma))   (exponent -4 at sigma = 1)
//   Q0 >= c1 R  with  c2(|a_k| + A^(-1/2)) <= E(R,Q0,sigma) RHS_k, all k
//   Q  >= c3 (Q0 + eps^-8)
//   M  >= c4 exp(2Q^2)
//   T  >= c5 max{ (K exp((M+2)exp(Q^2)))^(4d/(4(d-d_alpha)-3)), eps^(-2 nu) }
// The planner assumes the worst admissible parameter degree
// d_alpha = d-1 and height registry.h_alpha.  sigma must exceed 0.51.
EffectiveBudget plan_budget(double sigma, int N, double A_floor, double epsilon,
                            const std::vector<std::complex<double>>& targets, int d,
                            const ConstantsRegistry& reg);

// Re-derives every inequality in the budget from scratch and reports each
// as a named pass/fail line.
AuditReport audit_budget(const EffectiveBudget& b, const ConstantsRegistry& reg);

// JSON fragment {"scale": ..., ...} for one magnitude; level 0 serializes
// the plain value, level 1 the natural log, level 2 the log of the log.
std::string logmag_json(const LogMag& x);

}  // namespace hz::eff
