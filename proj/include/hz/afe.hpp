#pragma once

// Approximate functional equation strip: admissible (sigma, mu) region for
// replacing zeta(s; alpha) by the truncated block sum_{n <= t^mu}, the
// degree condition for cutoffs t^{1/d}, and empirical decay measurements
// of the truncation error against the high-precision core.

#include <complex>
#include <span>
#include <vector>

#include "hz/types.hpp"

namespace hz::afe {

// eta is the subconvexity growth exponent scale; theta = 4/(27 eta^2).
// xi is the exact boundary offset making d = 3 admissible at
// sigma = 1 - xi: xi = 2^8 5^2 / (3 19^2 89^2) = 6400/8578443.
struct StripConstants {
    double eta = 4.45;

    double theta() const { return 4.0 / (27.0 * eta * eta); }
    static BigRat xi_exact() { return BigRat(6400, 8578443); }
    static double xi() { return 6400.0 / 8578443.0; }
};

// A(mu) = 1 - theta mu^2: truncation at t^mu is admissible for sigma in
// (A(mu), 1] (and up to 2 for the plain truncated sum).
double strip_lower_edge(double mu, const StripConstants& sc = {});

// d + 1/(2d) <= (40/267) (1/(3(1-sigma)))^{1/2}; always true at sigma = 1.
bool degree_admissible(int d, double sigma, const StripConstants& sc = {});

struct TruncationReport {
    std::complex<double> truncated_value{};
    std::complex<double> reference_value{};
    double abs_error = 0;
    long cutoff = 0;
};

// Truncation at cutoff floor(t^mu); requires t >= 2 and
// strip_lower_edge(mu) < sigma <= 2.
TruncationReport truncated_zeta(const ComplexPoint& s, const Alpha& alpha, double mu,
                                const Precision& ref_prec = Precision{30, 1e-9});

// k-th derivative block with cutoff floor(t^{1/d}); requires d >= 3 and
// strip_lower_edge(1/(d + 1/(2d))) <= sigma <= 1.  k = 0 reproduces
// truncated_zeta(mu = 1/d) bit for bit.
TruncationReport truncated_zeta_deriv(const ComplexPoint& s, const Alpha& alpha, int d, int k,
                                      const Precision& ref_prec = Precision{30, 1e-9});

struct GrowthCheck {
    double observed = 0;
    double bound = 0;
    bool holds = false;
};

// |zeta_1(sigma+it; alpha)| against calibC * t^{eta (1-sigma)^{3/2}} (log t)^{2/3}.
GrowthCheck growth_bound_check(double sigma, double t, const Alpha& alpha, double calibC,
                               const StripConstants& sc = {});

// Max observed/shape ratio over the default calibration grid
// (sigma in {0.5..1.0}, t log-spaced in [10, 10^3]).
double calibrate_growth_constant(const Alpha& alpha, const StripConstants& sc = {});

struct DecayFit {
    double nu_hat = 0;
    std::vector<double> t_centers;
    std::vector<double> medians;
};

// Median truncation error per decade, log-log regressed: error ~ t^{-nu_hat}.
DecayFit fit_decay_exponent(double sigma, const Alpha& alpha, double mu,
                            std::span<const double> t_centers, int points_per_center = 5,
                            const Precision& ref_prec = Precision{30, 1e-9});

}  // namespace hz::afe
