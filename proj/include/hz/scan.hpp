#pragma once

// Double-precision evaluation engine for tau-grids.
//
// This is the documented native-double fast path: values carry roughly
// 1e-11 absolute accuracy at desk scales (|t| <= ~2e4), which is far below
// every scan tolerance in the toolkit but looser than the tiered evaluator
// in zeta_core.  Grids share one Euler-Maclaurin cutoff for the whole
// window (chosen for the worst t) so the main sums become phase-sum kernel
// calls; the pole/half/Bernoulli corrections are applied per grid point.
//
// Truncated grids evaluate the bare Dirichlet block sum_{n <= t^mu} with
// no continuation terms; the cutoff floor(t^mu) is piecewise constant in
// t, so the window is split into constant-cutoff segments and each segment
// becomes one kernel call.

#include <complex>
#include <cstddef>
#include <vector>

#include "hz/simd/kernels.hpp"
#include "hz/types.hpp"

namespace hz::scan {

struct GridSpec {
    double tau0 = 0;
    double h = 0;
    std::size_t count = 0;

    double tau(std::size_t j) const { return tau0 + static_cast<double>(j) * h; }
    double tau_max() const { return count == 0 ? tau0 : tau(count - 1); }
};

struct DerivGrid {
    int kmax = 0;
    GridSpec grid;
    // values[k][j] = k-th s-derivative at sigma + i tau_j
    std::vector<std::vector<std::complex<double>>> values;
    long cutoff_min = 0;
    long cutoff_max = 0;
};

// EM-corrected zeta^{(k)}(sigma + i tau; alpha) over the grid, k = 0..kmax.
DerivGrid em_grid(double sigma, const Alpha& alpha, int kmax, const GridSpec& grid,
                  simd::Kind kind = simd::Kind::auto_select);

// Bare truncated sums sum_{n=0}^{floor(t^mu)} (-log(n+alpha))^k (n+alpha)^{-s}.
DerivGrid truncated_grid(double sigma, const Alpha& alpha, int kmax, double mu,
                         const GridSpec& grid, simd::Kind kind = simd::Kind::auto_select);

// Pointwise versions sharing the same formulas.
std::complex<double> em_point(double sigma, double tau, const Alpha& alpha, int k = 0);
std::complex<double> truncated_point(double sigma, double tau, const Alpha& alpha, int k,
                                     double mu);

// EM correction block (pole + half + Bernoulli) for the k-th derivative at
// cutoff m; exposed so grid and pointwise paths share one implementation.
std::complex<double> em_corrections(double sigma, double tau, double alpha_val, long m, int k);

// Cutoff selection for the EM double path at worst-case |t|.
long em_cutoff(double sigma, double tmax, double alpha_val);

}  // namespace hz::scan
