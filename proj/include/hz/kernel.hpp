#pragma once

// Smoothing kernel machinery: the bump mollifier lambda, its Fourier
// coefficients at scale delta = Q^-2, the product kernel Lambda_Q, the
// torus curve gamma_Q with frequencies log(n+alpha)/2pi, and the
// kernel-mass / empirical-density quadratures built on them.

#include <complex>

#include "hz/fit.hpp"
#include "hz/simd/kernels.hpp"
#include "hz/types.hpp"

namespace hz::kern {

// Integral of exp(-1/(1-x^2)) over [-1,1]; lambda divides by this so that
// its own integral is exactly 1.
double mollifier_normalization();

// lambda(x) = exp(-1/(1-x^2)) / normalization on (-1,1), zero outside.
// Peak value lambda(0) = e^-1 / normalization < 1.
double mollifier_eval(double x);

struct KernelConfig {
    long Q = 2;
    double delta = 0.25;

    static KernelConfig make(long Q);
    void validate() const;  // requires delta == Q^-2 exactly
};

// c_n = delta * Integral lambda(u) e(-n delta u) du; c_0 = delta.
std::complex<double> fourier_coeff(long n, const KernelConfig& cfg);

// Lambda_Q(theta) = prod_n lambda(dist(theta_n, Z)/delta); accepts
// arbitrary reals and is exactly 1-periodic per coordinate.
double big_lambda(const fit::PhaseVector& theta, const KernelConfig& cfg);

// gamma_Q(tau, alpha) = (log(n+alpha)/(2 pi) * tau mod 1)_{n<Q}.
fit::PhaseVector curve_gamma(double tau, const Alpha& alpha, long Q);

// (1/(delta^Q T)) Integral_T^{2T} Lambda_Q(gamma_Q(tau, alpha) - theta1) dtau
// by composite Simpson.  step = 0 selects the mandated step
// delta*2pi/(10 log(Q+1)); an explicit coarser step is rejected.
double kernel_mass(const KernelConfig& cfg, const Alpha& alpha, const fit::PhaseVector& theta1,
                   double T, double step = 0.0,
                   simd::Kind kind = simd::Kind::auto_select);

// Fraction of `grid` equispaced tau in [T, 2T] where
// max_k |zeta^(k)(sigma + i tau; alpha) - a_k| < sqrt(2(Q^2+1)/(Q^2-1)) * epsilon.
double empirical_density(const KernelConfig& cfg, const Alpha& alpha, double sigma,
                         const fit::TargetSpec& targets, double T, long grid);

}  // namespace hz::kern
