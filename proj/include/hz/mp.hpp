#pragma once

// Tiered real arithmetic plus a minimal complex layer.
//
// Everything the evaluators need from a complex type is +,-,*,/, abs, and
// powers with a *real* base: w^{-s} = w^{-sigma} (cos(t log w) - i sin(t log w)).
// That keeps the MPFR tiers free of any external complex dependency.  The
// tier is chosen from Precision::working_digits: double (<=16), 50-digit
// MPFR, 100-digit MPFR.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "hz/types.hpp"

namespace hz::mp {

namespace bmp = boost::multiprecision;
using f50 = bmp::number<bmp::mpfr_float_backend<50>, bmp::et_off>;
using f100 = bmp::number<bmp::mpfr_float_backend<100>, bmp::et_off>;

template <class R> inline constexpr int tier_digits = 0;
template <> inline constexpr int tier_digits<double> = 16;
template <> inline constexpr int tier_digits<f50> = 50;
template <> inline constexpr int tier_digits<f100> = 100;

// Unit roundoff of the tier, used by the rounding-allowance model.
template <class R> inline R tier_eps() {
    using std::pow;
    return pow(R(10), R(-tier_digits<R> + 1));
}
template <> inline double tier_eps<double>() { return 2.3e-16; }

inline constexpr const char* PI_STR =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211707";
inline constexpr const char* EULER_GAMMA_STR =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674";

template <class R> inline R const_pi() { return R(PI_STR); }
template <> inline double const_pi<double>() { return std::numbers::pi; }

template <class R> inline R const_euler() { return R(EULER_GAMMA_STR); }
template <> inline double const_euler<double>() { return std::numbers::egamma; }

template <class R> inline double to_double(const R& x) { return x.template convert_to<double>(); }
template <> inline double to_double<double>(const double& x) { return x; }

template <class R> inline R from_rat(const BigRat& q) {
    return R(numerator(q).str()) / R(denominator(q).str());
}
template <> inline double from_rat<double>(const BigRat& q) { return q.convert_to<double>(); }

// Render alpha at the tier's precision through its rational enclosure.
template <class R> inline R alpha_as(const Alpha& a) {
    if (a.exact_double() || tier_digits<R> <= 16) return R(a.approx());
    return from_rat<R>(a.midpoint(tier_digits<R> + 5));
}
template <> inline double alpha_as<double>(const Alpha& a) { return a.approx(); }

// ── complex over a real tier ─────────────────────────────────────────────

template <class R>
struct Cx {
    R re{}, im{};

    Cx() = default;
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(R r) : re(std::move(r)), im(R(0)) {}

    Cx operator-() const { return {-re, -im}; }
    Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
    Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(const R& a, const Cx& b) { return {a * b.re, a * b.im}; }
    friend Cx operator*(const Cx& b, const R& a) { return a * b; }
    friend Cx operator/(const Cx& a, const R& b) { return {a.re / b, a.im / b}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        using std::abs;
        // Smith's algorithm: stable against overflow in |b|^2.
        if (abs(b.re) >= abs(b.im)) {
            R r = b.im / b.re, den = b.re + b.im * r;
            return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
        }
        R r = b.re / b.im, den = b.im + b.re * r;
        return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
    }
};

template <class R> inline Cx<R> conj(const Cx<R>& z) { return {z.re, -z.im}; }
template <class R> inline R norm2(const Cx<R>& z) { return z.re * z.re + z.im * z.im; }

template <class R> inline R cabs(const Cx<R>& z) {
    using std::sqrt;
    return sqrt(norm2(z));
}

template <class R> inline Cx<R> cis(const R& theta) {
    using std::cos;
    using std::sin;
    return {cos(theta), sin(theta)};
}

// base^z for real base > 0: exp(x log base) * cis(y log base).
template <class R> inline Cx<R> rpow(const R& base, const Cx<R>& z) {
    using std::exp;
    using std::log;
    R L = log(base);
    R mag = exp(z.re * L);
    Cx<R> rot = cis<R>(z.im * L);
    return {mag * rot.re, mag * rot.im};
}

template <class R> inline std::complex<double> to_cd(const Cx<R>& z) {
    return {to_double(z.re), to_double(z.im)};
}

}  // namespace hz::mp
