#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "hz/errors.hpp"

namespace hz {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// ── point s = sigma + i t ────────────────────────────────────────────────

struct ComplexPoint {
    double sigma = 0.0;
    double t = 0.0;

    std::complex<double> to_complex() const { return {sigma, t}; }
    bool finite() const { return std::isfinite(sigma) && std::isfinite(t); }
};

// ── evaluation result with an explicit error model ───────────────────────
//
// error_radius bounds |returned - true| under the documented tail model:
// Euler-Maclaurin remainder bound (even-index Bernoulli Fourier bound),
// Cauchy-disk derivative transfer for k >= 1, plus a rounding allowance of
// a few units in the last place per accumulated term at the working
// precision.  The value itself is reported in double; internal arithmetic
// runs at the tier selected by Precision.

struct EvalResult {
    std::complex<double> value{};
    double error_radius = 0.0;
    long terms_used = 0;
};

// ── working precision request ────────────────────────────────────────────
//
// working_digits selects the internal arithmetic tier (double up to 16
// digits, then 50- and 100-digit MPFR floats).  target_abs_error must be
// achievable at that tier: we require target >= 10^(2 - working_digits) so
// the tier keeps at least two guard digits beyond the requested target.

struct Precision {
    int working_digits = 30;
    double target_abs_error = 1e-12;

    void validate() const {
        if (working_digits < 15) throw DomainError("Precision: working_digits must be >= 15");
        if (working_digits > 100) throw PrecisionError("Precision: working_digits above the 100-digit tier");
        if (!(target_abs_error > 0)) throw DomainError("Precision: target_abs_error must be positive");
        const double floor = std::pow(10.0, 2 - working_digits);
        if (target_abs_error < floor)
            throw PrecisionError("Precision: target_abs_error below what working_digits can certify");
    }

    static Precision make(int digits, double target) {
        Precision p{digits, target};
        p.validate();
        return p;
    }
};

// ── parameter alpha in (0,1] ─────────────────────────────────────────────
//
// Plain real parameters (1, 1/2, ...) are carried as doubles, which is
// exact for the dyadic values used throughout.  Algebraic irrational
// parameters implement RealProvider: they can tighten a rational enclosure
// on demand, so high-precision tiers never round alpha through a double.

struct RealProvider {
    virtual ~RealProvider() = default;
    // Rational enclosure [lo, hi] with hi - lo <= 2^-bits.
    virtual void enclosure(int bits, BigRat& lo, BigRat& hi) const = 0;
    virtual double approx() const = 0;
};

class Alpha {
  public:
    Alpha() = default;
    explicit Alpha(double v) : d_(v) {
        if (!(v > 0.0) || v > 1.0) throw DomainError("Alpha: value must lie in (0,1]");
    }
    explicit Alpha(std::shared_ptr<const RealProvider> p) : p_(std::move(p)) {
        if (!p_) throw DomainError("Alpha: null provider");
        d_ = p_->approx();
        if (!(d_ > 0.0) || d_ > 1.0) throw DomainError("Alpha: provided value must lie in (0,1]");
    }

    bool exact_double() const { return p_ == nullptr; }
    double approx() const { return d_; }

    // Rational enclosure of width <= 2^-bits (exact singleton for doubles).
    void enclosure(int bits, BigRat& lo, BigRat& hi) const;

    // Midpoint of an enclosure tight enough for `digits10` decimal digits.
    BigRat midpoint(int digits10) const;

  private:
    double d_ = 1.0;
    std::shared_ptr<const RealProvider> p_;
};

// Deterministic splitmix-style hash used wherever a seeded stream has to
// be derived from a user seed plus a role tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace hz
