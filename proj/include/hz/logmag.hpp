#pragma once

// Iterated-logarithm magnitudes for the budget planner.
//
// Planner outputs live far beyond double range: log T is itself of the form
// exponent * (M+2) * exp(Q^2) with M astronomically large, so even the
// natural log of T can overflow.  A LogMag carries x = exp^(level)(v):
// level 0 is a plain double, level 1 stores ln x, level 2 stores ln ln x.
// Canonical form demotes whenever exp(v) fits comfortably in a double, so
// comparisons are lexicographic in (level, v) after aligning levels.
//
// Additions at level >= 1 keep only the dominant term; the neglected
// correction is below one ulp of the stored exponent, which is the same
// convention the planner's inequalities are audited under.

#include <cmath>
#include <limits>

#include "hz/errors.hpp"

namespace hz {

class LogMag {
  public:
    LogMag() = default;

    static LogMag zero() { return LogMag(0, 0.0); }
    static LogMag from_plain(double v) {
        if (!(v >= 0)) throw DomainError("LogMag: magnitudes must be >= 0");
        return LogMag(0, v);
    }
    static LogMag from_ln(double lnv) { return LogMag(1, lnv).canonical(); }

    int level() const { return level_; }
    double raw() const { return v_; }
    bool is_zero() const { return level_ == 0 && v_ == 0.0; }

    // Plain double value, +inf when out of range.
    double plain() const {
        if (level_ == 0) return v_;
        if (level_ == 1) return v_ > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(v_);
        return std::numeric_limits<double>::infinity();
    }

    // ln x as a double, +inf when even that overflows.
    double ln_plain() const { return ln().plain(); }

    LogMag exp_() const { return LogMag(level_ + 1, v_).canonical(); }

    LogMag ln() const {
        if (level_ >= 1) return LogMag(level_ - 1, v_);
        if (!(v_ > 0)) throw DomainError("LogMag: ln of non-positive magnitude");
        return LogMag(0, std::log(v_));
    }

    friend LogMag operator*(const LogMag& a, const LogMag& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return lnsum(a.ln(), b.ln()).exp_();
    }

    friend LogMag operator+(const LogMag& a, const LogMag& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.level_ == 0 && b.level_ == 0) {
            double s = a.v_ + b.v_;
            if (std::isfinite(s)) return LogMag(0, s);
        }
        // log-domain: ln(x+y) = max + log1p(exp(min-max)) when comparable.
        return add_logdom(a.ln(), b.ln()).exp_();
    }

    // x^p for p > 0.
    LogMag pow_(double p) const {
        if (!(p > 0)) throw DomainError("LogMag: exponent must be positive");
        if (is_zero()) return zero();
        return ln().scale(p).exp_();
    }

    // Multiply the *value* by a positive scalar (used on ln-domain terms).
    LogMag scale(double p) const {
        if (level_ == 0) {
            double s = v_ * p;
            if (std::isfinite(s)) return LogMag(0, s);
            return LogMag(1, std::log(std::fabs(v_)) + std::log(p));
        }
        LogMag lnself = ln();
        return LogMag(lnself.level_ == 0 ? 1 : lnself.level_ + 1,
                      lnself.level_ == 0 ? lnself.v_ + std::log(p) : lnself.v_)
            .canonical();
    }

    friend bool operator<(const LogMag& a, const LogMag& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const LogMag& a, const LogMag& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const LogMag& a, const LogMag& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const LogMag& a, const LogMag& b) { return cmp(a, b) >= 0; }

    static int cmp(const LogMag& a, const LogMag& b) {
        LogMag x = a, y = b;
        // Align to the higher level by taking logs of the lower one.
        while (x.level_ > y.level_) {
            if (!(y.v_ > 0)) return 1;
            y = LogMag(y.level_, std::log(y.v_));
            x = LogMag(x.level_ - 1, x.v_);
        }
        while (y.level_ > x.level_) {
            if (!(x.v_ > 0)) return -1;
            x = LogMag(x.level_, std::log(x.v_));
            y = LogMag(y.level_ - 1, y.v_);
        }
        if (x.v_ < y.v_) return -1;
        if (x.v_ > y.v_) return 1;
        return 0;
    }

  private:
    LogMag(int level, double v) : level_(level), v_(v) {}

    LogMag canonical() const {
        LogMag r = *this;
        while (r.level_ >= 1 && r.v_ <= 700.0) {
            r = LogMag(r.level_ - 1, std::exp(r.v_));
        }
        return r;
    }

    // Addition after both operands were taken into the log domain; exact at
    // level 0, dominant-term rule once exponents stop being comparable.
    static LogMag add_logdom(const LogMag& a, const LogMag& b) {
        if (a.level_ == 0 && b.level_ == 0) {
            double hi = a.v_ > b.v_ ? a.v_ : b.v_;
            double lo = a.v_ > b.v_ ? b.v_ : a.v_;
            return LogMag(0, hi + std::log1p(std::exp(lo - hi)));
        }
        return cmp(a, b) >= 0 ? a : b;
    }

    // Sum of two ln-domain terms as signed reals (a ln can be negative for
    // magnitudes below 1, but only at level 0).  Exact while both fit in a
    // double; above that range the smaller term is dropped.
    static LogMag lnsum(const LogMag& a, const LogMag& b) {
        if (a.level_ == 0 && b.level_ == 0) {
            const double s = a.v_ + b.v_;
            if (std::isfinite(s)) return LogMag(0, s);
            const double hi = a.v_ > b.v_ ? a.v_ : b.v_;
            const double lo = a.v_ > b.v_ ? b.v_ : a.v_;
            return LogMag(1, std::log(hi) + std::log1p(lo / hi));
        }
        if (a.level_ == 0 && a.v_ <= 0) return b;
        if (b.level_ == 0 && b.v_ <= 0) return a;
        return cmp(a, b) >= 0 ? a : b;
    }

    int level_ = 0;
    double v_ = 0.0;
};

}  // namespace hz
