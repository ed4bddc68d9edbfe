#pragma once

// Exact integer polynomials: the coefficient vector is the whole state,
// arithmetic never leaves Z, and the root-facing helpers (signs, Sturm
// counts, interval images) work over Q so every comparison is decidable.

#include <string>
#include <vector>

#include "hz/types.hpp"

namespace hz::alg {

class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);

    static IntPoly constant(BigInt c);
    static IntPoly linear(BigInt c0, BigInt c1);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    BigInt coeff(int i) const;
    const BigInt& leading() const;
    const std::vector<BigInt>& coeffs() const { return c_; }

    BigInt height() const;
    BigInt content() const;
    IntPoly primitive() const;
    IntPoly derivative() const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    BigRat eval(const BigRat& x) const;
    int sign_at(const BigRat& x) const;

    // Image enclosure of the polynomial over [lo, hi] by interval Horner.
    void eval_interval(const BigRat& lo, const BigRat& hi, BigRat& out_lo, BigRat& out_hi) const;

    // True when this divides `other` over Q (equivalently, over Z after
    // clearing contents).
    bool divides(const IntPoly& other) const;

    // Coefficient list "c0,c1,...,cd" (ascending powers).
    std::string str() const;

  private:
    std::vector<BigInt> c_;
    void trim();
};

// Number of distinct real roots of squarefree f in (a, b], both endpoints
// required to be non-roots.
int sturm_count(const IntPoly& f, const BigRat& a, const BigRat& b);

// Irreducibility over Z certified by irreducibility modulo a small prime
// not dividing the leading coefficient.  Returns the certifying prime, or
// 0 when no prime in the fixed trial list certifies (which does not imply
// reducibility).
int irreducibility_prime(const IntPoly& f);

}  // namespace hz::alg
