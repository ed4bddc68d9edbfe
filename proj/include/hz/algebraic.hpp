#pragma once

// Algebraic parameters alpha in (0,1] given by an integer minimal
// polynomial plus an isolating interval, and the exact layer built on
// them: Liouville-type lower bounds, twist polynomials P_m, the family
// height H(Q,M), the constant K(Q,M,alpha), and membership in
// A(Q,M) = A1 union A2.  Every accept/reject decision in this header is
// backed by integer or rational arithmetic; floating point only proposes
// candidates.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "hz/poly.hpp"
#include "hz/types.hpp"

namespace hz::alg {

class AlgebraicParameter : public RealProvider {
  public:
    // minpoly must be primitive and irreducible (certified modulo a small
    // prime) with exactly one root in [lo, hi], and that root must lie in
    // (0,1].  Degree 1 is rejected: the parameter is meant to be
    // irrational.
    AlgebraicParameter(IntPoly minpoly, BigRat lo, BigRat hi);

    int degree() const { return f_.degree(); }
    BigInt height() const { return f_.height(); }
    const IntPoly& minpoly() const { return f_; }
    int certifying_prime() const { return cert_prime_; }

    void enclosure(int bits, BigRat& lo, BigRat& hi) const override;
    double approx() const override { return approx_; }

    // Exact sign of p at the parameter; 0 iff minpoly divides p.
    int sign_of(const IntPoly& p) const;

    // |p(alpha)| as a double, certified nonzero first; the enclosure is
    // refined until the relative width is below rel_tol.
    double abs_value_of(const IntPoly& p, double rel_tol = 1e-13) const;

  private:
    IntPoly f_;
    int cert_prime_ = 0;
    mutable std::mutex mu_;
    mutable BigRat lo_, hi_;
    double approx_ = 0;

    void refine_locked(int bits) const;
};

using AlgebraicPtr = std::shared_ptr<const AlgebraicParameter>;

AlgebraicPtr make_algebraic(std::vector<BigInt> minpoly_coeffs, const BigRat& lo,
                            const BigRat& hi);
Alpha alpha_of(const AlgebraicPtr& a);

// Stock parameters used across tests and the CLI.
AlgebraicPtr preset_sqrt2m1();  // X^2+2X-1 on [0.4, 0.5]
AlgebraicPtr preset_golden();   // X^2+X-1  on [0.6, 0.7]
AlgebraicPtr preset_cubic();    // X^3+X-1  on [0.6, 0.7]
AlgebraicPtr preset_quartic();  // X^4+X-1  on [0.7, 0.8]

// (n+1)^(1-m/t) (m+1)^(-n/(2t)) H(P)^(1-m/t) H(Q)^(-n/t) max(1,|alpha|)^n
// for alpha a root of Qpoly of order t; n = deg P, m = deg Qpoly.  At
// t = 1 with Qpoly the minimal polynomial this is the liouville_bound
// value.
double guting_bound(const IntPoly& P, const IntPoly& Qpoly, int t, double alpha_abs);

struct LiouvilleReport {
    double bound = 0;
    double value = 0;
    bool holds = false;
};

// Lower bound (n+1)^(1-d) (d+1)^(-n/2) H(P)^(1-d) H(alpha)^(-n) against
// |P(alpha)|; throws if P(alpha) = 0 (exact divisibility check).
LiouvilleReport liouville_bound(const IntPoly& P, const AlgebraicParameter& alpha);

struct TwistIndex {
    std::vector<long> m;
    long bound = 0;  // M

    void validate() const;
};

struct TwistPolys {
    IntPoly qplus;
    IntPoly qminus;
    IntPoly p;  // qplus - qminus
};

// Qplus = prod_{m_n > 0} (n+X)^{m_n}, Qminus = prod_{m_n < 0} (n+X)^{-m_n}.
TwistPolys twist_polynomials(const TwistIndex& idx);

// Exact max of H(P_m) over m in [-M,M]^Q \ {0}; enumeration capped at
// Q*M <= qm_cap.
BigInt family_height(int Q, long M, long qm_cap = 12);

// log H(Q,M) upper bound Q*M*log(2Q) for use beyond the enumeration cap.
double family_height_log_bound(int Q, double M);

// log K(Q,M,alpha) with K = [H(Q,M)(MQ+2)]^(d-1) [H(alpha)(d+1)^(1/2)]^(MQ+1);
// exact H(Q,M) under the cap, the log bound above it.
double kappa_constant(int Q, long M, const AlgebraicParameter& alpha, long qm_cap = 12);

struct MembershipWitness {
    std::vector<long> m;
    long x = 0;
    long y = 0;
};

struct MembershipReport {
    bool in_A1 = false;
    bool in_A2 = false;
    std::optional<MembershipWitness> witness;  // failing (m,x,y) for A2
    long xy_range = 0;                         // ceil(exp(2 Q^2))
};

// A1: d(alpha) > MQ+1.  A2: no m in [-M,M]^Q \ {0} and integers
// x,y in [0, ceil(exp(2Q^2))] satisfy
// Qplus_m(alpha)(y+alpha) = Qminus_m(alpha)(x+alpha); candidates are
// proposed numerically and settled by exact divisibility of the
// cross-multiplied polynomial by the minimal polynomial.
MembershipReport membership_A(const AlgebraicParameter& alpha, int Q, long M,
                              long range_cap = 3000, long qm_cap = 12);

}  // namespace hz::alg
