#include "hz/algebraic.hpp"

#include <cmath>

#include "hz/errors.hpp"
#include "hz/mp.hpp"

namespace hz::alg {

using mp::f100;

namespace {

BigRat pow2_inv(int bits) { return BigRat(1, BigInt(1) << bits); }

}  // namespace

AlgebraicParameter::AlgebraicParameter(IntPoly minpoly, BigRat lo, BigRat hi)
    : f_(minpoly.primitive()), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (f_.degree() < 2)
        throw DomainError("AlgebraicParameter: degree must be >= 2 (irrational parameter)");
    cert_prime_ = irreducibility_prime(f_);
    if (cert_prime_ == 0)
        throw CertificateError(
            "AlgebraicParameter: no small prime certifies irreducibility of the minimal "
            "polynomial");
    if (!(lo_ < hi_)) throw DomainError("AlgebraicParameter: empty isolating interval");
    if (f_.sign_at(lo_) == 0 || f_.sign_at(hi_) == 0)
        throw DomainError("AlgebraicParameter: interval endpoints must not be roots");
    if (sturm_count(f_, lo_, hi_) != 1)
        throw DomainError("AlgebraicParameter: interval must isolate exactly one root");

    // Squeeze the interval into (0,1]; the root is irrational, so strict
    // containment is reachable unless it lies outside entirely.
    while (lo_ < 0 || hi_ > 1) {
        if (hi_ <= 0 || lo_ >= 1)
            throw DomainError("AlgebraicParameter: root lies outside (0,1]");
        const BigRat mid = (lo_ + hi_) / 2;
        if (f_.sign_at(mid) == f_.sign_at(lo_))
            lo_ = mid;
        else
            hi_ = mid;
    }
    refine_locked(60);
    approx_ = ((lo_ + hi_) / 2).convert_to<double>();
}

void AlgebraicParameter::refine_locked(int bits) const {
    const BigRat width = pow2_inv(bits);
    const int slo = f_.sign_at(lo_);
    while (hi_ - lo_ > width) {
        const BigRat mid = (lo_ + hi_) / 2;
        if (f_.sign_at(mid) == slo)
            lo_ = mid;
        else
            hi_ = mid;
    }
}

void AlgebraicParameter::enclosure(int bits, BigRat& lo, BigRat& hi) const {
    std::lock_guard<std::mutex> lock(mu_);
    refine_locked(bits);
    lo = lo_;
    hi = hi_;
}

int AlgebraicParameter::sign_of(const IntPoly& p) const {
    if (p.is_zero() || f_.divides(p)) return 0;
    BigRat lo, hi, vlo, vhi;
    for (int bits = 64; bits <= 16384; bits *= 2) {
        enclosure(bits, lo, hi);
        p.eval_interval(lo, hi, vlo, vhi);
        if (vlo > 0) return 1;
        if (vhi < 0) return -1;
    }
    throw PrecisionError("AlgebraicParameter::sign_of: sign not separated at 16384 bits");
}

double AlgebraicParameter::abs_value_of(const IntPoly& p, double rel_tol) const {
    const int s = sign_of(p);
    if (s == 0) return 0.0;
    BigRat lo, hi, vlo, vhi;
    for (int bits = 64; bits <= 16384; bits *= 2) {
        enclosure(bits, lo, hi);
        p.eval_interval(lo, hi, vlo, vhi);
        if (s < 0) {
            std::swap(vlo, vhi);
            vlo = -vlo;
            vhi = -vhi;
        }
        if (vlo > 0 && (vhi - vlo) < vlo * BigRat(rel_tol))
            return ((vlo + vhi) / 2).convert_to<double>();
    }
    throw PrecisionError("AlgebraicParameter::abs_value_of: interval did not tighten");
}

AlgebraicPtr make_algebraic(std::vector<BigInt> minpoly_coeffs, const BigRat& lo,
                            const BigRat& hi) {
    return std::make_shared<const AlgebraicParameter>(IntPoly(std::move(minpoly_coeffs)), lo, hi);
}

Alpha alpha_of(const AlgebraicPtr& a) { return Alpha(a); }

AlgebraicPtr preset_sqrt2m1() {
    static const AlgebraicPtr p = make_algebraic({-1, 2, 1}, BigRat(2, 5), BigRat(1, 2));
    return p;
}

AlgebraicPtr preset_golden() {
    static const AlgebraicPtr p = make_algebraic({-1, 1, 1}, BigRat(3, 5), BigRat(7, 10));
    return p;
}

AlgebraicPtr preset_cubic() {
    static const AlgebraicPtr p = make_algebraic({-1, 1, 0, 1}, BigRat(3, 5), BigRat(7, 10));
    return p;
}

AlgebraicPtr preset_quartic() {
    static const AlgebraicPtr p = make_algebraic({-1, 1, 0, 0, 1}, BigRat(7, 10), BigRat(4, 5));
    return p;
}

double guting_bound(const IntPoly& P, const IntPoly& Qpoly, int t, double alpha_abs) {
    const int n = P.degree(), m = Qpoly.degree();
    if (n < 1 || m < 1) throw DomainError("guting_bound: polynomials must be non-constant");
    if (t < 1 || t > m) throw DomainError("guting_bound: root order t must lie in [1, deg Q]");
    const double hp = P.height().convert_to<double>();
    const double hq = Qpoly.height().convert_to<double>();
    const double mt = static_cast<double>(m) / t, nt = static_cast<double>(n) / t;
    return std::pow(n + 1.0, 1.0 - mt) * std::pow(m + 1.0, -nt / 2.0) * std::pow(hp, 1.0 - mt) *
           std::pow(hq, -nt) * std::pow(std::max(1.0, alpha_abs), n);
}

LiouvilleReport liouville_bound(const IntPoly& P, const AlgebraicParameter& alpha) {
    if (P.is_zero()) throw DomainError("liouville_bound: P must be nonzero");
    if (alpha.minpoly().divides(P))
        throw DomainError("liouville_bound: P vanishes at alpha (minimal polynomial divides P)");

    const int n = P.degree(), d = alpha.degree();
    const double hp = P.height().convert_to<double>();
    const double ha = alpha.height().convert_to<double>();

    LiouvilleReport rep;
    rep.bound = std::pow(n + 1.0, 1.0 - d) * std::pow(d + 1.0, -n / 2.0) *
                std::pow(hp, 1.0 - d) * std::pow(ha, -n);
    rep.value = alpha.abs_value_of(P);

    // Decide `holds` exactly: bound^2 is rational, so compare P(alpha)^2
    // against it through an integer polynomial sign.
    BigInt den = 1;
    for (int i = 0; i < 2 * (d - 1); ++i) den *= n + 1;
    for (int i = 0; i < n; ++i) den *= d + 1;
    BigInt hp2 = P.height(), ha2 = alpha.height();
    for (int i = 0; i < 2 * (d - 1); ++i) den *= hp2;
    for (int i = 0; i < 2 * n; ++i) den *= ha2;
    const IntPoly diff = P * P * IntPoly::constant(den) - IntPoly::constant(1);
    rep.holds = alpha.sign_of(diff) >= 0;
    return rep;
}

void TwistIndex::validate() const {
    if (m.empty()) throw DomainError("TwistIndex: empty index");
    if (bound < 1) throw DomainError("TwistIndex: bound M must be >= 1");
    bool nonzero = false;
    for (long v : m) {
        if (v < -bound || v > bound) throw DomainError("TwistIndex: |m_n| exceeds M");
        if (v != 0) nonzero = true;
    }
    if (!nonzero) throw DomainError("TwistIndex: all-zero index excluded");
}

TwistPolys twist_polynomials(const TwistIndex& idx) {
    idx.validate();
    TwistPolys out;
    out.qplus = IntPoly::constant(1);
    out.qminus = IntPoly::constant(1);
    for (std::size_t n = 0; n < idx.m.size(); ++n) {
        const long e = idx.m[n];
        const IntPoly factor = IntPoly::linear(BigInt(n), 1);
        for (long i = 0; i < std::labs(e); ++i) {
            if (e > 0)
                out.qplus = out.qplus * factor;
            else
                out.qminus = out.qminus * factor;
        }
    }
    out.p = out.qplus - out.qminus;
    return out;
}

namespace {

// Odometer over m in [-M,M]^Q, lexicographic with the last coordinate
// fastest; returns false once the sequence is exhausted.
bool next_index(std::vector<long>& m, long M) {
    for (std::size_t i = m.size(); i-- > 0;) {
        if (m[i] < M) {
            ++m[i];
            std::fill(m.begin() + static_cast<std::ptrdiff_t>(i) + 1, m.end(), -M);
            return true;
        }
    }
    return false;
}

bool all_zero(const std::vector<long>& m) {
    for (long v : m)
        if (v != 0) return false;
    return true;
}

}  // namespace

BigInt family_height(int Q, long M, long qm_cap) {
    if (Q < 1 || M < 1) throw DomainError("family_height: need Q >= 1 and M >= 1");
    if (static_cast<long>(Q) * M > qm_cap)
        throw CapError("family_height: Q*M above the enumeration cap; use the log bound");
    BigInt best = 0;
    std::vector<long> m(static_cast<std::size_t>(Q), -M);
    do {
        if (all_zero(m)) continue;
        TwistIndex idx{m, M};
        best = std::max(best, twist_polynomials(idx).p.height());
    } while (next_index(m, M));
    return best;
}

double family_height_log_bound(int Q, double M) {
    if (Q < 1 || !(M >= 1)) throw DomainError("family_height_log_bound: need Q >= 1 and M >= 1");
    return M * Q * std::log(2.0 * Q);
}

double kappa_constant(int Q, long M, const AlgebraicParameter& alpha, long qm_cap) {
    const double d = alpha.degree();
    const double ha = alpha.height().convert_to<double>();
    const double mq = static_cast<double>(M) * Q;
    double log_h;
    if (static_cast<long>(Q) * M <= qm_cap)
        log_h = std::log(family_height(Q, M, qm_cap).convert_to<double>());
    else
        log_h = family_height_log_bound(Q, static_cast<double>(M));
    return (d - 1.0) * (log_h + std::log(mq + 2.0)) +
           (mq + 1.0) * (std::log(ha) + 0.5 * std::log(d + 1.0));
}

MembershipReport membership_A(const AlgebraicParameter& alpha, int Q, long M, long range_cap,
                              long qm_cap) {
    if (Q < 1 || M < 1) throw DomainError("membership_A: need Q >= 1 and M >= 1");
    if (static_cast<long>(Q) * M > qm_cap)
        throw CapError("membership_A: Q*M above the enumeration cap");
    const double range_real = std::exp(2.0 * Q * Q);
    if (range_real > static_cast<double>(range_cap))
        throw CapError("membership_A: exp(2Q^2) above the x,y range cap");
    const long R = static_cast<long>(std::ceil(range_real));

    MembershipReport rep;
    rep.xy_range = R;
    rep.in_A1 = alpha.degree() > M * Q + 1;
    rep.in_A2 = true;

    BigRat lo, hi;
    alpha.enclosure(360, lo, hi);
    const f100 a = hz::mp::from_rat<f100>((lo + hi) / 2);

    std::vector<long> m(static_cast<std::size_t>(Q), -M);
    do {
        if (all_zero(m)) continue;
        const TwistPolys tw = twist_polynomials(TwistIndex{m, M});
        f100 vp = 0, vm = 0;
        for (int i = tw.qplus.degree(); i >= 0; --i)
            vp = vp * a + mp::from_rat<f100>(BigRat(tw.qplus.coeff(i)));
        for (int i = tw.qminus.degree(); i >= 0; --i)
            vm = vm * a + mp::from_rat<f100>(BigRat(tw.qminus.coeff(i)));

        for (long y = 0; y <= R; ++y) {
            const f100 cand = vp * (f100(y) + a) / vm - a;
            const double cd = hz::mp::to_double(cand);
            if (cd < -0.5 || cd > static_cast<double>(R) + 0.5) continue;
            const long x = std::lround(cd);
            if (x < 0 || x > R || std::abs(cd - static_cast<double>(x)) > 1e-6) continue;
            const IntPoly cross = tw.qplus * IntPoly::linear(BigInt(y), 1) -
                                  tw.qminus * IntPoly::linear(BigInt(x), 1);
            // A vanishing cross polynomial is the factor-swap identity
            // (x+X) and (y+X) matching the twist factors themselves; it
            // holds for every alpha and disqualifies none.
            if (cross.is_zero()) continue;
            if (alpha.minpoly().divides(cross)) {
                rep.in_A2 = false;
                rep.witness = MembershipWitness{m, x, y};
                return rep;
            }
        }
    } while (next_index(m, M));
    return rep;
}

}  // namespace hz::alg
