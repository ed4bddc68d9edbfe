#include "hz/poly.hpp"

#include <algorithm>
#include <sstream>

#include "hz/errors.hpp"

namespace hz::alg {

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(BigInt c) { return IntPoly(std::vector<BigInt>{std::move(c)}); }

IntPoly IntPoly::linear(BigInt c0, BigInt c1) {
    return IntPoly(std::vector<BigInt>{std::move(c0), std::move(c1)});
}

BigInt IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

const BigInt& IntPoly::leading() const {
    if (c_.empty()) throw DomainError("IntPoly: zero polynomial has no leading coefficient");
    return c_.back();
}

BigInt IntPoly::height() const {
    BigInt h = 0;
    for (const BigInt& c : c_) h = std::max(h, BigInt(abs(c)));
    return h;
}

BigInt IntPoly::content() const {
    BigInt g = 0;
    for (const BigInt& c : c_) g = gcd(g, c);
    return g;
}

IntPoly IntPoly::primitive() const {
    if (c_.empty()) return {};
    BigInt g = content();
    if (c_.back() < 0) g = -g;
    std::vector<BigInt> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
    return IntPoly(std::move(out));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * BigInt(i);
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> out(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
    std::vector<BigInt> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = -c_[i];
    return IntPoly(std::move(out));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<BigInt> out(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(out));
}

BigRat IntPoly::eval(const BigRat& x) const {
    BigRat r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + BigRat(c_[i]);
    return r;
}

int IntPoly::sign_at(const BigRat& x) const {
    const BigRat v = eval(x);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

void IntPoly::eval_interval(const BigRat& lo, const BigRat& hi, BigRat& out_lo,
                            BigRat& out_hi) const {
    if (lo > hi) throw DomainError("IntPoly::eval_interval: lo > hi");
    BigRat rlo = 0, rhi = 0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const BigRat a = rlo * lo, b = rlo * hi, c = rhi * lo, d = rhi * hi;
        rlo = std::min(std::min(a, b), std::min(c, d)) + BigRat(c_[i]);
        rhi = std::max(std::max(a, b), std::max(c, d)) + BigRat(c_[i]);
    }
    out_lo = rlo;
    out_hi = rhi;
}

namespace {

using RatPoly = std::vector<BigRat>;  // ascending powers, trimmed

void rat_trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPoly& f) {
    RatPoly out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = BigRat(f.coeffs()[i]);
    return out;
}

// Remainder of a by b over Q.
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size()) {
        const BigRat q = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        rat_trim(a);
        if (a.empty()) break;
    }
    return a;
}

int rat_sign_at(const RatPoly& p, const BigRat& x) {
    BigRat r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

int sign_variations(const std::vector<RatPoly>& chain, const BigRat& x) {
    int var = 0, prev = 0;
    for (const RatPoly& p : chain) {
        const int s = rat_sign_at(p, x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace

bool IntPoly::divides(const IntPoly& other) const {
    if (c_.empty()) return other.c_.empty();
    if (other.c_.empty()) return true;
    if (other.c_.size() < c_.size()) return false;
    return rat_rem(to_rat(other), to_rat(*this)).empty();
}

std::string IntPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    return os.str();
}

int sturm_count(const IntPoly& f, const BigRat& a, const BigRat& b) {
    if (f.degree() < 1) throw DomainError("sturm_count: polynomial must be non-constant");
    if (!(a < b)) throw DomainError("sturm_count: need a < b");
    if (f.sign_at(a) == 0 || f.sign_at(b) == 0)
        throw DomainError("sturm_count: endpoints must not be roots");

    std::vector<RatPoly> chain;
    chain.push_back(to_rat(f));
    chain.push_back(to_rat(f.derivative()));
    while (chain.back().size() > 1) {
        RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) throw DomainError("sturm_count: polynomial is not squarefree");
        for (BigRat& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return sign_variations(chain, a) - sign_variations(chain, b);
}

namespace {

// Dense polynomials over F_p, p small; coefficients in [0, p).
using ModPoly = std::vector<long>;

void mod_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly mod_reduce(const IntPoly& f, long p) {
    ModPoly out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<long>(((f.coeffs()[i] % p) + p) % p);
    mod_trim(out);
    return out;
}

long mod_inv(long a, long p) {
    long r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& b, long p) {
    const long inv = mod_inv(b.back(), p);
    while (a.size() >= b.size()) {
        const long q = a.back() * inv % p;
        const std::size_t shift = a.size() - b.size();
        if (q)
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = ((a[shift + i] - q * b[i]) % p + p) % p;
        a.pop_back();
        mod_trim(a);
        if (a.empty()) break;
    }
    return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& f, long p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    mod_trim(out);
    return out.size() >= f.size() ? mod_rem(std::move(out), f, p) : out;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, long p) {
    while (!b.empty()) {
        ModPoly r = mod_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const long inv = mod_inv(a.back(), p);
        for (long& c : a) c = c * inv % p;
    }
    return a;
}

ModPoly mod_deriv(const ModPoly& f, long p) {
    if (f.size() <= 1) return {};
    ModPoly out(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = static_cast<long>(i) % p * f[i] % p;
    mod_trim(out);
    return out;
}

// x^(p^e) mod f by e rounds of p-th powering.
ModPoly mod_frobenius(const ModPoly& f, long p, int e) {
    ModPoly x = {0, 1};
    if (f.size() <= 2) return mod_rem(std::move(x), f, p);
    for (int round = 0; round < e; ++round) {
        ModPoly base = x, acc = {1};
        long exp = p;
        while (exp) {
            if (exp & 1) acc = mod_mulmod(acc, base, f, p);
            base = mod_mulmod(base, base, f, p);
            exp >>= 1;
        }
        x = std::move(acc);
    }
    return x;
}

bool irreducible_mod_p(const IntPoly& poly, long p) {
    ModPoly f = mod_reduce(poly, p);
    if (static_cast<int>(f.size()) != poly.degree() + 1) return false;  // degree dropped mod p
    const int n = static_cast<int>(f.size()) - 1;
    if (n == 1) return true;
    if (mod_gcd(f, mod_deriv(f, p), p).size() != 1) return false;  // not squarefree mod p

    // f irreducible over F_p iff x^(p^n) = x mod f and, for every prime
    // divisor q of n, gcd(x^(p^(n/q)) - x, f) = 1.
    const ModPoly xn = mod_frobenius(f, p, n);
    if (!(xn.size() == 2 && xn[0] == 0 && xn[1] == 1)) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool prime = true;
        for (int r = 2; r * r <= q; ++r)
            if (q % r == 0) prime = false;
        if (!prime) continue;
        ModPoly xe = mod_frobenius(f, p, n / q);
        xe.resize(std::max<std::size_t>(xe.size(), 2), 0);
        xe[1] = ((xe[1] - 1) % p + p) % p;
        mod_trim(xe);
        if (mod_gcd(f, xe, p).size() != 1) return false;
    }
    return true;
}

}  // namespace

int irreducibility_prime(const IntPoly& f) {
    if (f.degree() < 1) throw DomainError("irreducibility_prime: polynomial must be non-constant");
    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (long p : primes) {
        if (f.leading() % p == 0) continue;
        if (irreducible_mod_p(f, p)) return static_cast<int>(p);
    }
    return 0;
}

}  // namespace hz::alg
