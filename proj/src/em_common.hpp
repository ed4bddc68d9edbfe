#pragma once

// Shared Euler-Maclaurin tables: rising-factorial coefficient polynomials
// (s)_{2j-1} for the Bernoulli corrections B_2..B_10, and the binomials
// used by the Leibniz expansions.  Used by both the tiered evaluator and
// the double-precision scan engine.

#include <array>
#include <vector>

namespace hz::em {

inline constexpr int BERN_PAIRS = 5;

// Integer coefficients of x (x+1) ... (x+len-1), ascending powers.
inline std::vector<long long> pochhammer_coeffs(int len) {
    std::vector<long long> c{0, 1};
    for (int r = 1; r < len; ++r) {
        std::vector<long long> nxt(c.size() + 1, 0);
        for (std::size_t q = 0; q < c.size(); ++q) {
            nxt[q] += c[q] * r;
            nxt[q + 1] += c[q];
        }
        c = std::move(nxt);
    }
    return c;
}

inline const std::array<std::vector<long long>, BERN_PAIRS + 1>& poch_table() {
    static const auto table = [] {
        std::array<std::vector<long long>, BERN_PAIRS + 1> t{};
        for (int j = 1; j <= BERN_PAIRS; ++j) t[j] = pochhammer_coeffs(2 * j - 1);
        return t;
    }();
    return table;
}

inline double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// B_{2j} / (2j)! for j = 1..5.
inline constexpr std::array<double, BERN_PAIRS + 1> BERN_OVER_FACT = {
    0.0, 1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600, 1.0 / 47900160};

}  // namespace hz::em
