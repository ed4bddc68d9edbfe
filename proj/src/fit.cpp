#include "hz/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hz/effective.hpp"
#include "hz/errors.hpp"

namespace hz::fit {

namespace {

constexpr int kNMax = 10;
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> unit_phase(double theta) {
    return {std::cos(kTwoPi * theta), std::sin(kTwoPi * theta)};
}

double reduce_mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    return r;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// v_n = ((-log(n+alpha))^k (n+alpha)^(-sigma))_{k=0..N}
std::vector<double> coeff_vector(long n, double alpha_val, double sigma, int N) {
    const double x = static_cast<double>(n) + alpha_val;
    const double lg = std::log(x);
    const double base = std::pow(x, -sigma);
    std::vector<double> v(N + 1);
    double p = 1.0;
    for (int k = 0; k <= N; ++k) {
        v[k] = p * base;
        p *= -lg;
    }
    return v;
}

struct CoeffTable {
    long M = 0;
    int N = 0;
    std::vector<double> v;  // row-major, row i holds v_{R+i}[0..N]
    std::vector<double> norm2;
    double total_norm2 = 0;

    CoeffTable(long R, long Q, double alpha_val, double sigma, int N_) : M(Q - R), N(N_) {
        v.resize(M * (N + 1));
        norm2.resize(M);
        for (long i = 0; i < M; ++i) {
            const std::vector<double> row = coeff_vector(R + i, alpha_val, sigma, N);
            double s = 0;
            for (int k = 0; k <= N; ++k) {
                v[i * (N + 1) + k] = row[k];
                s += row[k] * row[k];
            }
            norm2[i] = s;
            total_norm2 += s;
        }
    }

    const double* row(long i) const { return v.data() + i * (N + 1); }
};

void check_window(long R, long Q, const char* who) {
    if (R < 1) throw DomainError(std::string(who) + ": R must be >= 1");
    if (Q <= R) throw DomainError(std::string(who) + ": Q must exceed R");
}

}  // namespace

void PhaseVector::normalize() {
    for (double& t : theta) t = reduce_mod1(t);
}

void TwistedPolynomial::validate() const {
    if (Q < 1) throw DomainError("TwistedPolynomial: Q must be >= 1");
    if (static_cast<long>(theta.theta.size()) != Q)
        throw DomainError("TwistedPolynomial: theta length must equal Q");
    for (double t : theta.theta)
        if (!(t >= 0.0) || t >= 1.0)
            throw DomainError("TwistedPolynomial: phases must be reduced to [0,1)");
}

void TargetSpec::validate() const {
    if (N < 0) throw DomainError("TargetSpec: N must be >= 0");
    if (N > kNMax) throw DomainError("TargetSpec: N exceeds the supported derivative order");
    if (static_cast<long>(a.size()) != N + 1)
        throw DomainError("TargetSpec: need exactly N+1 targets");
    if (!(sigma > 0.5) || sigma > 1.0) throw DomainError("TargetSpec: sigma in (1/2, 1]");
    if (!(epsilon > 0)) throw DomainError("TargetSpec: epsilon must be positive");
    if (!(A_floor > 0) || A_floor > 1.0) throw DomainError("TargetSpec: A_floor in (0, 1]");
}

std::complex<double> eval_twisted(const TwistedPolynomial& poly, const ComplexPoint& s, int k) {
    poly.validate();
    if (k < 0 || k > kNMax) throw DomainError("eval_twisted: k out of range");
    if (!s.finite()) throw DomainError("eval_twisted: s must be finite");
    const double al = poly.alpha.approx();
    std::complex<double> sum{0.0, 0.0};
    for (long n = 0; n < poly.Q; ++n) {
        const double x = static_cast<double>(n) + al;
        const double lg = std::log(x);
        double p = 1.0;
        for (int j = 0; j < k; ++j) p *= -lg;
        const std::complex<double> term =
            p * std::exp(-s.sigma * lg) * std::complex<double>{std::cos(-s.t * lg), std::sin(-s.t * lg)};
        sum += unit_phase(poly.theta.theta[n]) * term;
    }
    return sum;
}

std::vector<std::complex<double>> tail_offsets(const TargetSpec& targets, long R,
                                               const Alpha& alpha) {
    targets.validate();
    if (R < 1) throw DomainError("tail_offsets: R must be >= 1");
    const double al = alpha.approx();
    std::vector<std::complex<double>> A(targets.a);
    for (long n = 0; n < R; ++n) {
        const std::vector<double> v = coeff_vector(n, al, targets.sigma, targets.N);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k <= targets.N; ++k) A[k] -= sign * v[k];
    }
    return A;
}

InterpolationCertificate feasibility_certificate(long R, long Q, double sigma, int N,
                                                 const TargetSpec& targets) {
    check_window(R, Q, "feasibility_certificate");
    targets.validate();
    if (N < 1) throw DomainError("feasibility_certificate: N must be >= 1");
    if (sigma != targets.sigma || N != targets.N)
        throw DomainError("feasibility_certificate: sigma/N disagree with targets");
    const double al = targets.A_floor;
    if (!(static_cast<double>(Q) > static_cast<double>(R) + al))
        throw DomainError("feasibility_certificate: Q must exceed R + A_floor");

    InterpolationCertificate cert;
    const double logQ = std::log(static_cast<double>(Q));
    const double logRa = std::log(static_cast<double>(R) + al);
    const double span = logQ - logRa;
    cert.x_nodes.resize(N + 1);
    for (int k = 0; k <= N; ++k)
        cert.x_nodes[k] = logRa + (static_cast<double>(k) / N) * span;
    cert.S = span / (4.0 * N * N * N);
    cert.E_value = (Q > R + 1) ? eff::capital_E(R, Q, sigma, N) : 0.0;

    const double ratio = std::log(static_cast<double>(Q) / (static_cast<double>(R) + 1.0)) /
                         (2.0 * N * logQ);
    const double ratio_pow = std::pow(ratio, N);
    cert.systine_rhs.resize(N + 1);
    for (int k = 0; k <= N; ++k)
        cert.systine_rhs[k] =
            cert.E_value * ratio_pow * factorial(k) * factorial(N - k) * std::pow(logQ, k);

    const std::vector<std::complex<double>> A = tail_offsets(targets, R, Alpha(al));
    cert.offsets_abs.resize(N + 1);
    cert.passes = true;
    for (int k = 0; k <= N; ++k) {
        cert.offsets_abs[k] = std::abs(A[k]);
        if (!(cert.offsets_abs[k] <= cert.systine_rhs[k])) cert.passes = false;
    }

    // Interpolation inequality demonstrated at the offset coefficients
    // (all-ones when every offset vanishes).
    std::vector<std::complex<double>> ell(A);
    if (std::all_of(ell.begin(), ell.end(),
                    [](const std::complex<double>& c) { return std::abs(c) == 0.0; }))
        std::fill(ell.begin(), ell.end(), std::complex<double>{1.0, 0.0});
    const double markov = std::pow(span / (2.0 * N * logQ), N) / (N + 1.0);
    double moment = 0;
    for (int j = 0; j <= N; ++j)
        moment += factorial(j) * std::abs(ell[j]) * factorial(N - j) * std::pow(logQ, j);
    cert.good_lhs = markov * moment;
    cert.good_rhs = 0;
    for (int k = 0; k <= N; ++k) {
        std::complex<double> p{0.0, 0.0};
        double xp = 1.0;
        for (int j = 0; j <= N; ++j) {
            p += (j % 2 == 0 ? 1.0 : -1.0) * ell[j] * xp;
            xp *= cert.x_nodes[k];
        }
        cert.good_rhs += std::abs(p);
    }
    return cert;
}

PolydiscSolution solve_polydisc(const std::vector<std::complex<double>>& offsets, long R, long Q,
                                double sigma, int N, const Alpha& alpha, double tol,
                                long max_iter, bool best_effort) {
    check_window(R, Q, "solve_polydisc");
    if (N < 0 || N > kNMax) throw DomainError("solve_polydisc: N out of range");
    if (static_cast<long>(offsets.size()) != N + 1)
        throw DomainError("solve_polydisc: need N+1 offsets");
    if (!(sigma > 0.5) || sigma > 1.0) throw DomainError("solve_polydisc: sigma in (1/2, 1]");
    if (!(tol > 0)) throw DomainError("solve_polydisc: tol must be positive");
    if (max_iter < 1) throw DomainError("solve_polydisc: max_iter must be >= 1");

    const CoeffTable tab(R, Q, alpha.approx(), sigma, N);
    const long M = Q - R;
    const int K = N + 1;
    const double step = 1.0 / tab.total_norm2;  // 1/L on the half-gradient

    std::vector<double> off_re(K), off_im(K);
    for (int k = 0; k < K; ++k) {
        off_re[k] = offsets[k].real();
        off_im[k] = offsets[k].imag();
    }

    // residual r = V z - A at the point held in (zre, zim)
    std::vector<double> r_re(K), r_im(K);
    const auto objective = [&](const std::vector<double>& zre, const std::vector<double>& zim) {
        for (int k = 0; k < K; ++k) {
            r_re[k] = -off_re[k];
            r_im[k] = -off_im[k];
        }
        for (long i = 0; i < M; ++i) {
            const double* vi = tab.row(i);
            for (int k = 0; k < K; ++k) {
                r_re[k] += zre[i] * vi[k];
                r_im[k] += zim[i] * vi[k];
            }
        }
        double obj = 0;
        for (int k = 0; k < K; ++k) obj += r_re[k] * r_re[k] + r_im[k] * r_im[k];
        return obj;
    };

    // Minimum-norm least-squares warm start: z = V^T u with G u = A,
    // G = V V^T the (N+1)x(N+1) moment Gram matrix.
    std::vector<double> x_re(M, 0.0), x_im(M, 0.0);
    {
        std::vector<std::vector<double>> G(K, std::vector<double>(K, 0.0));
        for (long i = 0; i < M; ++i) {
            const double* vi = tab.row(i);
            for (int k = 0; k < K; ++k)
                for (int l = 0; l < K; ++l) G[k][l] += vi[k] * vi[l];
        }
        std::vector<std::complex<double>> u(offsets);
        bool singular = false;
        for (int c = 0; c < K && !singular; ++c) {
            int piv = c;
            for (int r = c + 1; r < K; ++r)
                if (std::fabs(G[r][c]) > std::fabs(G[piv][c])) piv = r;
            if (std::fabs(G[piv][c]) < 1e-280) {
                singular = true;
                break;
            }
            std::swap(G[c], G[piv]);
            std::swap(u[c], u[piv]);
            for (int r = c + 1; r < K; ++r) {
                const double f = G[r][c] / G[c][c];
                for (int l = c; l < K; ++l) G[r][l] -= f * G[c][l];
                u[r] -= f * u[c];
            }
        }
        if (!singular) {
            for (int c = K - 1; c >= 0; --c) {
                for (int l = c + 1; l < K; ++l) u[c] -= G[c][l] * u[l];
                u[c] /= G[c][c];
            }
            for (long i = 0; i < M; ++i) {
                const double* vi = tab.row(i);
                std::complex<double> zi{0.0, 0.0};
                for (int k = 0; k < K; ++k) zi += u[k] * vi[k];
                const double m = std::abs(zi);
                if (m > 1.0) zi /= m;
                x_re[i] = zi.real();
                x_im[i] = zi.imag();
            }
        }
    }

    // Monotone accelerated projected gradient: candidate = radially clipped
    // step of size 1/L from the extrapolated point, iterate keeps the best
    // objective seen (trace non-increasing), momentum restarts on rejection.
    PolydiscSolution sol;
    std::vector<double> xp_re(x_re), xp_im(x_im), y_re(x_re), y_im(x_im);
    std::vector<double> u_re(M), u_im(M);
    double fx = objective(x_re, x_im);
    sol.trace.push_back(fx);
    bool converged = std::sqrt(fx) <= tol;
    double t_mom = 1.0;
    double last_marked = fx;
    long last_improve = 0;
    long iter = 0;
    while (!converged && iter < max_iter) {
        ++iter;
        objective(y_re, y_im);  // leaves the residual at y in r_re/r_im
        double fu = 0;
        std::vector<double> uacc_re(K, 0.0), uacc_im(K, 0.0);
        for (long i = 0; i < M; ++i) {
            const double* vi = tab.row(i);
            double g_re = 0, g_im = 0;
            for (int k = 0; k < K; ++k) {
                g_re += r_re[k] * vi[k];
                g_im += r_im[k] * vi[k];
            }
            double zr = y_re[i] - step * g_re;
            double zi = y_im[i] - step * g_im;
            const double m2 = zr * zr + zi * zi;
            if (m2 > 1.0) {
                const double inv = 1.0 / std::sqrt(m2);
                zr *= inv;
                zi *= inv;
            }
            u_re[i] = zr;
            u_im[i] = zi;
            for (int k = 0; k < K; ++k) {
                uacc_re[k] += zr * vi[k];
                uacc_im[k] += zi * vi[k];
            }
        }
        for (int k = 0; k < K; ++k) {
            const double dr = uacc_re[k] - off_re[k];
            const double di = uacc_im[k] - off_im[k];
            fu += dr * dr + di * di;
        }
        const bool accepted = std::isfinite(fu) && fu <= fx;
        if (accepted) {
            std::swap(xp_re, x_re);
            std::swap(xp_im, x_im);
            std::swap(x_re, u_re);
            std::swap(x_im, u_im);
            fx = fu;
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
            const double b = (t_mom - 1.0) / t_next;
            for (long i = 0; i < M; ++i) {
                y_re[i] = x_re[i] + b * (x_re[i] - xp_re[i]);
                y_im[i] = x_im[i] + b * (x_im[i] - xp_im[i]);
            }
            t_mom = t_next;
        } else {
            t_mom = 1.0;
            y_re = x_re;
            y_im = x_im;
        }
        sol.trace.push_back(fx);
        if (std::sqrt(fx) <= tol) {
            converged = true;
            break;
        }
        if (fx < last_marked * (1.0 - 1e-13)) {
            last_marked = fx;
            last_improve = iter;
        } else if (iter - last_improve > 1000) {
            break;  // numerical floor reached
        }
    }

    sol.z.resize(M);
    for (long i = 0; i < M; ++i) sol.z[i] = {x_re[i], x_im[i]};
    sol.iterations = iter;
    sol.residual = std::sqrt(fx);
    sol.best_effort = !converged;
    if (!converged && !best_effort) {
        std::ostringstream os;
        os << "solve_polydisc: no convergence after " << iter
           << " iterations, residual " << sol.residual;
        throw ConvergenceError(os.str());
    }
    return sol;
}

RoundedPhases round_phases(const PolydiscSolution& sol, long R, long Q, double sigma, int N,
                           const Alpha& alpha) {
    check_window(R, Q, "round_phases");
    if (N < 0 || N > kNMax) throw DomainError("round_phases: N out of range");
    const long M = Q - R;
    if (static_cast<long>(sol.z.size()) != M)
        throw DomainError("round_phases: solution length must equal Q - R");
    for (const std::complex<double>& zi : sol.z)
        if (std::abs(zi) > 1.0 + 1e-12)
            throw DomainError("round_phases: solution leaves the unit polydisc");

    const CoeffTable tab(R, Q, alpha.approx(), sigma, N);
    std::vector<long> order(M);
    std::iota(order.begin(), order.end(), 0L);
    std::stable_sort(order.begin(), order.end(),
                     [&](long a, long b) { return tab.norm2[a] > tab.norm2[b]; });

    RoundedPhases out;
    out.theta.assign(M, 0.0);
    std::vector<std::complex<double>> P(N + 1, {0.0, 0.0});
    for (long i : order) {
        // base = P + z_i v_i; the defect norm is
        // ||base||^2 - 2 Re(e(-theta) w) + ||v_i||^2 with w = <base, v_i>.
        const double* vi = tab.row(i);
        std::complex<double> w{0.0, 0.0};
        double base2 = 0;
        std::vector<std::complex<double>> base(N + 1);
        for (int k = 0; k <= N; ++k) {
            base[k] = P[k] + sol.z[i] * vi[k];
            base2 += std::norm(base[k]);
            w += base[k] * vi[k];
        }
        const auto defect = [&](double theta) {
            const std::complex<double> e = unit_phase(-theta);
            return base2 - 2.0 * (e * w).real() + tab.norm2[i];
        };
        int best_j = 0;
        double best_h = defect(0.0);
        for (int j = 1; j < 64; ++j) {
            const double h = defect(j / 64.0);
            if (h < best_h) {
                best_h = h;
                best_j = j;
            }
        }
        double lo = (best_j - 1.0) / 64.0;
        double hi = (best_j + 1.0) / 64.0;
        for (int it = 0; it < 72; ++it) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (defect(m1) <= defect(m2))
                hi = m2;
            else
                lo = m1;
        }
        const double mid = 0.5 * (lo + hi);
        const double theta = defect(mid) <= best_h ? reduce_mod1(mid) : best_j / 64.0;
        out.theta[i] = theta;
        const std::complex<double> e = unit_phase(theta);
        for (int k = 0; k <= N; ++k) P[k] = base[k] - e * vi[k];
    }

    out.certificate_lhs = 0;
    for (int k = 0; k <= N; ++k) out.certificate_lhs += std::norm(P[k]);
    out.certificate_rhs = 4.0 * tab.total_norm2;
    if (out.certificate_lhs > out.certificate_rhs)
        throw CertificateError("round_phases: rounding certificate violated");
    return out;
}

FitResult fit_targets(const TargetSpec& targets, const Alpha& alpha, long R, long Q) {
    targets.validate();
    check_window(R, Q, "fit_targets");
    const int N = targets.N;

    FitResult res;
    if (N >= 1)
        res.certificate = feasibility_certificate(R, Q, targets.sigma, N, targets);

    const std::vector<std::complex<double>> A = tail_offsets(targets, R, alpha);
    const double tol = std::min(1e-4, std::max(1e-8, targets.epsilon * 1e-3));
    res.solution = solve_polydisc(A, R, Q, targets.sigma, N, alpha, tol, 100000,
                                  !res.certificate.passes);
    res.rounding = round_phases(res.solution, R, Q, targets.sigma, N, alpha);

    res.theta0.theta.resize(Q);
    for (long n = 0; n < R; ++n) res.theta0.theta[n] = (n % 2 == 0) ? 0.0 : 0.5;
    for (long n = R; n < Q; ++n) res.theta0.theta[n] = res.rounding.theta[n - R];
    res.theta0.normalize();

    TwistedPolynomial poly{Q, res.theta0, alpha};
    res.achieved.resize(N + 1);
    for (int k = 0; k <= N; ++k)
        res.achieved[k] = std::abs(eval_twisted(poly, {targets.sigma, 0.0}, k) - targets.a[k]);
    return res;
}

double coeff_norm2(long n, double alpha_val, double sigma, int N) {
    if (n < 0) throw DomainError("coeff_norm2: n must be >= 0");
    if (N < 0 || N > kNMax) throw DomainError("coeff_norm2: N out of range");
    const std::vector<double> v = coeff_vector(n, alpha_val, sigma, N);
    double s = 0;
    for (double c : v) s += c * c;
    return s;
}

}  // namespace hz::fit
