#pragma once

#include <stdexcept>
#include <string>

namespace hz {

// All library errors derive from Error so callers can distinguish
// "invalid request / failed computation" (exit code 1 territory) from
// ordinary unsatisfied-but-valid outcomes, which are reported in-band.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violations on argument domains (alpha range, k range, ...).
struct DomainError : Error {
    using Error::Error;
};

// Evaluation requested inside the pole guard |s-1| < 1e-12.
struct PoleError : Error {
    using Error::Error;
};

// Target absolute error is not achievable at the configured working
// precision, or the tail bound stopped improving before reaching it.
struct PrecisionError : Error {
    using Error::Error;
};

// sigma lies outside the admissible strip for the requested cutoff.
struct StripError : Error {
    using Error::Error;
};

// A configured enumeration/size cap would be exceeded (family height
// enumeration, Fourier index, exact membership check ranges, ...).
struct CapError : Error {
    using Error::Error;
};

// An internal certificate that is guaranteed by construction failed to
// verify: this always indicates a bug, never an unlucky input.
struct CertificateError : Error {
    using Error::Error;
};

// Iterative solver hit its iteration budget before reaching tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Root bracketing failed (delta equation).
struct BracketError : Error {
    using Error::Error;
};

// Quadrature self-consistency check failed (node doubling moved the
// result by more than the contract allows).
struct QuadratureError : Error {
    using Error::Error;
};

}  // namespace hz
