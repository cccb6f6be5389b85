#ifndef JETFIT_ERRORS_HPP
#define JETFIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jetfit {

/// Base class for all recoverable toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The weighted design matrix has effective rank below the coefficient count.
struct RankDeficientError : Error {
    using Error::Error;
};

/// Patch covariance has rank < 2 (collinear or coincident points).
struct DegeneratePatchError : Error {
    using Error::Error;
};

/// rough + delta vanished; no direction left to normalize.
struct DegenerateSumError : Error {
    using Error::Error;
};

/// Rejection sampling exhausted its attempt budget.
struct SamplerError : Error {
    using Error::Error;
};

/// File could not be read, written, or parsed.
struct IoError : Error {
    IoError(const std::string& msg, long line = 0) : Error(msg), line_no(line) {}
    long line_no;  // 1-based; 0 when not line-specific
};

}  // namespace jetfit

#endif
