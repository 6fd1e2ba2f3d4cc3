#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace bbpg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, invalid parameter ranges.
class InputError : public Error {
public:
    using Error::Error;
};

/// A smooth or nonsmooth part returned a nonfinite value.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, std::ptrdiff_t objective)
        : Error(what), objective_(objective) {}

    /// Index of the offending objective, or -1 when not attributable.
    std::ptrdiff_t objective() const noexcept { return objective_; }

private:
    std::ptrdiff_t objective_;
};

class RegistryError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Value of an extended-real valued function. Indicator functions are
/// +infinity outside their set; that case is carried by an explicit flag.
class ExtendedReal {
public:
    static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
    static ExtendedReal infinity() { return ExtendedReal(0.0, true); }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_finite() const noexcept { return !infinite_; }

    /// Throws InputError if the value is +infinity.
    double value() const {
        if (infinite_) {
            throw InputError("ExtendedReal: value() on +infinity");
        }
        return value_;
    }

    ExtendedReal operator+(const ExtendedReal& o) const {
        if (infinite_ || o.infinite_) return infinity();
        return finite(value_ + o.value_);
    }

private:
    ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InputError(msg);
}

}  // namespace bbpg
