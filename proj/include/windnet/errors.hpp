#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace windnet {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV row, config line, timestamp, ...).
class ParseError : public Error {
public:
    using Error::Error;
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

/// Timestamp does not fall on the declared sampling grid.
class GridError : public Error {
public:
    using Error::Error;
};

/// Two observations for the same (station, timestamp) slot.
class DuplicateError : public Error {
public:
    using Error::Error;
};

/// Inputs that cannot be combined (mixed sample intervals, misaligned grids).
class IncompatibleError : public Error {
public:
    using Error::Error;
};

/// A parameter value outside its documented range.
class ParamError : public Error {
public:
    using Error::Error;
};

/// Input too small for the requested operation.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Sequence lengths that must match do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Sample unusable for distribution fitting (degenerate, wrong domain).
class FitError : public Error {
public:
    using Error::Error;
};

/// Optimizer ran out of iterations; carries the best iterate found.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best, double value)
        : Error(what), best_point_(std::move(best)), best_value_(value) {}
    const std::vector<double>& best_point() const { return best_point_; }
    double best_value() const { return best_value_; }

private:
    std::vector<double> best_point_;
    double best_value_ = 0.0;
};

/// Sample point outside the support of a fitted density.
class SupportError : public Error {
public:
    using Error::Error;
};

/// Autocorrelation lag out of range.
class LagError : public Error {
public:
    using Error::Error;
};

/// Requested frequency/period band intersects no spectrum bin.
class BandError : public Error {
public:
    using Error::Error;
};

/// Degenerate (zero-variance) overlap in a lag correlation.
class ZeroVarianceError : public Error {
public:
    using Error::Error;
};

/// Run of missing values too long to interpolate.
class GapError : public Error {
public:
    using Error::Error;
};

/// Filesystem problem (unreadable input, unwritable output).
class IoError : public Error {
public:
    using Error::Error;
};

/// Bad configuration key or value.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace windnet
