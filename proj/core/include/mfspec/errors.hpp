#pragma once

#include <stdexcept>
#include <string>

namespace mfspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gram matrix singular beyond the rank tolerance.
class RankDeficient : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Instrument columns coincide or are collinear (m = 1, or Gram condition above 1e12).
class DegenerateInstruments : public Error {
public:
    using Error::Error;
};

class BandwidthTooLarge : public Error {
public:
    using Error::Error;
};

/// pi0' Phi pi0 (or the population moment matrix) is not invertible.
class DegenerateNull : public Error {
public:
    using Error::Error;
};

/// Malformed CSV input. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A low-frequency period with a number of high-frequency rows different from m.
class RaggedPeriod : public Error {
public:
    RaggedPeriod(const std::string& what, std::string period)
        : Error(what), period_(std::move(period)) {}
    const std::string& period() const noexcept { return period_; }

private:
    std::string period_;
};

class MissingValue : public Error {
public:
    using Error::Error;
};

}  // namespace mfspec
