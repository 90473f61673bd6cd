#ifndef DEBRISK_ERRORS_HPP
#define DEBRISK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace debrisk {

// Base class for all library errors. CLI maps UsageError to exit 1 and
// everything else derived from Error to exit 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A command-line invocation problem: missing flag, malformed flag value.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error("usage error: " + msg) {}
};

// A value lies outside its documented range. Carries the field name.
class RangeError : public Error {
public:
    RangeError(const std::string& field, const std::string& msg)
        : Error("range error: " + field + ": " + msg), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

class LengthMismatchError : public Error {
public:
    explicit LengthMismatchError(const std::string& msg)
        : Error("length mismatch: " + msg) {}
};

class DegenerateTargetError : public Error {
public:
    explicit DegenerateTargetError(const std::string& msg)
        : Error("degenerate target: " + msg) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg)
        : Error("convergence failure: " + msg) {}
};

class DivergenceError : public Error {
public:
    explicit DivergenceError(const std::string& msg)
        : Error("divergence: " + msg) {}
};

// The ballistic integrator ran out of its step budget before ground impact.
class NoImpactError : public Error {
public:
    explicit NoImpactError(const std::string& msg) : Error("no impact: " + msg) {}
};

class EmptyGridError : public Error {
public:
    explicit EmptyGridError(const std::string& msg) : Error("empty grid: " + msg) {}
};

class MissingGdpError : public Error {
public:
    explicit MissingGdpError(const std::string& admin_id)
        : Error("missing GDP record for admin id: " + admin_id), admin_id_(admin_id) {}
    const std::string& admin_id() const { return admin_id_; }

private:
    std::string admin_id_;
};

class TooFewRowsError : public Error {
public:
    explicit TooFewRowsError(const std::string& msg) : Error("too few rows: " + msg) {}
};

// Malformed input file (CSV, config, model JSON).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

} // namespace debrisk

#endif
