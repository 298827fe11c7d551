#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idem {

enum class ErrorKind {
    RingMismatch,
    DivisionByZero,
    UnsupportedRing,
    InvalidArgument,
    DimensionMismatch,
    SingularMatrix,
    ConstraintViolated,
    NotComplementary,
    NotComparable,
    NotIdempotent,
    BudgetExceeded,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed scalar or matrix text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// The message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

} // namespace idem
