#ifndef ULPA_ERROR_HPP
#define ULPA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ulpa {

enum class ErrorKind {
    EmptyRange,
    UnknownVertex,
    UnknownEdge,
    DuplicateLabel,
    InvalidPath,
    InvalidCylinder,
    InadmissibleWord,
    NotClosed,
    SetNotInLattice,
    ZeroElement,
    RingHasZeroDivisors,
    InvalidSystem,
    B2BViolation,
    InvalidScalar,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every module. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, std::string expected, const std::string& detail = {});

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::string expected_;
};

}  // namespace ulpa

#endif  // ULPA_ERROR_HPP
