#include "ulpa/error.hpp"

namespace ulpa {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyRange: return "EmptyRange";
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::UnknownEdge: return "UnknownEdge";
        case ErrorKind::DuplicateLabel: return "DuplicateLabel";
        case ErrorKind::InvalidPath: return "InvalidPath";
        case ErrorKind::InvalidCylinder: return "InvalidCylinder";
        case ErrorKind::InadmissibleWord: return "InadmissibleWord";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::SetNotInLattice: return "SetNotInLattice";
        case ErrorKind::ZeroElement: return "ZeroElement";
        case ErrorKind::RingHasZeroDivisors: return "RingHasZeroDivisors";
        case ErrorKind::InvalidSystem: return "InvalidSystem";
        case ErrorKind::B2BViolation: return "B2BViolation";
        case ErrorKind::InvalidScalar: return "InvalidScalar";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(int line, int column, std::string expected, const std::string& detail)
    : Error(ErrorKind::ParseError,
            std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
                (detail.empty() ? std::string{} : " (" + detail + ")")),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace ulpa
