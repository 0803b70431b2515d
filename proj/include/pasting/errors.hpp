#pragma once

#include <stdexcept>
#include <string>

namespace pasting {

enum class ErrorKind {
    NotGraded,
    CyclicCovers,
    DuplicateEdge,
    TransitiveEdge,
    DimMismatch,
    UnknownIndex,
    HostMismatch,
    NotAMolecule,
    NoLayering,
    NotSpherical,
    BoundaryMismatch,
    NotAMap,
    SizeLimit,
    NotUnique,
    OrientationConflict,
    PreconditionFailed,
    IndexOutOfRange,
    Unsupported,
    QuotientInvalid,
    NotSubmolecule,
    NotAnAtom,
    Indeterminate,
    ParseError,
    ValidationError,
    Internal,
};

const char* kind_name(ErrorKind k);

// All library failures are reported through this exception.
// `locus` names the offending element, edge or argument when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string locus = {})
        : std::runtime_error(message), kind_(kind), locus_(std::move(locus)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& locus() const { return locus_; }

private:
    ErrorKind kind_;
    std::string locus_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message, std::string locus = {})
{
    throw Error(kind, message, std::move(locus));
}

// Internal consistency check; failures indicate a bug, not bad input.
inline void ensure(bool cond, const std::string& message)
{
    if (!cond) throw Error(ErrorKind::Internal, message);
}

}  // namespace pasting
