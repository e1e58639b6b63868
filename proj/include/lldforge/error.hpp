#ifndef LLDFORGE_ERROR_HPP
#define LLDFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lldforge {

enum class Errc {
    DivisionByZero,
    DescriptorMismatch,
    DimensionMismatch,
    PoleAtPoint,
    NotSquare,
    NotAlternating,
    NotInvertible,
    EmptyBasis,
    EnumerationTooLarge,
    SingularTransform,
    PatternViolation,
    PreconditionFailed,
    Undecided,
    IsotropicAxis,
    AxisInsideK2,
    NotAnIsometry,
    IncompatibleValues,
    DegeneratePlane,
    CharMismatch,
    NotScalarComposite,
    ReducibilityDetected,
    IsotropicNorm,
    CapExceeded,
    DegreeCapExceeded,
    AlphaInRange,
    CertificateMissing,
    NotStabilized,
    StrataCheckFailed,
    DichotomyViolated,
    IdentityViolated,
    NotAnEquivalence,
    NoWitnessFound,
    ParseError,
    UsageError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

} // namespace lldforge

#endif
