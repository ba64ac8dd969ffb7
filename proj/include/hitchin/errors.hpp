#ifndef HITCHIN_ERRORS_HPP
#define HITCHIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hitchin {

struct UnsupportedType : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotARoot : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ClosureOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SampleOnHyperplane : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reasons a point of the Hitchin base fails the genericity (smooth cover,
// simple ramification, branch locus away from the divisor) requirements.
enum class GenericityKind { RepeatedRoot, RootAtDivisor, DegreeDrop };

struct GenericityViolation : std::runtime_error {
    GenericityKind kind;
    GenericityViolation(GenericityKind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

inline const char* to_string(GenericityKind k) {
    switch (k) {
        case GenericityKind::RepeatedRoot: return "RepeatedRoot";
        case GenericityKind::RootAtDivisor: return "RootAtDivisor";
        case GenericityKind::DegreeDrop: return "DegreeDrop";
    }
    return "?";
}

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DerivativeVanishes : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContourTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureStall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SymmetryFail : std::runtime_error {
    double residual;
    SymmetryFail(double r, const std::string& msg)
        : std::runtime_error(msg), residual(r) {}
};

struct PositivityFail : std::runtime_error {
    double min_eig;
    PositivityFail(double e, const std::string& msg)
        : std::runtime_error(msg), min_eig(e) {}
};

struct MatchingAmbiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace hitchin

#endif
