#pragma once

#include <stdexcept>
#include <string>

namespace qac {

// Root of the library's error hierarchy.  Every condition the library can
// diagnose is thrown as a subclass so callers can catch either the broad
// category or the precise failure.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define QAC_DEFINE_ERROR(NAME)                                                 \
    class NAME : public Error {                                                \
    public:                                                                    \
        explicit NAME(const std::string& msg) : Error(std::string(#NAME) + ": " + msg) {} \
    };

// Arithmetic / backend plumbing.
QAC_DEFINE_ERROR(DivisionByZero)
QAC_DEFINE_ERROR(BackendMismatch)
QAC_DEFINE_ERROR(ConfigError)

// q-kernel evaluation.
QAC_DEFINE_ERROR(PoleAtNegativeIndex)
QAC_DEFINE_ERROR(ExactModeUnsupported)
QAC_DEFINE_ERROR(GuardExceeded)
QAC_DEFINE_ERROR(NonConvergent)
QAC_DEFINE_ERROR(PoleInDenominator)

// Truncated series ring.
QAC_DEFINE_ERROR(NonUnit)
QAC_DEFINE_ERROR(UnknownVariable)
QAC_DEFINE_ERROR(OutOfOrder)

// Polynomial families and operator calculus.
QAC_DEFINE_ERROR(ParameterConstraint)
QAC_DEFINE_ERROR(EvaluationAtZero)
QAC_DEFINE_ERROR(SingularEvaluation)
QAC_DEFINE_ERROR(NotDivisible)
QAC_DEFINE_ERROR(ConvergenceDomain)

// Identity harness and CLI.
QAC_DEFINE_ERROR(SamplingExhausted)
QAC_DEFINE_ERROR(MissingParameter)
QAC_DEFINE_ERROR(ParseError)

#undef QAC_DEFINE_ERROR

} // namespace qac
