#pragma once

#include <stdexcept>
#include <string>

namespace modeq {

// Base class for every structured failure; what() names the violated
// invariant so the CLI can surface it verbatim.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MODEQ_ERROR_TYPE(Name)                                               \
    class Name : public Error {                                             \
    public:                                                                  \
        explicit Name(const std::string& msg)                                \
            : Error(std::string(#Name) + ": " + msg) {}                      \
    };

// series-core
MODEQ_ERROR_TYPE(ZeroLeadingCoefficient)
MODEQ_ERROR_TYPE(PrecisionExceeded)

// recognizer
MODEQ_ERROR_TYPE(NonIntegerCoefficient)
MODEQ_ERROR_TYPE(ResidualNotPositiveOrder)
MODEQ_ERROR_TYPE(UnsupportedDenominator)
MODEQ_ERROR_TYPE(NoIntegralTwist)

// newton-symm
MODEQ_ERROR_TYPE(NonIntegralCoefficient)
MODEQ_ERROR_TYPE(InconsistentScaling)

// kiepert / double-eta
MODEQ_ERROR_TYPE(UnsupportedPrime)
MODEQ_ERROR_TYPE(UnsupportedPair)
MODEQ_ERROR_TYPE(InvariantViolation)
MODEQ_ERROR_TYPE(PrefactorNotRational)
MODEQ_ERROR_TYPE(PropertyCheckFailed)

// crt-engine
MODEQ_ERROR_TYPE(InadmissiblePrime)
MODEQ_ERROR_TYPE(NotConverged)

// numeric-verify
MODEQ_ERROR_TYPE(NoVanishingSign)

#undef MODEQ_ERROR_TYPE

} // namespace modeq
