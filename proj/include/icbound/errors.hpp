#pragma once

#include <stdexcept>
#include <string>

namespace icbound {

// Base class for all library errors. CLI maps these to exit code 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ICBOUND_ERROR_TYPE(Name)                                               \
    struct Name : Error {                                                      \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}     \
    };

ICBOUND_ERROR_TYPE(NonPrime)
ICBOUND_ERROR_TYPE(ReduciblePolynomial)
ICBOUND_ERROR_TYPE(DimensionMismatch)
ICBOUND_ERROR_TYPE(TooLarge)
ICBOUND_ERROR_TYPE(PreconditionViolated)
ICBOUND_ERROR_TYPE(FieldTooSmall)
ICBOUND_ERROR_TYPE(BudgetExceeded)
ICBOUND_ERROR_TYPE(NotCanonical)
ICBOUND_ERROR_TYPE(NotDecodable)
ICBOUND_ERROR_TYPE(Infeasible)
ICBOUND_ERROR_TYPE(Unbounded)
ICBOUND_ERROR_TYPE(NotADesign)
ICBOUND_ERROR_TYPE(NotPrimePower)
ICBOUND_ERROR_TYPE(Inapplicable)
ICBOUND_ERROR_TYPE(SchemeFailure)
ICBOUND_ERROR_TYPE(ParseError)

#undef ICBOUND_ERROR_TYPE

}  // namespace icbound
