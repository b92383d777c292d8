#pragma once

#include <stdexcept>
#include <string>

namespace gk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAPermutation : Error { using Error::Error; };
struct OrderCapExceeded : Error { using Error::Error; };
struct ElementNotInGroup : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotAnAutomorphism : Error { using Error::Error; };
struct RelationViolation : Error { using Error::Error; };

struct RelationOutsideSpan : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };

struct ParameterCongruenceViolated : Error { using Error::Error; };
struct BadOrder : Error { using Error::Error; };
struct NoFifthRoot : Error { using Error::Error; };
struct BadCharacteristic : Error { using Error::Error; };
struct NoSuchScalar : Error { using Error::Error; };
struct BadModulus : Error { using Error::Error; };
struct NotACentralExtension : Error { using Error::Error; };
struct BadFieldSpec : Error { using Error::Error; };

struct NotAComplement : Error { using Error::Error; };
struct NotAFrobeniusComplementInG : Error { using Error::Error; };
struct TheoremViolation : Error { using Error::Error; };

struct NotSolvableGZ : Error { using Error::Error; };
struct NotNonsolvableGZ : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };

struct CohomologyCapExceeded : Error { using Error::Error; };
struct NotAPGroup : Error { using Error::Error; };

struct FieldNotInfinite : Error { using Error::Error; };

struct FormatError : Error { using Error::Error; };

}  // namespace gk
