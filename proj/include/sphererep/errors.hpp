#pragma once

#include <stdexcept>

namespace sphererep {

/// Base type for every recoverable library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction and queries
struct OutOfRange : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct EdgeNotInGraph : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct DegreeParity : Error { using Error::Error; };
struct RejectionLimit : Error { using Error::Error; };

// linear algebra
struct NoConvergence : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };

// representations and drawings
struct NotRegular : Error { using Error::Error; };
struct NotConnected : Error { using Error::Error; };
struct InsufficientDimension : Error { using Error::Error; };
struct DimensionTooSmall : Error { using Error::Error; };
struct WrongDimension : Error { using Error::Error; };
struct NotUnit : Error { using Error::Error; };

// solver and certificates
struct TrivialGraph : Error { using Error::Error; };
struct CertificateInvalid : Error { using Error::Error; };
struct GraphMismatch : Error { using Error::Error; };
struct TooClose : Error { using Error::Error; };
struct NoPairing : Error { using Error::Error; };
struct GirthTooSmall : Error { using Error::Error; };
struct StarViolated : Error { using Error::Error; };

// input handling
struct ParseError : Error { using Error::Error; };

}  // namespace sphererep
