/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace helstrom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// linalg
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ImaginaryResidue : Error { using Error::Error; };
struct ComplexRoots : Error { using Error::Error; };
struct NegativeDiscriminant : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// states
struct InvalidSpec : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
struct RankZero : Error { using Error::Error; };
struct NotRank2 : Error { using Error::Error; };
struct NonOrthogonalColumns : Error { using Error::Error; };

// detection / closed forms
struct ShapeMismatch : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// cli
struct UsageError : Error { using Error::Error; };

}  // namespace helstrom
