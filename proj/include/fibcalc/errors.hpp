#pragma once

#include <stdexcept>
#include <string>

namespace fibcalc {

/// Root of the library's error hierarchy.  Every failure mode that a caller
/// can provoke with bad data has its own type below, so tests can assert on
/// the exact condition rather than on message text.
struct Error : std::logic_error {
  explicit Error(const std::string& what) : std::logic_error(what) {}
};

/// Category validation failures.  Each message names the offending object,
/// morphism, or triple.
struct MalformedCategory : Error {
  using Error::Error;
};
struct NonAssociative : MalformedCategory {
  using MalformedCategory::MalformedCategory;
};
struct MissingIdentity : MalformedCategory {
  using MalformedCategory::MalformedCategory;
};
struct DanglingEndpoint : MalformedCategory {
  using MalformedCategory::MalformedCategory;
};
struct MissingComposite : MalformedCategory {
  using MalformedCategory::MalformedCategory;
};

/// Lookup failures on otherwise valid data.
struct UnknownObject : Error {
  using Error::Error;
};
struct UnknownMorphism : Error {
  using Error::Error;
};

/// A functor or transformation table that breaks one of its laws.
struct NonFunctorial : Error {
  using Error::Error;
};

/// Fibrational preconditions.
struct NotAFibration : Error {
  using Error::Error;
};
struct NoLift : Error {
  using Error::Error;
};
struct NonUniqueFactorisation : Error {
  using Error::Error;
};

/// Two independent routes to the same classification disagreed.  Raised
/// instead of silently preferring one route.
struct InconsistentCriteria : Error {
  using Error::Error;
};
struct CriteriaDisagree : InconsistentCriteria {
  using InconsistentCriteria::InconsistentCriteria;
};

/// Adjoint search found two non-isomorphic initial candidates.  Impossible
/// for a valid category; kept as a defensive check on corrupted input.
struct AmbiguousInitial : Error {
  using Error::Error;
};

struct NotFibrewiseLeftAdjoint : Error {
  using Error::Error;
};

/// Size guards.  CapExceeded is for hard construction limits (grid sizes,
/// table sizes); SearchCapExceeded is for bounded searches that gave up.
struct CapExceeded : Error {
  using Error::Error;
};
struct SearchCapExceeded : Error {
  using Error::Error;
};

/// CLI-level failures.  UsageError maps to exit code 2, BadInput to 3.
struct UsageError : Error {
  using Error::Error;
};
struct BadInput : Error {
  using Error::Error;
};

}  // namespace fibcalc
