#pragma once

#include <stdexcept>
#include <string>

namespace stiefelclust {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct RankDeficient : Error {
  using Error::Error;
};

struct BaseMismatch : Error {
  using Error::Error;
};

struct NotTangent : Error {
  using Error::Error;
};

struct InvalidLabeling : Error {
  using Error::Error;
};

struct InvalidCoherence : Error {
  using Error::Error;
};

struct NoGroundTruth : Error {
  using Error::Error;
};

struct EmptyTrace : Error {
  using Error::Error;
};

struct DegenerateDenominator : Error {
  using Error::Error;
};

/// Thrown when a bound's precondition makes its value meaningless
/// (e.g. the denominator exp(...) - 1 is not positive).
struct VacuousBound : Error {
  using Error::Error;
};

/// Sampler step produced a non-finite state.
struct DivergedStep : Error {
  explicit DivergedStep(const std::string& what, long iteration = -1)
      : Error(what), iteration(iteration) {}
  long iteration;
};

}  // namespace stiefelclust
