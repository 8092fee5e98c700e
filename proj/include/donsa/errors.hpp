#pragma once

#include <stdexcept>
#include <string>

namespace donsa {

// Base class for every failure this library reports. Subtypes exist so that
// callers (and tests) can tell failure modes apart without string matching.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };

// Zero-distance link; caller must perturb co-located nodes.
struct DegenerateGeometry : Error { using Error::Error; };

struct NonSquare : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };

// No sources or no candidate vertices; the pipeline maps this to an
// all-unmatched result instead of surfacing the exception.
struct EmptyProblem : Error { using Error::Error; };

struct SearchSpaceTooLarge : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };
struct UnknownRf : Error { using Error::Error; };
struct UnknownAlgorithm : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace donsa
