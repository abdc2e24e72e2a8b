#pragma once

// Error taxonomy shared by the library and the command-line tool.
//
//   std::invalid_argument / std::domain_error  -- malformed input
//   HypothesisError                            -- input is well-formed but a
//                                                 mathematical hypothesis of
//                                                 the requested construction
//                                                 fails (wrong weight range,
//                                                 non-vanishing residue, ...)
//   ConvergenceError                           -- the computation ran but did
//                                                 not reach a usable answer
//                                                 (singular system, failed
//                                                 certification)

#include <stdexcept>
#include <string>

namespace bergman {

class HypothesisError : public std::runtime_error {
  public:
    explicit HypothesisError(const std::string& what)
        : std::runtime_error(what) {}
};

class ConvergenceError : public std::runtime_error {
  public:
    explicit ConvergenceError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace bergman
