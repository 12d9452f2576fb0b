#pragma once

#include <stdexcept>
#include <string>

namespace bifurcata {

// Failure taxonomy shared by all modules.  Every type carries a plain
// message; callers that can recover catch the specific type.

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ToleranceNotMet : std::runtime_error {
  explicit ToleranceNotMet(const std::string& msg) : std::runtime_error(msg) {}
};

struct BracketError : std::runtime_error {
  explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoRootFound : std::runtime_error {
  explicit NoRootFound(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoSignChange : std::runtime_error {
  explicit NoSignChange(const std::string& msg) : std::runtime_error(msg) {}
};

struct MonotonicityViolation : std::runtime_error {
  explicit MonotonicityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct CorrectorDiverged : std::runtime_error {
  explicit CorrectorDiverged(const std::string& msg) : std::runtime_error(msg) {}
};

struct EnergyDrift : std::runtime_error {
  explicit EnergyDrift(const std::string& msg) : std::runtime_error(msg) {}
};

struct DiscretizationFailure : std::runtime_error {
  explicit DiscretizationFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct RankMismatch : std::runtime_error {
  explicit RankMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bifurcata
