#pragma once

#include <stdexcept>
#include <string>

namespace transit {

// Input or invariant violations (bad files, malformed instances, bad arguments).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Optimizer-level failures (infeasible model, time limit with no incumbent).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration harness refusals (instance beyond caps) and certification mismatches.
class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace transit
