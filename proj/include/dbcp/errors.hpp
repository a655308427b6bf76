#pragma once

#include <stdexcept>
#include <string>

namespace dbcp {

// Base for all library failures. `kind` steers the CLI exit code:
// bad_input -> 4, everything else -> 3 (numerical failure).
class Error : public std::runtime_error {
public:
  enum class Kind { bad_input, numerical };
  Error(Kind k, const std::string& stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), kind_(k), stage_(stage) {}
  Kind kind() const { return kind_; }
  const std::string& stage() const { return stage_; }

private:
  Kind kind_;
  std::string stage_;
};

struct BadInput : Error {
  BadInput(const std::string& stage, const std::string& what)
      : Error(Kind::bad_input, stage, what) {}
};

struct NumericalError : Error {
  NumericalError(const std::string& stage, const std::string& what)
      : Error(Kind::numerical, stage, what) {}
};

struct InvalidInterval : BadInput {
  explicit InvalidInterval(const std::string& what) : BadInput("interval", what) {}
};
struct DivByZeroInterval : NumericalError {
  explicit DivByZeroInterval(const std::string& what) : NumericalError("interval", what) {}
};
struct DimError : BadInput {
  explicit DimError(const std::string& what) : BadInput("linalg", what) {}
};
struct NotEvenError : NumericalError {
  explicit NotEvenError(const std::string& what) : NumericalError("spectral", what) {}
};
struct NoConvergence : NumericalError {
  explicit NoConvergence(const std::string& stage, const std::string& what)
      : NumericalError(stage, what) {}
};
struct SingularJacobian : NumericalError {
  explicit SingularJacobian(const std::string& stage, const std::string& what)
      : NumericalError(stage, what) {}
};
struct NearSingularBlock : NumericalError {
  explicit NearSingularBlock(const std::string& what) : NumericalError("shape", what) {}
};
struct SingularExtendedJacobian : NumericalError {
  explicit SingularExtendedJacobian(const std::string& what) : NumericalError("extended", what) {}
};
struct DefectNotContractive : NumericalError {
  explicit DefectNotContractive(const std::string& what) : NumericalError("inverse", what) {}
};
struct Infeasible : NumericalError {
  explicit Infeasible(const std::string& what) : NumericalError("box", what) {}
};

}  // namespace dbcp
