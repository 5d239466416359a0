#pragma once

#include <stdexcept>
#include <string>

namespace rotecon {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation (negative age,
// nonpositive asymptote, age past the rotation, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A thinning tries to remove more volume than is standing.
class InfeasibleThinningError : public Error {
 public:
  InfeasibleThinningError(double age, double removed, double standing);

  double age() const { return age_; }
  double removed() const { return removed_; }
  double standing() const { return standing_; }

 private:
  double age_;
  double removed_;
  double standing_;
};

// A parameter value at which the requested formula degenerates
// (autocorrelation coefficient exactly 1, zero window length, ...).
class SingularParameterError : public Error {
 public:
  explicit SingularParameterError(const std::string& what) : Error(what) {}
};

// No break-even rotation exists within the searched horizon.
class NoBreakEvenError : public Error {
 public:
  explicit NoBreakEvenError(const std::string& what) : Error(what) {}
};

// A file could not be read or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Scenario file is not valid JSON or a field has the wrong type/shape.
// `path` identifies the offending field, e.g. "economics.stumpage_price".
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Scenario parsed fine but violates a documented invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace rotecon
