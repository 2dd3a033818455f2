#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sectionlab {

// Base of every error raised by the library; the CLI maps all of them to
// exit code 1 and reports `kind()` in the structured error field.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define SECTIONLAB_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    using Error::Error;                                          \
    const char* kind() const noexcept override { return #Name; } \
  }

SECTIONLAB_ERROR(DomainError);
SECTIONLAB_ERROR(DimensionMismatch);
SECTIONLAB_ERROR(InvalidBody);
SECTIONLAB_ERROR(UnboundedPolytope);
SECTIONLAB_ERROR(UnsupportedExactVolume);
SECTIONLAB_ERROR(UnsupportedExactSection);
SECTIONLAB_ERROR(SolverFailure);
SECTIONLAB_ERROR(RejectionStall);
SECTIONLAB_ERROR(ConfigError);

#undef SECTIONLAB_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace sectionlab
