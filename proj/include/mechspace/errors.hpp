#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mechspace {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MECHSPACE_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

// measure
MECHSPACE_DEFINE_ERROR(DimensionMismatch);
MECHSPACE_DEFINE_ERROR(DivisionByZero);
MECHSPACE_DEFINE_ERROR(NegativeRoot);
MECHSPACE_DEFINE_ERROR(UnknownBase);

// groups
MECHSPACE_DEFINE_ERROR(MembershipViolation);
MECHSPACE_DEFINE_ERROR(NotInExtendedGroup);

// spaces
MECHSPACE_DEFINE_ERROR(DomainError);
MECHSPACE_DEFINE_ERROR(ZeroMass);
MECHSPACE_DEFINE_ERROR(NotSynchronous);
MECHSPACE_DEFINE_ERROR(OnEPlane);
MECHSPACE_DEFINE_ERROR(OutOfInterval);

// dynamics
MECHSPACE_DEFINE_ERROR(TooFewSamples);
MECHSPACE_DEFINE_ERROR(BadInitialData);
MECHSPACE_DEFINE_ERROR(FieldDomainError);
MECHSPACE_DEFINE_ERROR(FrameMismatch);
MECHSPACE_DEFINE_ERROR(NotOriented);

// symplectic
MECHSPACE_DEFINE_ERROR(TangencyViolation);
MECHSPACE_DEFINE_ERROR(ScaleMismatch);
MECHSPACE_DEFINE_ERROR(NotTimelike);

// scenario files
MECHSPACE_DEFINE_ERROR(ValidationError);

#undef MECHSPACE_DEFINE_ERROR

/// Syntax error in a dimension expression or scenario file. `position` is a
/// zero-based character offset (dimension text) or one-based line number
/// (scenario files).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mechspace
