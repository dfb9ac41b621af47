#pragma once

#include <stdexcept>
#include <string>

namespace fol {

// Failure categories map onto CLI exit codes.
enum class ErrorKind { Parse, Precondition, Precision };

class Error : public std::runtime_error {
 public:
  Error(std::string name, ErrorKind kind, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)), kind_(kind) {}

  const std::string& name() const { return name_; }
  ErrorKind kind() const { return kind_; }

 private:
  std::string name_;
  ErrorKind kind_;
};

#define FOL_DEFINE_ERROR(Name, Kind)                        \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& what)                  \
        : Error(#Name, ErrorKind::Kind, what) {}            \
  };

FOL_DEFINE_ERROR(NonzeroConstantTerm, Precondition)
FOL_DEFINE_ERROR(NotDivisible, Precondition)
FOL_DEFINE_ERROR(InsufficientSupport, Precondition)
FOL_DEFINE_ERROR(AllZero, Precondition)
FOL_DEFINE_ERROR(NonInvertibleLinearPart, Precondition)
FOL_DEFINE_ERROR(RegularPoint, Precondition)
FOL_DEFINE_ERROR(CenterNotInvariantOrNotSingular, Precondition)
FOL_DEFINE_ERROR(NotInNormalForm, Precondition)
FOL_DEFINE_ERROR(NotASeparatrix, Precondition)
FOL_DEFINE_ERROR(ZeroAlongCurve, Precondition)
FOL_DEFINE_ERROR(NotGraphParameterizable, Precondition)
FOL_DEFINE_ERROR(CurveMissesCenter, Precondition)
FOL_DEFINE_ERROR(DivisionObstructed, Precondition)
FOL_DEFINE_ERROR(NotGraph, Precondition)
FOL_DEFINE_ERROR(PoleOnPath, Precondition)
FOL_DEFINE_ERROR(IntegrationFailure, Precondition)
FOL_DEFINE_ERROR(DomainError, Precondition)
FOL_DEFINE_ERROR(PrecisionExhausted, Precision)

#undef FOL_DEFINE_ERROR

class Obstructed : public Error {
 public:
  Obstructed(int degree, std::string witness)
      : Error("Obstructed", ErrorKind::Precondition,
              "separatrix equations inconsistent at degree " + std::to_string(degree) + ": " +
                  witness),
        degree_(degree),
        witness_(std::move(witness)) {}

  int degree() const { return degree_; }
  const std::string& witness() const { return witness_; }

 private:
  int degree_;
  std::string witness_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("ParseError", ErrorKind::Parse,
              "at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fol
