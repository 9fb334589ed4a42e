#pragma once

#include <stdexcept>
#include <string>

namespace symstab {

// Machine-readable error codes; the CLI maps BudgetExceeded to exit 3 and
// everything else to exit 2.
enum class Errc {
  Validation,
  Overflow,
  BudgetExceeded,
  NotTwoTorsion,
  TrivialClass,
  WrongTorsionOrder,
  NotDoubleCover,
  UnsupportedDegree,
  MultiplicityExceedsDegree,
  ConjugatePairViolation,
  SameFiberConflict,
  InvalidPattern,
  DegreeNotZero,
  NotTorsion,
  IncompleteInput,
  InvalidDescriptor,
  MissingPresentation,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Validation: return "Validation";
    case Errc::Overflow: return "Overflow";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotTwoTorsion: return "NotTwoTorsion";
    case Errc::TrivialClass: return "TrivialClass";
    case Errc::WrongTorsionOrder: return "WrongTorsionOrder";
    case Errc::NotDoubleCover: return "NotDoubleCover";
    case Errc::UnsupportedDegree: return "UnsupportedDegree";
    case Errc::MultiplicityExceedsDegree: return "MultiplicityExceedsDegree";
    case Errc::ConjugatePairViolation: return "ConjugatePairViolation";
    case Errc::SameFiberConflict: return "SameFiberConflict";
    case Errc::InvalidPattern: return "InvalidPattern";
    case Errc::DegreeNotZero: return "DegreeNotZero";
    case Errc::NotTorsion: return "NotTorsion";
    case Errc::IncompleteInput: return "IncompleteInput";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::MissingPresentation: return "MissingPresentation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace symstab
