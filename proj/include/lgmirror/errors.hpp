#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lgm {

// Base of every library error. kind() is the stable machine-readable name.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define LGM_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

LGM_DEFINE_ERROR(SingularMatrix)
LGM_DEFINE_ERROR(ChargeOutOfRange)
LGM_DEFINE_ERROR(NotInvertibleType)
LGM_DEFINE_ERROR(NonIntegerMilnor)
LGM_DEFINE_ERROR(DegenerateRestriction)
LGM_DEFINE_ERROR(NonIntegralDegree)
LGM_DEFINE_ERROR(NotAAdmissible)
LGM_DEFINE_ERROR(NotCalabiYau)
LGM_DEFINE_ERROR(NonScalarRelation)
LGM_DEFINE_ERROR(UnstableCurve)
LGM_DEFINE_ERROR(NotConcave)
LGM_DEFINE_ERROR(BroadNodeEncountered)
LGM_DEFINE_ERROR(GroupTooLarge)
LGM_DEFINE_ERROR(InvalidArgument)

#undef LGM_DEFINE_ERROR

// Parse errors carry a 1-based line and column and a 0-based byte offset;
// line 0 means "no position".
class LocatedError : public Error {
 public:
  LocatedError(std::string kind, const std::string& message, int line, int column, long offset)
      : Error(std::move(kind), message), line_(line), column_(column), offset_(offset) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  long offset() const noexcept { return offset_; }

 private:
  int line_;
  int column_;
  long offset_;
};

#define LGM_DEFINE_LOCATED_ERROR(Name)                              \
  class Name : public LocatedError {                                \
   public:                                                          \
    Name(const std::string& message, int line = 0, int column = 0,  \
         long offset = -1)                                          \
        : LocatedError(#Name, message, line, column, offset) {}     \
  };

LGM_DEFINE_LOCATED_ERROR(SyntaxError)
LGM_DEFINE_LOCATED_ERROR(NotSquare)
LGM_DEFINE_LOCATED_ERROR(RepeatedMonomial)

#undef LGM_DEFINE_LOCATED_ERROR

}  // namespace lgm
