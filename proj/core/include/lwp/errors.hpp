#ifndef LWP_ERRORS_HPP
#define LWP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lwp {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LWP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& msg) : Error(msg) {}        \
  }

LWP_DEFINE_ERROR(NonPositiveMeasure);
LWP_DEFINE_ERROR(DuplicateLabel);
LWP_DEFINE_ERROR(MeasureOverflow);
LWP_DEFINE_ERROR(PartitionMismatch);
LWP_DEFINE_ERROR(BadFractions);
LWP_DEFINE_ERROR(UnknownLabel);
LWP_DEFINE_ERROR(RangeError);
LWP_DEFINE_ERROR(DomainError);
LWP_DEFINE_ERROR(ZeroCoefficient);
LWP_DEFINE_ERROR(NonPositiveEta);
LWP_DEFINE_ERROR(DeltaOutOfRange);
LWP_DEFINE_ERROR(IndexOutOfRange);
LWP_DEFINE_ERROR(RatioOutOfRange);
LWP_DEFINE_ERROR(LambdaOutOfRange);
LWP_DEFINE_ERROR(RatioConditionViolated);
LWP_DEFINE_ERROR(PsiMismatch);
LWP_DEFINE_ERROR(PreconditionViolated);
LWP_DEFINE_ERROR(BadArguments);
LWP_DEFINE_ERROR(ParseError);

#undef LWP_DEFINE_ERROR

}  // namespace lwp

#endif  // LWP_ERRORS_HPP
