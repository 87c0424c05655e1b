#pragma once

#include <stdexcept>
#include <string>

namespace zarank {

// All library errors carry a stable kind string; the CLI maps it into the
// machine-readable error object, tests match on it.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define ZARANK_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                            \
  public:                                                                \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
  }

ZARANK_DEFINE_ERROR(NonPrimeCharacteristic);
ZARANK_DEFINE_ERROR(ReducibleModulus);
ZARANK_DEFINE_ERROR(DivisionByZero);
ZARANK_DEFINE_ERROR(CapExceeded);
ZARANK_DEFINE_ERROR(IndexOutOfRange);
ZARANK_DEFINE_ERROR(DuplicateNode);
ZARANK_DEFINE_ERROR(MixedSides);
ZARANK_DEFINE_ERROR(StaleReport);
ZARANK_DEFINE_ERROR(PreconditionFailed);
ZARANK_DEFINE_ERROR(Overflow);

#undef ZARANK_DEFINE_ERROR

}  // namespace zarank
