#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace medlab {

enum class ErrorKind {
  kMalformedInput,
  kOutOfRange,
  kTooLarge,
  kEmptySet,
  kNotConvex,
  kNotReduced,
  kNotDisjoint,
  kNoSeparator,
  kSameWall,
  kNotATree,
  kNotAMorphism,
  kCapExceeded,
  kNotBalancedInput,
  kUnresolved,
  kInternal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` decides the CLI exit code:
/// kMalformedInput maps to 2, everything else to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace medlab
