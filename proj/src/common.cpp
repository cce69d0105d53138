#include "medlab/error.hpp"
#include "medlab/rational.hpp"

namespace medlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedInput: return "MalformedInput";
    case ErrorKind::kOutOfRange: return "OutOfRange";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kEmptySet: return "EmptySet";
    case ErrorKind::kNotConvex: return "NotConvex";
    case ErrorKind::kNotReduced: return "NotReduced";
    case ErrorKind::kNotDisjoint: return "NotDisjoint";
    case ErrorKind::kNoSeparator: return "NoSeparator";
    case ErrorKind::kSameWall: return "SameWall";
    case ErrorKind::kNotATree: return "NotATree";
    case ErrorKind::kNotAMorphism: return "NotAMorphism";
    case ErrorKind::kCapExceeded: return "CapExceeded";
    case ErrorKind::kNotBalancedInput: return "NotBalancedInput";
    case ErrorKind::kUnresolved: return "Unresolved";
    case ErrorKind::kInternal: return "Internal";
  }
  return "Unknown";
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  std::string_view body = digits;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  if (body.empty() || body.find_first_not_of("0123456789") != std::string_view::npos) {
    throw Error(ErrorKind::kMalformedInput, "not a rational: \"" + std::string(whole) + "\"");
  }
  return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt p = parse_integer(text.substr(0, slash), text);
  const BigInt q = parse_integer(text.substr(slash + 1), text);
  if (q <= 0) {
    throw Error(ErrorKind::kMalformedInput, "bad denominator in \"" + std::string(text) + "\"");
  }
  return Rational(p, q);
}

Rational pow2(int k) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(k < 0 ? -k : k);
  return k < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace medlab
