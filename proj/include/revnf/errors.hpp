#pragma once

#include <stdexcept>
#include <string>

namespace revnf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompatibleRadicals : Error {
  using Error::Error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
/// |alpha| == |beta|: anticommutation with A no longer forces a block-diagonal S.
struct DegenerateResonance : Error {
  using Error::Error;
};
struct UnsupportedOrder : Error {
  using Error::Error;
};
struct ClosureCapExceeded : Error {
  using Error::Error;
};
struct NotCompatible : Error {
  using Error::Error;
};
struct NotAnInvolution : Error {
  using Error::Error;
};
struct SingularLinearPart : Error {
  using Error::Error;
};
struct UnknownFamily : Error {
  using Error::Error;
};
struct UnsupportedResonance : Error {
  using Error::Error;
};
struct MixedResonantTerms : Error {
  using Error::Error;
};
struct SplittingFailure : Error {
  using Error::Error;
};

} // namespace revnf
