#pragma once

#include <stdexcept>
#include <string>

namespace edgeaware {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Unsupported PNG bit depth or color type.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Challenge layout cannot be placed in the requested dimensions.
class SpecError : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Mean shift window carried (numerically) no weight.
class DegenerateWeight : public Error {
 public:
  using Error::Error;
};

class EmptyMask : public Error {
 public:
  using Error::Error;
};

}  // namespace edgeaware
