#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbinv {

// Base for every data-dependent failure raised by the library. Usage mistakes
// (bad indices, wrong moment kind) throw std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { MalformedHeader, TruncatedPayload, ZeroMaxval, SampleOutOfRange };

  ParseError(Kind kind, std::size_t offset, const std::string& detail);

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Zero total mass; every moment normalization divides by m00 or u00.
class DegenerateImageError : public Error {
 public:
  DegenerateImageError() : Error("degenerate image: total mass is zero") {}
};

// The blur or rotation would push nonzero content past the raster border.
class MarginError : public Error {
 public:
  using Error::Error;
};

class FrameMismatchError : public Error {
 public:
  FrameMismatchError() : Error("moments not about rotation center") {}
};

}  // namespace mbinv
