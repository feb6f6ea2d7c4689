#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coin {

// Error categories. Container parsing failures get one code each so callers
// can distinguish a bad file from a truncated one.
enum class Errc {
  InvalidArgument,
  ShapeMismatch,
  DimensionMismatch,
  EmptyRegion,
  IoError,
  BadMagic,
  UnsupportedVersion,
  BadHeader,
  Truncated,
  LengthMismatch,
  ConfigMismatch,
  Divergence,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Thrown when training hits a non-finite loss; records where it happened.
class DivergenceError : public Error {
 public:
  DivergenceError(std::uint64_t iteration, const std::string& what)
      : Error(Errc::Divergence, what), iteration_(iteration) {}
  std::uint64_t iteration() const noexcept { return iteration_; }

 private:
  std::uint64_t iteration_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace coin
