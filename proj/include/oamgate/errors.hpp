#pragma once

#include <stdexcept>
#include <string>

namespace oamgate {

// Quadrature failed its refinement check, or a result left its contract range.
class NumericalAccuracyError : public std::runtime_error {
 public:
  explicit NumericalAccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// A chi value was requested outside the region a table (or source) covers.
class CoverageError : public std::runtime_error {
 public:
  explicit CoverageError(const std::string& what) : std::runtime_error(what) {}
};

// A conversion coefficient of an occupied mode is exactly zero: p1 = 0 and
// the post-selected state is undefined.
class DegenerateChannelError : public std::runtime_error {
 public:
  explicit DegenerateChannelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oamgate
