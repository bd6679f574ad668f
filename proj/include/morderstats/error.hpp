#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace morderstats {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyData : public Error {
 public:
  EmptyData() : Error("empty point set") {}
};

class DegenerateData : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotSpd : public Error {
 public:
  NotSpd() : Error("matrix is not symmetric positive definite") {}
};

class DegenerateSimplex : public Error {
 public:
  DegenerateSimplex() : Error("points are affinely dependent") {}
};

/// Raised when a hull is requested for points that do not span R^p.
class DegenerateHull : public Error {
 public:
  DegenerateHull(int affine_rank, int dim)
      : Error("degenerate hull: points span affine rank " + std::to_string(affine_rank) +
              " in dimension " + std::to_string(dim)),
        affine_rank_(affine_rank) {}

  int affine_rank() const noexcept { return affine_rank_; }

 private:
  int affine_rank_;
};

class BadInteriorPoint : public Error {
 public:
  BadInteriorPoint() : Error("interior point does not strictly satisfy every halfspace") {}
};

class UnboundedRegion : public Error {
 public:
  UnboundedRegion() : Error("halfspace intersection is unbounded") {}
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed delimited input. `row()` is 1-based and counts the header.
class CsvError : public Error {
 public:
  CsvError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace morderstats
