// SPDX-License-Identifier: MIT

#ifndef FEC2D_ERRORS_HPP
#define FEC2D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fec2d {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A stated parameter inequality is violated; the message names it.
struct ParameterError : Error {
  using Error::Error;
};

/// Degenerate geometry (zero-area triangle, zero-length edge).
struct GeometryError : Error {
  using Error::Error;
};

/// Mesh connectivity violation (nonconforming pair, folded edge, bad index).
struct TopologyError : Error {
  using Error::Error;
};

/// Malformed input document.
struct ParseError : Error {
  using Error::Error;
};

/// Field shape incompatible with the requested operation.
struct ShapeError : Error {
  using Error::Error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

/// A quotient weight space cannot be realized at the requested count.
struct QuotientError : Error {
  using Error::Error;
};

/// The differential of a source space is not contained in the target space.
struct InclusionError : Error {
  using Error::Error;
};

}  // namespace fec2d

#endif
