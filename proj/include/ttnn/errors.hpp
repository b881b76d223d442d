#pragma once

#include <stdexcept>
#include <string>

namespace ttnn {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch, out-of-range index or parameter, malformed configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written, or decoded.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside a solver or decomposition.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Inverse DFT of a spectrum that is not conjugate symmetric.
class ImaginaryResidue : public SolverError {
 public:
  ImaginaryResidue(double residue, double tolerance)
      : SolverError("imaginary residue " + std::to_string(residue) +
                    " exceeds tolerance " + std::to_string(tolerance)),
        residue_(residue) {}

  double residue() const noexcept { return residue_; }

 private:
  double residue_;
};

}  // namespace ttnn
