#pragma once

#include <stdexcept>
#include <string>

namespace orbitgeom {

/// Base of every error raised by the library. CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A frame whose columns are not linearly independent.
class RankDeficient : public Error {
public:
  using Error::Error;
};

class SizeError : public Error {
public:
  using Error::Error;
};

class InfeasibleLabel : public Error {
public:
  using Error::Error;
};

/// Two subspaces handed to a witness construction lie in different orbits.
class LabelMismatch : public Error {
public:
  using Error::Error;
};

/// Point is not on any Matsuki orbit (its K- and G0-labels do not match).
class NotMatsuki : public Error {
public:
  using Error::Error;
};

class NumericalDegeneracy : public Error {
public:
  using Error::Error;
};

/// Input that violates a documented precondition in a way only a bug produces.
class CallerBug : public Error {
public:
  using Error::Error;
};

}  // namespace orbitgeom
