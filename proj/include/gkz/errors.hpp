#pragma once

#include <stdexcept>
#include <string>

namespace gkz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (wrong cell type, vertex given
// where a non-vertex is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InvalidPaving : public Error {
 public:
  using Error::Error;
};

// The polytope has no lattice simplex whose lifted vertices form a basis.
class NoRegularSimplex : public Error {
 public:
  using Error::Error;
};

class NotInterior : public Error {
 public:
  using Error::Error;
};

class NotAdjacent : public Error {
 public:
  using Error::Error;
};

class NotConvex : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace gkz
