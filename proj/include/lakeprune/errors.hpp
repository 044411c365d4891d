#pragma once

#include <stdexcept>

namespace lakeprune {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-supplied arguments or configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Referenced dataset, column, or graph node does not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Name collision, e.g. ingesting under an existing dataset name.
class Conflict : public Error {
 public:
  using Error::Error;
};

// Malformed input file (delimited text, JSON, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Schema-level violation such as duplicate flattened column paths.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Input graph does not have the shape an algorithm requires.
class StructureError : public Error {
 public:
  using Error::Error;
};

// Comparison between incompatible value types.
class TypeMismatch : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lakeprune
