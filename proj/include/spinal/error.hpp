#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinal {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range parameters (lengths, residues, ranks).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A requested object would exceed one of the desk-scale size guards.
class GuardError : public Error {
public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// The operation is not available for this input (search too large, excluded group).
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// Text input that does not follow one of the documented formats.
class ParseError : public Error {
public:
  using Error::Error;
};

/// The epimorphism sequence fails the faithfulness condition.
/// `index()` is the smallest i whose kernel intersection over j >= i is nontrivial.
class InvalidOmega : public Error {
public:
  explicit InvalidOmega(std::size_t index)
      : Error("kernel intersection is nontrivial from index " + std::to_string(index)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

} // namespace spinal
