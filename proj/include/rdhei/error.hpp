#pragma once

#include <stdexcept>
#include <string>

namespace rdhei {

/// Malformed or unsupported image file content.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Payload does not fit in the embedding capacity of an image.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Key material that cannot be parsed (wrong length, non-hex digits).
class KeyFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid dimensions, integration parameters or other arguments.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rdhei
