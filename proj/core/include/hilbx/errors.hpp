#pragma once

#include <stdexcept>
#include <string>

namespace hilbx {

/// Violated precondition or degenerate mathematical input (zero denominator,
/// singular matrix, non-prime order, dimension mismatch).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Decrypted data failed a validity check: a recovered entry was not a byte,
/// or a cipher block does not fit the key.
class IntegrityError : public std::runtime_error {
 public:
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Trailing block padding is malformed after decryption.
class PaddingError : public std::runtime_error {
 public:
  explicit PaddingError(const std::string& what) : std::runtime_error(what) {}
};

/// A text file (key, ciphertext, envelope, pairs) does not parse.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hilbx
