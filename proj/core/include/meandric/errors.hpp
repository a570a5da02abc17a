#pragma once

#include <stdexcept>
#include <string>

namespace meandric {

// Requested size exceeds a resource guard (exit code 3 in the CLI).
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands do not live on the same ground set, or bounds disagree.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cache file exists but cannot be trusted.
class CacheIntegrityError : public std::runtime_error {
 public:
  CacheIntegrityError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what +
                           " (delete the file to force recomputation)"),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// An exact structural property of a computed series does not hold.
class StructureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Irreducible data does not reach far enough for the requested truncation.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace meandric
