#ifndef MRTRIM_ERRORS_HPP
#define MRTRIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mrtrim {

/// Invalid generation or stage configuration (bad bounds, empty budget, ...).
/// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An artifact file failed to parse or validate. CLI maps this to exit code 3.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A method name (or external program) could not be resolved.
/// CLI maps this to exit code 4.
class LookupError : public std::runtime_error {
 public:
  explicit LookupError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mrtrim

#endif  // MRTRIM_ERRORS_HPP
