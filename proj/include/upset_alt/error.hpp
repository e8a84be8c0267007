#pragma once

#include <stdexcept>
#include <string>

namespace upset_alt {

/// Which stage rejected the input. The service maps these to HTTP status codes.
enum class ErrorCategory {
    syntax,   ///< malformed document or wrong value type
    data,     ///< dataset violates a model invariant
    config,   ///< configuration is well-formed but inconsistent with the dataset
};

/// Error raised by validation and parsing. `code` is a stable identifier
/// such as "UnknownVisibleSet"; `path` points at the offending field or
/// line when one is known.
class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string code, const std::string& message, std::string path = {})
        : std::runtime_error(message), category_(category), code_(std::move(code)), path_(std::move(path)) {}

    ErrorCategory category() const noexcept { return category_; }
    const std::string& code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }

private:
    ErrorCategory category_;
    std::string code_;
    std::string path_;
};

}  // namespace upset_alt
