#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace normtori {

/// Raised when an operation's precondition fails or an input is malformed.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed structured-text input; the message carries the JSON location.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Validation output: one human-readable line per violated invariant.
using Diagnostics = std::vector<std::string>;

inline std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace normtori
