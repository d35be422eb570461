#pragma once

#include <stdexcept>
#include <string>

namespace dust {

/// Raised for every contract violation in the library. The message carries
/// the module-level error text that the CLI reports verbatim.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dust
