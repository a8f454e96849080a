#pragma once

#include <stdexcept>
#include <string>

namespace liecoh {

/// Error carrying a machine-readable code plus the concrete witness
/// (component indices / values) of the violated identity or contract.
class CheckFailure : public std::runtime_error {
public:
  CheckFailure(std::string code, const std::string& message, std::string witness = "")
      : std::runtime_error(message + (witness.empty() ? "" : " [witness: " + witness + "]")),
        code_(std::move(code)),
        witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::string& witness() const { return witness_; }

private:
  std::string code_, witness_;
};

} // namespace liecoh
