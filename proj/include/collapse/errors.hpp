#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace collapse {

enum class ErrorKind {
  SchemaViolation,
  HypothesisViolation,
  SpectrumExhausted,
  InconsistentModel,
  NotAProduct,
  NoWitness,
  InvalidArgument,
};

constexpr std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaViolation: return "schema-violation";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::SpectrumExhausted: return "spectrum-exhausted";
    case ErrorKind::InconsistentModel: return "inconsistent-model";
    case ErrorKind::NotAProduct: return "not-a-product";
    case ErrorKind::NoWitness: return "no-witness";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

// Every library failure carries a kind so the CLI can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace collapse
