#pragma once

#include <stdexcept>
#include <string>

namespace wsim::crypto {

enum class CryptoErrc {
  kPassphraseLength,
  kSsidLength,
  kUnsupportedMicVersion,
  kInvalidGroupElement,
  kInvalidScalar,
  kNoPasswordElement,
  kInvalidPeerElement,
  kInvalidPeerScalar,
  kReflectionDetected,
};

const char* to_string(CryptoErrc code);

class CryptoError : public std::runtime_error {
 public:
  CryptoError(CryptoErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  CryptoErrc code() const { return code_; }

 private:
  CryptoErrc code_;
};

}  // namespace wsim::crypto
