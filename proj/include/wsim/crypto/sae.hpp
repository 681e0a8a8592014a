#pragma once

// SAE (Dragonfly) over NIST P-256, IANA group 19.
//
// Password element derivation uses hunting-and-pecking with a fixed
// 40-iteration loop. Every iteration is evaluated even after a valid
// element has been found.

#include <optional>
#include <utility>

#include "wsim/common/bytes.hpp"
#include "wsim/common/mac_addr.hpp"
#include "wsim/common/rng.hpp"
#include "wsim/crypto/error.hpp"
#include "wsim/crypto/psk.hpp"

namespace wsim::crypto {

inline constexpr int kSaeGroup = 19;
inline constexpr int kHuntingPeckingIterations = 40;

/// Big-endian 256-bit integer modulo the group order.
using Scalar = ByteArray<32>;

/// Affine point on P-256. Construction validates the curve equation; the
/// point at infinity has no affine form and cannot be represented.
class SaeGroupElement {
 public:
  /// Throws CryptoError(kInvalidGroupElement) if (x, y) is not on the curve.
  static SaeGroupElement from_coordinates(const ByteArray<32>& x, const ByteArray<32>& y);

  /// x || y, 64 bytes.
  ByteArray<64> encode() const;

  const ByteArray<32>& x() const { return x_; }
  const ByteArray<32>& y() const { return y_; }

  bool operator==(const SaeGroupElement&) const = default;

 private:
  SaeGroupElement(const ByteArray<32>& x, const ByteArray<32>& y) : x_(x), y_(y) {}

  ByteArray<32> x_{};
  ByteArray<32> y_{};
};

struct AnticlogToken {
  MacAddr mac;
  ByteArray<32> tag{};
  Tick issued_at = 0;

  bool operator==(const AnticlogToken&) const = default;
};

/// Commit message. The scalar is always in [2, q-1].
class SaeCommit {
 public:
  /// Throws CryptoError(kInvalidScalar) when the scalar is out of range.
  SaeCommit(const Scalar& scalar, const SaeGroupElement& element,
            std::optional<AnticlogToken> token = std::nullopt);

  const Scalar& scalar() const { return scalar_; }
  const SaeGroupElement& element() const { return element_; }
  const std::optional<AnticlogToken>& token() const { return token_; }

  SaeCommit with_token(std::optional<AnticlogToken> token) const {
    SaeCommit copy = *this;
    copy.token_ = std::move(token);
    return copy;
  }

  /// Same scalar and element; the token is not part of the transcript.
  bool same_transcript(const SaeCommit& other) const {
    return scalar_ == other.scalar_ && element_ == other.element_;
  }

  bool operator==(const SaeCommit&) const = default;

 private:
  Scalar scalar_{};
  SaeGroupElement element_;
  std::optional<AnticlogToken> token_;
};

struct SaeConfirm {
  std::uint16_t send_confirm = 0;
  ByteArray<32> confirm_hash{};

  bool operator==(const SaeConfirm&) const = default;
};

struct SaeSecret {
  Scalar rand{};
  Scalar mask{};
};

struct SaeKeys {
  ByteArray<32> kck{};
  Pmk pmk;

  bool operator==(const SaeKeys&) const = default;
};

/// True iff 2 <= s <= q-1.
bool scalar_in_range(const Scalar& s);

SaeGroupElement sae_derive_pwe(const Passphrase& passphrase, const MacAddr& mac_a,
                               const MacAddr& mac_b);

std::pair<SaeCommit, SaeSecret> sae_make_commit(const SaeGroupElement& pwe, Rng& rng);

/// Deterministic commit for a given (rand, mask). Throws
/// CryptoError(kInvalidScalar) if (rand + mask) mod q falls below 2.
SaeCommit sae_commit_from_secret(const SaeGroupElement& pwe, const SaeSecret& secret);

/// Derives the shared KCK and PMK. Throws kReflectionDetected if the peer
/// echoed our own commit, kInvalidPeerScalar / kInvalidPeerElement for a
/// malformed peer commit or an identity shared point.
SaeKeys sae_process_commit(const SaeSecret& secret, const SaeCommit& own, const SaeCommit& peer,
                           const SaeGroupElement& pwe);

/// HMAC-SHA256(kck, send_confirm_le16 || own.scalar || peer.scalar ||
/// own.element || peer.element).
SaeConfirm sae_make_confirm(const ByteArray<32>& kck, std::uint16_t send_confirm,
                            const SaeCommit& own, const SaeCommit& peer);

/// Checks a confirm received from the peer. `own` and `peer` are from the
/// verifier's point of view, i.e. the sender computed the hash with the
/// roles swapped.
bool sae_verify_confirm(const ByteArray<32>& kck, const SaeConfirm& confirm, const SaeCommit& own,
                        const SaeCommit& peer);

AnticlogToken make_anticlog_token(const ByteArray<32>& ap_secret, const MacAddr& peer, Tick now);

bool verify_anticlog_token(const ByteArray<32>& ap_secret, const AnticlogToken& token,
                           const MacAddr& peer, Tick now, Tick ttl);

/// Uniform scalar in [2, q-1].
Scalar random_scalar(Rng& rng);

/// A random valid group element (random multiple of the generator). Used
/// to forge commits without knowledge of any password.
SaeGroupElement random_group_element(Rng& rng);

/// Inverse of `scalar * pwe`; lets tests build a commit whose shared point
/// collapses to the identity.
SaeGroupElement negated_multiple(const SaeGroupElement& pwe, const Scalar& scalar);

}  // namespace wsim::crypto
