#include "wsim/crypto/sae.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <memory>
#include <stdexcept>

#include "wsim/crypto/primitives.hpp"

namespace wsim::crypto {

namespace {

struct BnDeleter {
  void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct CtxDeleter {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_clear_free(p); }
};
struct GroupDeleter {
  void operator()(EC_GROUP* p) const { EC_GROUP_free(p); }
};

using Bn = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtx = std::unique_ptr<BN_CTX, CtxDeleter>;
using Point = std::unique_ptr<EC_POINT, PointDeleter>;

void check(int ok, const char* what) {
  if (ok != 1) throw std::runtime_error(std::string("libcrypto: ") + what);
}

Bn new_bn() {
  Bn bn(BN_new());
  if (!bn) throw std::bad_alloc();
  return bn;
}

Bn bn_from(std::span<const std::uint8_t> be) {
  Bn bn(BN_bin2bn(be.data(), static_cast<int>(be.size()), nullptr));
  if (!bn) throw std::bad_alloc();
  return bn;
}

ByteArray<32> to_array(const BIGNUM* bn) {
  ByteArray<32> out{};
  check(BN_bn2binpad(bn, out.data(), static_cast<int>(out.size())) == 32 ? 1 : 0, "BN_bn2binpad");
  return out;
}

BnCtx new_ctx() {
  BnCtx ctx(BN_CTX_new());
  if (!ctx) throw std::bad_alloc();
  return ctx;
}

// Curve parameters are immutable after first use and safe to share.
struct Curve {
  std::unique_ptr<EC_GROUP, GroupDeleter> group;
  Bn p;
  Bn a;
  Bn b;
  Bn q;
  ByteArray<32> p_bytes{};

  Curve() : group(EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1)) {
    if (!group) throw std::runtime_error("P-256 unavailable");
    p = new_bn();
    a = new_bn();
    b = new_bn();
    q = new_bn();
    auto ctx = new_ctx();
    check(EC_GROUP_get_curve(group.get(), p.get(), a.get(), b.get(), ctx.get()),
          "EC_GROUP_get_curve");
    check(EC_GROUP_get_order(group.get(), q.get(), ctx.get()), "EC_GROUP_get_order");
    p_bytes = to_array(p.get());
  }
};

const Curve& curve() {
  static const Curve instance;
  return instance;
}

Point new_point() {
  Point pt(EC_POINT_new(curve().group.get()));
  if (!pt) throw std::bad_alloc();
  return pt;
}

Point to_point(const SaeGroupElement& e, BN_CTX* ctx) {
  auto x = bn_from(e.x());
  auto y = bn_from(e.y());
  auto pt = new_point();
  check(EC_POINT_set_affine_coordinates(curve().group.get(), pt.get(), x.get(), y.get(), ctx),
        "EC_POINT_set_affine_coordinates");
  return pt;
}

// Returns nullopt for the point at infinity.
std::optional<std::pair<ByteArray<32>, ByteArray<32>>> affine(const EC_POINT* pt, BN_CTX* ctx) {
  if (EC_POINT_is_at_infinity(curve().group.get(), pt)) return std::nullopt;
  auto x = new_bn();
  auto y = new_bn();
  check(EC_POINT_get_affine_coordinates(curve().group.get(), pt, x.get(), y.get(), ctx),
        "EC_POINT_get_affine_coordinates");
  return std::make_pair(to_array(x.get()), to_array(y.get()));
}

SaeGroupElement from_point(const EC_POINT* pt, BN_CTX* ctx) {
  auto xy = affine(pt, ctx);
  if (!xy) throw CryptoError(CryptoErrc::kInvalidGroupElement, "point at infinity");
  return SaeGroupElement::from_coordinates(xy->first, xy->second);
}

// y^2 = x^3 + a x + b mod p
Bn curve_rhs(const BIGNUM* x, BN_CTX* ctx) {
  const Curve& c = curve();
  auto x3 = new_bn();
  auto ax = new_bn();
  auto rhs = new_bn();
  check(BN_mod_sqr(x3.get(), x, c.p.get(), ctx), "BN_mod_sqr");
  check(BN_mod_mul(x3.get(), x3.get(), x, c.p.get(), ctx), "BN_mod_mul");
  check(BN_mod_mul(ax.get(), c.a.get(), x, c.p.get(), ctx), "BN_mod_mul");
  check(BN_mod_add(rhs.get(), x3.get(), ax.get(), c.p.get(), ctx), "BN_mod_add");
  check(BN_mod_add(rhs.get(), rhs.get(), c.b.get(), c.p.get(), ctx), "BN_mod_add");
  return rhs;
}

// Legendre symbol test: v^((p-1)/2) == 1.
bool is_quadratic_residue(const BIGNUM* v, BN_CTX* ctx) {
  const Curve& c = curve();
  auto exp = new_bn();
  auto res = new_bn();
  check(BN_sub(exp.get(), c.p.get(), BN_value_one()), "BN_sub");
  check(BN_rshift1(exp.get(), exp.get()), "BN_rshift1");
  check(BN_mod_exp(res.get(), v, exp.get(), c.p.get(), ctx), "BN_mod_exp");
  return BN_is_one(res.get());
}

Bn scalar_bn(const Scalar& s) { return bn_from(s); }

}  // namespace

SaeGroupElement SaeGroupElement::from_coordinates(const ByteArray<32>& x, const ByteArray<32>& y) {
  const Curve& c = curve();
  auto ctx = new_ctx();
  auto bx = bn_from(x);
  auto by = bn_from(y);
  if (BN_cmp(bx.get(), c.p.get()) >= 0 || BN_cmp(by.get(), c.p.get()) >= 0) {
    throw CryptoError(CryptoErrc::kInvalidGroupElement, "coordinate not reduced mod p");
  }
  auto lhs = new_bn();
  check(BN_mod_sqr(lhs.get(), by.get(), c.p.get(), ctx.get()), "BN_mod_sqr");
  auto rhs = curve_rhs(bx.get(), ctx.get());
  if (BN_cmp(lhs.get(), rhs.get()) != 0) {
    throw CryptoError(CryptoErrc::kInvalidGroupElement, "point is not on the curve");
  }
  return SaeGroupElement(x, y);
}

ByteArray<64> SaeGroupElement::encode() const {
  ByteArray<64> out{};
  std::copy(x_.begin(), x_.end(), out.begin());
  std::copy(y_.begin(), y_.end(), out.begin() + 32);
  return out;
}

bool scalar_in_range(const Scalar& s) {
  auto bn = scalar_bn(s);
  auto two = new_bn();
  check(BN_set_word(two.get(), 2), "BN_set_word");
  return BN_cmp(bn.get(), two.get()) >= 0 && BN_cmp(bn.get(), curve().q.get()) < 0;
}

SaeCommit::SaeCommit(const Scalar& scalar, const SaeGroupElement& element,
                     std::optional<AnticlogToken> token)
    : scalar_(scalar), element_(element), token_(std::move(token)) {
  if (!scalar_in_range(scalar_)) {
    throw CryptoError(CryptoErrc::kInvalidScalar, "commit scalar outside [2, q-1]");
  }
}

SaeGroupElement sae_derive_pwe(const Passphrase& passphrase, const MacAddr& mac_a,
                               const MacAddr& mac_b) {
  const Curve& c = curve();
  auto ctx = new_ctx();

  ByteArray<12> key{};
  const auto& hi = std::max(mac_a, mac_b).bytes();
  const auto& lo = std::min(mac_a, mac_b).bytes();
  std::copy(hi.begin(), hi.end(), key.begin());
  std::copy(lo.begin(), lo.end(), key.begin() + 6);

  Bytes msg(passphrase.text().begin(), passphrase.text().end());
  msg.push_back(0);

  bool found = false;
  Bn found_x;
  Bn found_rhs;
  bool seed_odd = false;

  for (int counter = 1; counter <= kHuntingPeckingIterations; ++counter) {
    msg.back() = static_cast<std::uint8_t>(counter);
    const auto seed = hmac_sha256(key, msg);
    const Bytes value = kdf_sha256(seed, "SAE Hunting and Pecking", c.p_bytes, 256);
    auto x = bn_from(value);
    if (BN_cmp(x.get(), c.p.get()) >= 0) continue;
    auto rhs = curve_rhs(x.get(), ctx.get());
    if (!is_quadratic_residue(rhs.get(), ctx.get())) continue;
    if (!found) {
      found = true;
      found_x = std::move(x);
      found_rhs = std::move(rhs);
      seed_odd = (seed.back() & 1) != 0;
    }
  }
  if (!found) {
    throw CryptoError(CryptoErrc::kNoPasswordElement,
                      "no password element within " + std::to_string(kHuntingPeckingIterations) +
                          " iterations");
  }

  auto y = new_bn();
  if (BN_mod_sqrt(y.get(), found_rhs.get(), c.p.get(), ctx.get()) == nullptr) {
    throw std::runtime_error("libcrypto: BN_mod_sqrt");
  }
  if (BN_is_odd(y.get()) != static_cast<int>(seed_odd)) {
    check(BN_sub(y.get(), c.p.get(), y.get()), "BN_sub");
  }
  return SaeGroupElement::from_coordinates(to_array(found_x.get()), to_array(y.get()));
}

SaeCommit sae_commit_from_secret(const SaeGroupElement& pwe, const SaeSecret& secret) {
  const Curve& c = curve();
  auto ctx = new_ctx();
  auto rand = scalar_bn(secret.rand);
  auto mask = scalar_bn(secret.mask);
  auto sum = new_bn();
  check(BN_mod_add(sum.get(), rand.get(), mask.get(), c.q.get(), ctx.get()), "BN_mod_add");

  auto base = to_point(pwe, ctx.get());
  auto element = new_point();
  check(EC_POINT_mul(c.group.get(), element.get(), nullptr, base.get(), mask.get(), ctx.get()),
        "EC_POINT_mul");
  check(EC_POINT_invert(c.group.get(), element.get(), ctx.get()), "EC_POINT_invert");
  return SaeCommit(to_array(sum.get()), from_point(element.get(), ctx.get()));
}

Scalar random_scalar(Rng& rng) {
  for (;;) {
    Scalar s = rng.bytes<32>();
    if (scalar_in_range(s)) return s;
  }
}

std::pair<SaeCommit, SaeSecret> sae_make_commit(const SaeGroupElement& pwe, Rng& rng) {
  for (;;) {
    SaeSecret secret{random_scalar(rng), random_scalar(rng)};
    try {
      SaeCommit commit = sae_commit_from_secret(pwe, secret);
      return {std::move(commit), secret};
    } catch (const CryptoError& e) {
      if (e.code() != CryptoErrc::kInvalidScalar) throw;
      // (rand + mask) mod q < 2: draw again.
    }
  }
}

SaeKeys sae_process_commit(const SaeSecret& secret, const SaeCommit& own, const SaeCommit& peer,
                           const SaeGroupElement& pwe) {
  if (own.same_transcript(peer)) {
    throw CryptoError(CryptoErrc::kReflectionDetected, "peer commit reflects our own");
  }
  if (!scalar_in_range(peer.scalar())) {
    throw CryptoError(CryptoErrc::kInvalidPeerScalar, "peer scalar outside [2, q-1]");
  }
  const Curve& c = curve();
  auto ctx = new_ctx();

  // K = rand * (peer.scalar * PWE + peer.element)
  auto base = to_point(pwe, ctx.get());
  auto peer_elem = to_point(peer.element(), ctx.get());
  auto peer_scalar = scalar_bn(peer.scalar());
  auto tmp = new_point();
  check(EC_POINT_mul(c.group.get(), tmp.get(), nullptr, base.get(), peer_scalar.get(), ctx.get()),
        "EC_POINT_mul");
  check(EC_POINT_add(c.group.get(), tmp.get(), tmp.get(), peer_elem.get(), ctx.get()),
        "EC_POINT_add");
  auto rand = scalar_bn(secret.rand);
  auto shared = new_point();
  check(EC_POINT_mul(c.group.get(), shared.get(), nullptr, tmp.get(), rand.get(), ctx.get()),
        "EC_POINT_mul");
  const auto k = affine(shared.get(), ctx.get());
  if (!k) throw CryptoError(CryptoErrc::kInvalidPeerElement, "shared point is the identity");

  const ByteArray<32> zeros{};
  const auto keyseed = hmac_sha256(zeros, k->first);

  auto own_scalar = scalar_bn(own.scalar());
  auto sum = new_bn();
  check(BN_mod_add(sum.get(), own_scalar.get(), peer_scalar.get(), c.q.get(), ctx.get()),
        "BN_mod_add");
  const auto context = to_array(sum.get());
  const Bytes material = kdf_sha256(keyseed, "SAE KCK and PMK", context, 512);

  SaeKeys keys;
  std::copy_n(material.begin(), 32, keys.kck.begin());
  std::copy_n(material.begin() + 32, 32, keys.pmk.bytes.begin());
  return keys;
}

namespace {

ByteArray<32> confirm_hash(const ByteArray<32>& kck, std::uint16_t send_confirm,
                           const SaeCommit& first, const SaeCommit& second) {
  Bytes msg;
  msg.reserve(2 + 64 + 128);
  msg.push_back(static_cast<std::uint8_t>(send_confirm & 0xff));
  msg.push_back(static_cast<std::uint8_t>(send_confirm >> 8));
  msg.insert(msg.end(), first.scalar().begin(), first.scalar().end());
  msg.insert(msg.end(), second.scalar().begin(), second.scalar().end());
  const auto e1 = first.element().encode();
  const auto e2 = second.element().encode();
  msg.insert(msg.end(), e1.begin(), e1.end());
  msg.insert(msg.end(), e2.begin(), e2.end());
  return hmac_sha256(kck, msg);
}

}  // namespace

SaeConfirm sae_make_confirm(const ByteArray<32>& kck, std::uint16_t send_confirm,
                            const SaeCommit& own, const SaeCommit& peer) {
  return SaeConfirm{send_confirm, confirm_hash(kck, send_confirm, own, peer)};
}

bool sae_verify_confirm(const ByteArray<32>& kck, const SaeConfirm& confirm, const SaeCommit& own,
                        const SaeCommit& peer) {
  const auto expected = confirm_hash(kck, confirm.send_confirm, peer, own);
  return equal_ct(expected, confirm.confirm_hash);
}

namespace {

ByteArray<32> token_tag(const ByteArray<32>& secret, const MacAddr& peer, Tick issued_at) {
  ByteArray<14> msg{};
  std::copy(peer.bytes().begin(), peer.bytes().end(), msg.begin());
  for (int i = 0; i < 8; ++i) {
    msg[6 + i] = static_cast<std::uint8_t>(issued_at >> (8 * (7 - i)));
  }
  return hmac_sha256(secret, msg);
}

}  // namespace

AnticlogToken make_anticlog_token(const ByteArray<32>& ap_secret, const MacAddr& peer, Tick now) {
  return AnticlogToken{peer, token_tag(ap_secret, peer, now), now};
}

bool verify_anticlog_token(const ByteArray<32>& ap_secret, const AnticlogToken& token,
                           const MacAddr& peer, Tick now, Tick ttl) {
  if (token.mac != peer) return false;
  if (now < token.issued_at || now - token.issued_at > ttl) return false;
  return equal_ct(token_tag(ap_secret, peer, token.issued_at), token.tag);
}

SaeGroupElement random_group_element(Rng& rng) {
  const Curve& c = curve();
  auto ctx = new_ctx();
  auto k = scalar_bn(random_scalar(rng));
  auto pt = new_point();
  check(EC_POINT_mul(c.group.get(), pt.get(), k.get(), nullptr, nullptr, ctx.get()),
        "EC_POINT_mul");
  return from_point(pt.get(), ctx.get());
}

SaeGroupElement negated_multiple(const SaeGroupElement& pwe, const Scalar& scalar) {
  const Curve& c = curve();
  auto ctx = new_ctx();
  auto base = to_point(pwe, ctx.get());
  auto k = scalar_bn(scalar);
  auto pt = new_point();
  check(EC_POINT_mul(c.group.get(), pt.get(), nullptr, base.get(), k.get(), ctx.get()),
        "EC_POINT_mul");
  check(EC_POINT_invert(c.group.get(), pt.get(), ctx.get()), "EC_POINT_invert");
  return from_point(pt.get(), ctx.get());
}

}  // namespace wsim::crypto
