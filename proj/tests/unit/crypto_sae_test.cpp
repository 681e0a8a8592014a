#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "wsim/common/rng.hpp"
#include "wsim/crypto/sae.hpp"

namespace wsim::crypto {
namespace {

const std::vector<test::Record>& vectors() {
  static const auto all = test::load_fixture("sae_vectors.txt");
  return all;
}

Passphrase pass_of(const std::string& hex) {
  const Bytes b = from_hex(hex);
  return Passphrase(std::string(b.begin(), b.end()));
}

MacAddr mac_of(const std::string& hex) { return MacAddr(array_from_hex<6>(hex)); }

SaeGroupElement element_of(const std::string& hex64) {
  const auto raw = array_from_hex<64>(hex64);
  ByteArray<32> x{}, y{};
  std::copy(raw.begin(), raw.begin() + 32, x.begin());
  std::copy(raw.begin() + 32, raw.end(), y.begin());
  return SaeGroupElement::from_coordinates(x, y);
}

TEST(SaePwe, MatchesReferenceVectors) {
  const auto recs = test::records_of(vectors(), "pwe");
  ASSERT_GE(recs.size(), 8u);
  for (const auto& r : recs) {
    const auto pwe = sae_derive_pwe(pass_of(r.fields[0]), mac_of(r.fields[1]), mac_of(r.fields[2]));
    EXPECT_EQ(to_hex(pwe.x()), r.fields[3]);
    EXPECT_EQ(to_hex(pwe.y()), r.fields[4]);
  }
}

TEST(SaePwe, IndependentOfMacOrder) {
  const auto a = MacAddr::parse("B8:27:EB:6C:61:7A");
  const auto b = MacAddr::parse("02:00:00:00:00:01");
  const Passphrase p("12345678");
  EXPECT_EQ(sae_derive_pwe(p, a, b), sae_derive_pwe(p, b, a));
  EXPECT_NE(sae_derive_pwe(p, a, b), sae_derive_pwe(Passphrase("12345679"), a, b));
}

TEST(SaeExchange, MatchesReferenceTranscripts) {
  const auto recs = test::records_of(vectors(), "exchange");
  ASSERT_GE(recs.size(), 4u);
  for (const auto& r : recs) {
    const auto& f = r.fields;
    const auto pwe = sae_derive_pwe(pass_of(f[0]), mac_of(f[1]), mac_of(f[2]));
    const SaeSecret sa{array_from_hex<32>(f[3]), array_from_hex<32>(f[4])};
    const SaeSecret sb{array_from_hex<32>(f[5]), array_from_hex<32>(f[6])};
    const SaeCommit ca = sae_commit_from_secret(pwe, sa);
    const SaeCommit cb = sae_commit_from_secret(pwe, sb);
    EXPECT_EQ(to_hex(ca.scalar()), f[7]);
    EXPECT_EQ(ca.element(), element_of(f[8]));
    EXPECT_EQ(to_hex(cb.scalar()), f[9]);
    EXPECT_EQ(cb.element(), element_of(f[10]));

    const SaeKeys ka = sae_process_commit(sa, ca, cb, pwe);
    const SaeKeys kb = sae_process_commit(sb, cb, ca, pwe);
    EXPECT_EQ(ka, kb);
    EXPECT_EQ(to_hex(ka.kck), f[12]);
    EXPECT_EQ(to_hex(ka.pmk.bytes), f[13]);

    const SaeConfirm conf_a = sae_make_confirm(ka.kck, 1, ca, cb);
    const SaeConfirm conf_b = sae_make_confirm(kb.kck, 1, cb, ca);
    EXPECT_EQ(to_hex(conf_a.confirm_hash), f[14]);
    EXPECT_EQ(to_hex(conf_b.confirm_hash), f[15]);
    EXPECT_TRUE(sae_verify_confirm(kb.kck, conf_a, cb, ca));
    EXPECT_TRUE(sae_verify_confirm(ka.kck, conf_b, ca, cb));
  }
}

TEST(SaeExchange, RandomRunsAgreeOnlyWithSamePassword) {
  Rng rng(19);
  const auto a = MacAddr::parse("B8:27:EB:6C:61:7A");
  const auto b = MacAddr::parse("02:00:00:00:00:01");
  const auto pwe_ok = sae_derive_pwe(Passphrase("12345678"), a, b);
  const auto pwe_bad = sae_derive_pwe(Passphrase("12345679"), a, b);
  for (int i = 0; i < 200; ++i) {
    auto [ca, sa] = sae_make_commit(pwe_ok, rng);
    auto [cb, sb] = sae_make_commit(pwe_ok, rng);
    const auto ka = sae_process_commit(sa, ca, cb, pwe_ok);
    const auto kb = sae_process_commit(sb, cb, ca, pwe_ok);
    ASSERT_EQ(ka, kb);
    ASSERT_TRUE(sae_verify_confirm(kb.kck, sae_make_confirm(ka.kck, 1, ca, cb), cb, ca));

    auto [cw, sw] = sae_make_commit(pwe_bad, rng);
    const auto kw = sae_process_commit(sw, cw, ca, pwe_bad);
    const auto ka2 = sae_process_commit(sa, ca, cw, pwe_ok);
    ASSERT_NE(kw.pmk, ka2.pmk);
    ASSERT_FALSE(sae_verify_confirm(ka2.kck, sae_make_confirm(kw.kck, 1, cw, ca), ca, cw));
  }
}

TEST(SaeExchange, ConfirmBindsSendConfirmCounter) {
  Rng rng(3);
  const auto pwe = sae_derive_pwe(Passphrase("12345678"), MacAddr::local_from_bits(1),
                                  MacAddr::local_from_bits(2));
  auto [ca, sa] = sae_make_commit(pwe, rng);
  auto [cb, sb] = sae_make_commit(pwe, rng);
  const auto k = sae_process_commit(sa, ca, cb, pwe);
  SaeConfirm c = sae_make_confirm(k.kck, 1, ca, cb);
  c.send_confirm = 2;
  EXPECT_FALSE(sae_verify_confirm(k.kck, c, cb, ca));
}

TEST(SaeExchange, RejectsReflectedCommit) {
  Rng rng(5);
  const auto pwe = sae_derive_pwe(Passphrase("12345678"), MacAddr::local_from_bits(1),
                                  MacAddr::local_from_bits(2));
  auto [ca, sa] = sae_make_commit(pwe, rng);
  try {
    sae_process_commit(sa, ca, ca, pwe);
    FAIL() << "reflection accepted";
  } catch (const CryptoError& e) {
    EXPECT_EQ(e.code(), CryptoErrc::kReflectionDetected);
  }
}

TEST(SaeExchange, RejectsIdentitySharedPoint) {
  Rng rng(6);
  const auto pwe = sae_derive_pwe(Passphrase("12345678"), MacAddr::local_from_bits(1),
                                  MacAddr::local_from_bits(2));
  auto [ca, sa] = sae_make_commit(pwe, rng);
  const Scalar s = random_scalar(rng);
  const SaeCommit evil(s, negated_multiple(pwe, s));
  try {
    sae_process_commit(sa, ca, evil, pwe);
    FAIL() << "identity accepted";
  } catch (const CryptoError& e) {
    EXPECT_EQ(e.code(), CryptoErrc::kInvalidPeerElement);
  }
}

TEST(SaeCommitMsg, ScalarRangeEnforced) {
  Rng rng(8);
  const auto elem = random_group_element(rng);
  Scalar zero{};
  Scalar one{};
  one[31] = 1;
  Scalar two{};
  two[31] = 2;
  Scalar all_ff;
  all_ff.fill(0xff);
  EXPECT_FALSE(scalar_in_range(zero));
  EXPECT_FALSE(scalar_in_range(one));
  EXPECT_TRUE(scalar_in_range(two));
  EXPECT_FALSE(scalar_in_range(all_ff));
  EXPECT_THROW(SaeCommit(one, elem), CryptoError);
  EXPECT_NO_THROW(SaeCommit(two, elem));
  for (int i = 0; i < 100; ++i) ASSERT_TRUE(scalar_in_range(random_scalar(rng)));
}

TEST(SaeGroupElementTest, RejectsOffCurvePoints) {
  Rng rng(9);
  const auto elem = random_group_element(rng);
  auto y = elem.y();
  y[31] ^= 1;
  try {
    SaeGroupElement::from_coordinates(elem.x(), y);
    FAIL() << "off-curve point accepted";
  } catch (const CryptoError& e) {
    EXPECT_EQ(e.code(), CryptoErrc::kInvalidGroupElement);
  }
}

TEST(AnticlogTokens, MatchReferenceVectors) {
  const auto recs = test::records_of(vectors(), "token");
  ASSERT_GE(recs.size(), 3u);
  for (const auto& r : recs) {
    const auto secret = array_from_hex<32>(r.fields[0]);
    const auto mac = mac_of(r.fields[1]);
    const Tick issued = std::stoull(r.fields[2], nullptr, 16);
    const auto tok = make_anticlog_token(secret, mac, issued);
    EXPECT_EQ(to_hex(tok.tag), r.fields[3]);
    EXPECT_TRUE(verify_anticlog_token(secret, tok, mac, issued + 10, 5000));
  }
}

TEST(AnticlogTokens, BoundToMacSecretAndLifetime) {
  Rng rng(12);
  const auto secret = rng.bytes<32>();
  const auto mac = MacAddr::local_from_bits(42);
  const auto tok = make_anticlog_token(secret, mac, 1000);
  EXPECT_TRUE(verify_anticlog_token(secret, tok, mac, 1000, 5000));
  EXPECT_TRUE(verify_anticlog_token(secret, tok, mac, 6000, 5000));
  EXPECT_FALSE(verify_anticlog_token(secret, tok, mac, 6001, 5000));
  EXPECT_FALSE(verify_anticlog_token(secret, tok, MacAddr::local_from_bits(43), 1000, 5000));
  EXPECT_FALSE(verify_anticlog_token(rng.bytes<32>(), tok, mac, 1000, 5000));
  auto forged = tok;
  forged.issued_at = 2000;
  EXPECT_FALSE(verify_anticlog_token(secret, forged, mac, 2000, 5000));
}

}  // namespace
}  // namespace wsim::crypto
