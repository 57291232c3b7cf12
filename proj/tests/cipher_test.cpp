#include <gtest/gtest.h>

#include "hilbx/cipher.hpp"
#include "hilbx/classical.hpp"
#include "hilbx/errors.hpp"
#include "hilbx/special.hpp"
#include "oracles.hpp"

using namespace hilbx;

namespace {

Rational q(long n, long d = 1) { return Rational::canonical(n, d); }

SessionKey fixed_key(std::size_t n, std::size_t m, std::uint8_t pad_byte = 0, std::uint8_t iv_byte = 0) {
  return SessionKey{n, m, Bytes(n - m, pad_byte), Bytes(m, iv_byte)};
}

Bytes make_data(std::mt19937_64& rng, std::size_t len) {
  Bytes out(len);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

SessionKey seeded_key(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return keygen(m, n, rng);
}

}  // namespace

TEST(Primes, Basics) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
  EXPECT_FALSE(is_prime(289));
  EXPECT_EQ(next_prime(7), 7u);
  EXPECT_EQ(next_prime(8), 11u);
  EXPECT_EQ(next_prime(33), 37u);
}

TEST(Keygen, DefaultOrder) {
  std::mt19937_64 rng(1);
  const auto k3 = keygen(3, std::nullopt, rng);
  EXPECT_EQ(k3.n, 7u);
  EXPECT_EQ(k3.pad.size(), 4u);
  EXPECT_EQ(k3.iv.size(), 3u);
  const auto k1 = keygen(1, std::nullopt, rng);
  EXPECT_EQ(k1.n, 3u);
  EXPECT_EQ(k1.pad.size(), 2u);
  EXPECT_EQ(keygen(16, std::nullopt, rng).n, 37u);
}

TEST(Keygen, ExplicitOrder) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(keygen(3, 29, rng).n, 29u);
  EXPECT_THROW(keygen(3, 6, rng), DomainError);
  EXPECT_THROW(keygen(3, 3, rng), DomainError);
  EXPECT_THROW(keygen(5, 2, rng), DomainError);
  EXPECT_THROW(keygen(0, std::nullopt, rng), DomainError);
}

TEST(Keygen, SeededIsDeterministic) { EXPECT_EQ(seeded_key(4, 11, 99), seeded_key(4, 11, 99)); }

TEST(EncodeBlock, Placement) {
  const Bytes b{1, 2, 3}, p{0, 0};
  EXPECT_EQ(encode_block(b, p), Matrix::column({q(1), q(2), q(3), q(0), q(0)}));
  EXPECT_EQ(encode_block(Bytes(3, 0), Bytes(2, 0)), Matrix(5, 1));
  EXPECT_EQ(encode_block(Bytes{255}, Bytes{7, 9}), Matrix::column({q(255), q(7), q(9)}));
  EXPECT_THROW(encode_block(fixed_key(5, 3), Bytes{1, 2}), DomainError);
}

TEST(EncryptBlock, HilbertFiveExample) {
  const auto key = fixed_key(5, 3);
  const CipherBlock c = encrypt_block(key, Bytes{1, 2, 3});
  const std::vector<Rational> expected{q(3), q(23, 12), q(43, 30), q(23, 20), q(101, 105)};
  EXPECT_EQ(c.entries, expected);
  EXPECT_EQ(c.entries, oracle::hilbert_times({1, 2, 3, 0, 0}));
}

TEST(EncryptBlock, ZeroBlockIsZero) {
  const auto c = encrypt_block(fixed_key(7, 3), Bytes(3, 0));
  for (const auto& e : c.entries) EXPECT_TRUE(e.is_zero());
}

TEST(EncryptBlock, KernelMatchesGenericProduct) {
  std::mt19937_64 rng(17);
  for (std::size_t n : {2u, 7u, 13u, 29u}) {
    const auto key = seeded_key(n / 2 == 0 ? 1 : n / 2, n, rng());
    const Matrix h = special::build(special::SpecialSpec::hilbert(n));
    for (int t = 0; t < 5; ++t) {
      const Bytes block = make_data(rng, key.m);
      const Matrix expected = multiply(h, encode_block(block, key.pad));
      const auto c = encrypt_block(key, block);
      ASSERT_EQ(Matrix::column(c.entries), expected) << "n=" << n;
    }
  }
}

TEST(HilbertKernel, ApplyIsCanonicalForEveryOrder) {
  // Sparse and constant columns give numerators sharing many factors with
  // the row denominators, which exercises the reduction.
  std::mt19937_64 rng(19);
  for (std::size_t n = 1; n <= 64; ++n) {
    const Matrix h = special::build(special::SpecialSpec::hilbert(n));
    const auto kernel = HilbertKernel::get(n);
    std::vector<Bytes> columns{Bytes(n, 255), Bytes(n, 1), make_data(rng, n)};
    for (std::size_t k = 0; k < n; k += 7) {
      Bytes unit(n, 0);
      unit[k] = static_cast<std::uint8_t>(1 + k % 200);
      columns.push_back(unit);
    }
    for (const auto& v : columns) {
      std::vector<Rational> col(v.begin(), v.end());
      const Matrix expected = multiply(h, Matrix::column(col));
      ASSERT_EQ(Matrix::column(kernel->apply(v).entries), expected) << "n=" << n;
    }
  }
}

TEST(DecryptBlock, InvertsExample) {
  const auto key = fixed_key(5, 3);
  EXPECT_EQ(decrypt_block(key, encrypt_block(key, Bytes{1, 2, 3})), (Bytes{1, 2, 3}));
  CipherBlock zero{std::vector<Rational>(5)};
  EXPECT_EQ(decrypt_block(key, zero), Bytes(3, 0));
}

TEST(DecryptBlock, TamperedEntryIsIntegrityError) {
  const auto key = fixed_key(5, 3);
  CipherBlock c = encrypt_block(key, Bytes{1, 2, 3});
  c.entries[0] += q(1);
  // H^-1 e_1 is the first column of the inverse: 25, -300, 1050, ...
  EXPECT_THROW(decrypt_block(key, c), IntegrityError);
}

TEST(DecryptBlock, RandomRoundTrip) {
  std::mt19937_64 rng(23);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{7, 3}, {29, 16}, {97, 64}}) {
    const auto key = seeded_key(m, n, rng());
    for (int t = 0; t < 10; ++t) {
      const Bytes block = make_data(rng, m);
      EXPECT_EQ(decrypt_block(key, encrypt_block(key, block)), block);
    }
  }
}

TEST(HilbertKernel, FastSolveAgreesWithExactSolve) {
  std::mt19937_64 rng(29);
  for (std::size_t n : {1u, 5u, 29u, 97u}) {
    const auto kernel = HilbertKernel::get(n);
    for (int t = 0; t < 5; ++t) {
      const Bytes v = make_data(rng, n);
      const auto c = kernel->apply(v);
      const auto fast = kernel->try_solve_bytes(c, n);
      ASSERT_TRUE(fast.has_value());
      EXPECT_EQ(*fast, v);
      const auto exact = kernel->solve_prefix(c, n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(exact[i], Rational(static_cast<std::int64_t>(v[i])));
    }
  }
}

TEST(HilbertKernel, FastSolveDeclinesNonBytePreimage) {
  const auto kernel = HilbertKernel::get(5);
  CipherBlock c = kernel->apply(Bytes{1, 2, 3, 4, 5});
  c.entries[4] += q(1, 3);
  EXPECT_FALSE(kernel->try_solve_bytes(c, 5).has_value());
}

TEST(DecryptBlock, NonBytePadRowsStillDecrypt) {
  // Only the message rows must be bytes; a preimage with pad rows outside
  // 0..255 is still accepted by the exact path.
  const auto key = fixed_key(3, 1);
  const auto h = hilbx::special::build(hilbx::special::SpecialSpec::hilbert(3));
  const auto c = hilbx::multiply(h, Matrix::column({q(7), q(-4), q(1000)}));
  CipherBlock block{std::vector<Rational>(c.entries().begin(), c.entries().end())};
  EXPECT_FALSE(HilbertKernel::get(3)->try_solve_bytes(block, 1).has_value());
  EXPECT_EQ(decrypt_block(key, block), Bytes{7});
}

TEST(DecryptBlock, LengthMismatchRejected) {
  const auto key = fixed_key(7, 3);
  CipherBlock c = encrypt_block(key, Bytes{1, 2, 3});
  c.entries.pop_back();
  EXPECT_THROW(decrypt_block(key, c), IntegrityError);
}

TEST(DecryptBlock, WrongOrderDoesNotYieldBytes) {
  // Reinterpret a cipher block of order n under orders n' != n.
  std::mt19937_64 rng(31);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto key = seeded_key(3, 11, seed);
    const auto c = encrypt_block(key, make_data(rng, 3));
    for (std::size_t other : {5u, 7u, 13u, 17u}) {
      auto wrong = seeded_key(3, other, seed);
      CipherBlock reshaped = c;
      reshaped.entries.resize(other, Rational(0));
      EXPECT_THROW(decrypt_block(wrong, reshaped), IntegrityError) << "n'=" << other << " seed=" << seed;
    }
  }
}

TEST(ChainBytes, HandFold) {
  CipherBlock c{{q(3)}};
  EXPECT_EQ(serialize_block(c), "3/1");
  EXPECT_EQ(chain_bytes(c, 1), Bytes{85});
}

TEST(ChainBytes, SerializationJoinsWithSemicolon) {
  CipherBlock c{{q(3), q(-23, 12), q(0)}};
  EXPECT_EQ(serialize_block(c), "3/1;-23/12;0/1");
}

TEST(ChainBytes, Deterministic) {
  const auto key = fixed_key(7, 3, 5);
  const auto a = encrypt_block(key, Bytes{9, 8, 7});
  const auto b = encrypt_block(key, Bytes{9, 8, 7});
  EXPECT_EQ(chain_bytes(a, 3), chain_bytes(b, 3));
  EXPECT_NE(chain_bytes(a, 3), chain_bytes(encrypt_block(key, Bytes{9, 8, 6}), 3));
}

TEST(Padding, Examples) {
  const auto five = pad_message(Bytes(5, 0xaa), 3);
  ASSERT_EQ(five.size(), 2u);
  EXPECT_EQ(five[1].back(), 1);
  const auto three = pad_message(Bytes(3, 0xaa), 3);
  ASSERT_EQ(three.size(), 2u);
  EXPECT_EQ(three[1], (Bytes{3, 3, 3}));
  EXPECT_EQ(pad_message(Bytes{}, 4).size(), 1u);
}

TEST(Padding, RoundTrip) {
  std::mt19937_64 rng(41);
  for (std::size_t m : {1u, 3u, 16u, 64u}) {
    for (int t = 0; t < 30; ++t) {
      const Bytes data = make_data(rng, rng() % 200);
      Bytes flat;
      for (const auto& b : pad_message(data, m)) flat.insert(flat.end(), b.begin(), b.end());
      EXPECT_EQ(unpad_message(flat, m), data);
    }
  }
}

TEST(Padding, Malformed) {
  EXPECT_THROW(unpad_message(Bytes{}, 3), PaddingError);
  EXPECT_THROW(unpad_message(Bytes{1, 2}, 3), PaddingError);
  EXPECT_THROW(unpad_message(Bytes{1, 2, 0}, 3), PaddingError);
  EXPECT_THROW(unpad_message(Bytes{1, 2, 4}, 3), PaddingError);
  EXPECT_THROW(unpad_message(Bytes{1, 3, 2}, 3), PaddingError);
  EXPECT_EQ(unpad_message(Bytes{1, 2, 2}, 3), Bytes{1});
}

TEST(Cbc, IdenticalBlocksDiffer) {
  const auto key = seeded_key(3, 7, 5);
  const auto msg = cbc_encrypt(key, Bytes{4, 5, 6, 4, 5, 6});
  ASSERT_EQ(msg.blocks.size(), 3u);
  EXPECT_NE(msg.blocks[0], msg.blocks[1]);
}

TEST(Cbc, IvChangesFirstBlock) {
  auto key = seeded_key(3, 7, 5);
  const auto a = cbc_encrypt(key, Bytes{4, 5, 6});
  key.iv[1] ^= 1;
  const auto b = cbc_encrypt(key, Bytes{4, 5, 6});
  EXPECT_NE(a.blocks[0], b.blocks[0]);
}

TEST(Cbc, RoundTripSmallSizes) {
  std::mt19937_64 rng(43);
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{7, 3}, {29, 16}}) {
    const auto key = seeded_key(m, n, rng());
    for (std::size_t len = 0; len <= 70; ++len) {
      const Bytes data = make_data(rng, len);
      const auto msg = cbc_encrypt(key, data);
      for (const auto& b : msg.blocks) ASSERT_EQ(b.size(), n);
      ASSERT_EQ(cbc_decrypt(key, msg), data) << "len=" << len;
    }
  }
}

TEST(Cbc, RoundTripLarge) {
  std::mt19937_64 rng(47);
  const auto key = seeded_key(64, 97, 3);
  const Bytes data = make_data(rng, 64 * 1024);
  EXPECT_EQ(cbc_decrypt(key, cbc_encrypt(key, data)), data);
}

TEST(Cbc, CorruptionIsLocal) {
  const auto key = seeded_key(3, 7, 8);
  const Bytes data{10, 11, 12, 20, 21, 22, 30, 31, 32};
  const auto msg = cbc_encrypt(key, data);
  ASSERT_EQ(msg.blocks.size(), 4u);

  // A non-byte perturbation is caught outright.
  auto broken = msg;
  broken.blocks[0].entries[0] += q(1);
  EXPECT_THROW(cbc_decrypt(key, broken), IntegrityError);

  // A well-formed substitute for C_1 garbles P_1 and P_2 but leaves P_3 alone.
  auto swapped = msg;
  swapped.blocks[0] = encrypt_block(key, Bytes{99, 98, 97});
  const Bytes raw = cbc_decrypt_raw(key, swapped);
  const Bytes good = cbc_decrypt_raw(key, msg);
  EXPECT_NE(Bytes(raw.begin(), raw.begin() + 3), Bytes(good.begin(), good.begin() + 3));
  EXPECT_NE(Bytes(raw.begin() + 3, raw.begin() + 6), Bytes(good.begin() + 3, good.begin() + 6));
  EXPECT_EQ(Bytes(raw.begin() + 6, raw.end()), Bytes(good.begin() + 6, good.end()));
}

TEST(Cbc, TruncatedMessageDecryptsPrefix) {
  const auto key = seeded_key(3, 7, 9);
  const Bytes data{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto msg = cbc_encrypt(key, data);
  const Bytes full = cbc_decrypt_raw(key, msg);
  msg.blocks.pop_back();
  const Bytes prefix = cbc_decrypt_raw(key, msg);
  EXPECT_EQ(prefix, Bytes(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(prefix.size())));
  EXPECT_EQ(Bytes(prefix.begin(), prefix.begin() + 9), Bytes(data.begin(), data.begin() + 9));
  EXPECT_THROW(cbc_decrypt(key, msg), PaddingError);  // last byte 9 is outside 1..3
}

TEST(Cbc, MismatchedBlockSizeRejected) {
  const auto key = seeded_key(3, 7, 9);
  auto msg = cbc_encrypt(key, Bytes{1});
  msg.m = 4;
  EXPECT_THROW(cbc_decrypt(key, msg), IntegrityError);
}

TEST(Ecb, EqualBlocksCollide) {
  const auto key = seeded_key(3, 7, 10);
  const Bytes data{1, 2, 3, 1, 2, 3, 1, 2, 3};
  const auto single = ecb_encrypt(key, data);
  EXPECT_EQ(single.blocks[0], single.blocks[1]);
  EXPECT_EQ(single.blocks[1], single.blocks[2]);
  EXPECT_EQ(ecb_decrypt(key, single), data);
  EXPECT_EQ(classical::find_repeats<CipherBlock>(single.blocks).size(), 3u);
  EXPECT_TRUE(classical::find_repeats<CipherBlock>(cbc_encrypt(key, data).blocks).empty());
}

TEST(Linearity, SumOfCipherBlocksIsCipherOfSum) {
  // Documented weakness: with a zero pad the block map is linear.
  const auto key = fixed_key(11, 5);
  const Bytes a{1, 2, 3, 4, 5}, b{10, 20, 30, 40, 50}, sum{11, 22, 33, 44, 55};
  const auto ca = encrypt_block(key, a), cb = encrypt_block(key, b), cs = encrypt_block(key, sum);
  for (std::size_t i = 0; i < key.n; ++i) EXPECT_EQ(ca.entries[i] + cb.entries[i], cs.entries[i]);
}

TEST(SessionKey, Validate) {
  EXPECT_NO_THROW(fixed_key(7, 3).validate());
  EXPECT_THROW((SessionKey{3, 3, {}, Bytes(3)}).validate(), DomainError);
  EXPECT_THROW((SessionKey{7, 3, Bytes(3), Bytes(3)}).validate(), DomainError);
  EXPECT_THROW((SessionKey{7, 3, Bytes(4), Bytes(2)}).validate(), DomainError);
}
