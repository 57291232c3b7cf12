#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hilbx/cipher.hpp"
#include "hilbx/rational.hpp"

namespace hilbx::envelope {

// Textbook unpadded RSA-style wrapping of session parameters. It is
// deliberately insecure: deterministic, malleable, and sized for desk
// experiments. Do not use it to protect anything.

struct PublicKey {
  BigInt modulus;
  BigInt exponent;
};

struct PrivateKey {
  BigInt modulus;
  BigInt exponent;
};

/// N = p q with p != q prime, e d = 1 mod lcm(p-1, q-1).
struct ToyKeypair {
  BigInt p;
  BigInt q;
  BigInt modulus;
  BigInt e;
  BigInt d;

  PublicKey public_key() const { return {modulus, e}; }
  PrivateKey private_key() const { return {modulus, d}; }

  /// Rechecks every invariant; throws DomainError.
  void validate() const;
};

/// lcm(p - 1, q - 1).
BigInt carmichael(const BigInt& p, const BigInt& q);

/// Keypair from fixed primes. Throws DomainError if p or q is not prime,
/// p == q, or gcd(e, lambda) != 1.
ToyKeypair keypair_from_primes(const BigInt& p, const BigInt& q, const BigInt& e);

/// Random keypair with a modulus of about bit_size bits (bit_size >= 16).
/// Prime pairs for which e = 65537 is not coprime to lambda are redrawn.
ToyKeypair toy_keygen(std::size_t bit_size, std::mt19937_64& rng);

/// m^e mod N. Throws DomainError unless 0 <= m < N.
BigInt encrypt_chunk(const PublicKey& pub, const BigInt& m);
BigInt decrypt_chunk(const PrivateKey& priv, const BigInt& c);

/// Bytes per chunk: the largest k with 256^k <= N - 1.
std::size_t chunk_bytes(const BigInt& modulus);

/// Session parameters travel as the key-file text, framed with a 4-byte
/// big-endian length and cut into chunk_bytes(N)-byte big-endian integers.
std::vector<BigInt> wrap_session(const PublicKey& pub, const SessionKey& blob);

/// Throws FormatError when the framing or the embedded key text is damaged.
SessionKey unwrap_session(const PrivateKey& priv, const std::vector<BigInt>& wrapped);

// HILBXENV1 followed by one decimal chunk per line.
std::string format_envelope(const std::vector<BigInt>& chunks);
std::vector<BigInt> parse_envelope(std::string_view text);

// HILBXPUB1 / N= / e=   and   HILBXPRIV1 / N= / e= / d= / p= / q=
std::string format_public(const PublicKey& pub);
PublicKey parse_public(std::string_view text);
std::string format_keypair(const ToyKeypair& kp);
ToyKeypair parse_keypair(std::string_view text);

}  // namespace hilbx::envelope
