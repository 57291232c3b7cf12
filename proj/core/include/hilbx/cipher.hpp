#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hilbx/matrix.hpp"
#include "hilbx/rational.hpp"

namespace hilbx {

using Bytes = std::vector<std::uint8_t>;

/// Secret material of one session: Hilbert order n (prime, secret), public
/// block size m < n, pad K of n - m bytes appended to every block, and the
/// m-byte CBC initialization vector.
///
/// The construction is linear and offers no real-world security. It exists
/// to exercise exact Hilbert arithmetic end to end.
struct SessionKey {
  std::size_t n = 0;
  std::size_t m = 0;
  Bytes pad;
  Bytes iv;

  /// Checks n > m >= 1, |pad| = n - m and |iv| = m. Primality is a keygen
  /// policy and is not rechecked here.
  void validate() const;

  friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

/// One encrypted block: the n x 1 column H * [P; K] with exact entries.
struct CipherBlock {
  std::vector<Rational> entries;

  std::size_t size() const { return entries.size(); }
  friend bool operator==(const CipherBlock&, const CipherBlock&) = default;
};

struct CiphertextMessage {
  int version = 1;
  std::size_t m = 0;
  std::vector<CipherBlock> blocks;

  friend bool operator==(const CiphertextMessage&, const CiphertextMessage&) = default;
};

bool is_prime(std::uint64_t v);
/// Smallest prime >= v.
std::uint64_t next_prime(std::uint64_t v);

/// Draws pad and iv from rng. Without n_request, n is the smallest prime
/// >= 2m + 1. Throws DomainError when m == 0 or n_request is not a prime > m.
SessionKey keygen(std::size_t m, std::optional<std::size_t> n_request, std::mt19937_64& rng);

/// Plaintext bytes (rows 1..m) followed by pad bytes, as an integer column.
Matrix encode_block(std::span<const std::uint8_t> bytes, std::span<const std::uint8_t> pad);
/// Same, checking |bytes| = key.m.
Matrix encode_block(const SessionKey& key, std::span<const std::uint8_t> bytes);

/// Cached multiply-by-H and multiply-by-H^-1 kernels for one order n.
///
/// Row i of H is applied as (sum_j v_j * L_i/(i+j-1)) / L_i with
/// L_i = lcm(i .. i+n-1), so encryption touches only integers. The inverse
/// uses the integer closed form from special::hilbert_inverse_integers.
class HilbertKernel {
 public:
  explicit HilbertKernel(std::size_t n);

  /// Shared instance for order n; safe to call from several threads.
  static std::shared_ptr<const HilbertKernel> get(std::size_t n);

  std::size_t order() const { return n_; }

  /// H * v for a byte-valued column v of length n.
  CipherBlock apply(std::span<const std::uint8_t> column) const;

  /// First `rows` entries of H^-1 * c.
  std::vector<Rational> solve_prefix(const CipherBlock& c, std::size_t rows) const;

  /// First `rows` entries of H^-1 * c when the whole preimage is a byte
  /// vector; nullopt otherwise (the caller falls back to solve_prefix).
  std::optional<Bytes> try_solve_bytes(const CipherBlock& c, std::size_t rows) const;

  const std::vector<BigInt>& inverse() const { return inverse_; }

 private:
  std::size_t n_;
  std::vector<BigInt> row_lcm_;
  // Row i of L_i * H as runs of columns sharing a word-sized denominator D:
  // sum_j v_j L_i/(i+j-1) = sum_runs (L_i/D) * sum_{j in run} v_j D/(i+j-1).
  struct Run {
    std::size_t begin, end;
    BigInt scale;  // L_i / D
  };
  std::vector<std::vector<Run>> runs_;
  std::vector<std::uint64_t> small_;  // row-major D / (i+j-1)
  void row_numerator(std::size_t i, std::span<const std::uint8_t> v, BigInt& acc) const;
  // Per row, the prime powers of L_i grouped into word-sized moduli.
  struct PrimePower {
    std::uint64_t p, pe;
  };
  struct Chunk {
    std::uint64_t modulus;
    std::vector<PrimePower> powers;
  };
  std::vector<std::vector<Chunk>> row_chunks_;
  std::vector<BigInt> inverse_;
  BigInt common_;  // lcm(1..2n-1)
  std::vector<std::uint64_t> inverse_mod_;
};

CipherBlock encrypt_block(const SessionKey& key, std::span<const std::uint8_t> block);

/// Recovers the m plaintext bytes of one block. Throws IntegrityError if the
/// block length differs from key.n or a recovered entry is not an integer in
/// 0..255. Pad rows are not computed.
Bytes decrypt_block(const SessionKey& key, const CipherBlock& cblock);

/// "<num>/<den>" entries joined by ';', with no trailing separator.
std::string serialize_block(const CipherBlock& cblock);

/// Compresses a cipher block to m bytes for chaining: the canonical
/// serialization s is folded as b[k mod m] = (31 b[k mod m] + s_k) mod 256.
Bytes chain_bytes(const CipherBlock& cblock, std::size_t m);

/// Appends p = m - (|data| mod m) bytes of value p and splits into m-byte blocks.
std::vector<Bytes> pad_message(std::span<const std::uint8_t> data, std::size_t m);

/// Inverse of pad_message over the concatenated blocks. Throws PaddingError.
Bytes unpad_message(std::span<const std::uint8_t> padded, std::size_t m);

/// CBC: C_i = E(P_i xor chain_{i-1}), chain_0 = iv, chain_i = chain_bytes(C_i).
CiphertextMessage cbc_encrypt(const SessionKey& key, std::span<const std::uint8_t> data);

/// Decrypts every block and returns the still-padded plaintext.
Bytes cbc_decrypt_raw(const SessionKey& key, const CiphertextMessage& msg);

/// Full CBC decryption including padding removal.
Bytes cbc_decrypt(const SessionKey& key, const CiphertextMessage& msg);

/// Single-block mode with no chaining; equal plaintext blocks give equal
/// cipher blocks. Kept for comparison with CBC.
CiphertextMessage ecb_encrypt(const SessionKey& key, std::span<const std::uint8_t> data);
Bytes ecb_decrypt(const SessionKey& key, const CiphertextMessage& msg);

// Text formats (LF line endings, bit-exact).
//
// Key file:         HILBXKEY1 / n=<dec> / m=<dec> / K=<hex> / IV=<hex>
// Ciphertext file:  HILBXCT1 / m=<dec> t=<dec> / t lines of n "<num>/<den>"

std::string format_key(const SessionKey& key);
SessionKey parse_key(std::string_view text);

std::string format_ciphertext(const CiphertextMessage& msg);
CiphertextMessage parse_ciphertext(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

}  // namespace hilbx
