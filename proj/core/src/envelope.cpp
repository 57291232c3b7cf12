#include "hilbx/envelope.hpp"

#include "hilbx/errors.hpp"
#include "text.hpp"

namespace hilbx::envelope {

namespace {

constexpr int kPrimeRounds = 30;

bool probably_prime(const BigInt& v) { return v > 1 && mpz_probab_prime_p(v.get_mpz_t(), kPrimeRounds) > 0; }

BigInt parse_decimal(std::string_view s, std::string_view what) {
  if (s.empty()) throw FormatError(std::string(what) + ": empty number");
  for (char c : s)
    if (c < '0' || c > '9') throw FormatError(std::string(what) + ": bad decimal '" + std::string(s) + "'");
  return BigInt(std::string(s), 10);
}

BigInt random_prime(std::size_t bits, gmp_randclass& gen) {
  while (true) {
    BigInt c = gen.get_z_bits(bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);  // full length
    mpz_setbit(c.get_mpz_t(), 0);         // odd
    if (probably_prime(c)) return c;
  }
}

}  // namespace

BigInt carmichael(const BigInt& p, const BigInt& q) {
  BigInt l;
  const BigInt a = p - 1, b = q - 1;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

void ToyKeypair::validate() const {
  if (!probably_prime(p) || !probably_prime(q)) throw DomainError("keypair factors must be prime");
  if (p == q) throw DomainError("keypair factors must be distinct");
  if (modulus != p * q) throw DomainError("modulus is not p*q");
  const BigInt lambda = carmichael(p, q);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), lambda.get_mpz_t());
  if (g != 1) throw DomainError("public exponent is not coprime to lambda(N)");
  const BigInt ed = e * d;
  if (BigInt(ed % lambda) != 1)
    throw DomainError("e*d is not 1 mod lambda(N)");
}

ToyKeypair keypair_from_primes(const BigInt& p, const BigInt& q, const BigInt& e) {
  ToyKeypair kp{p, q, p * q, e, 0};
  if (!probably_prime(p) || !probably_prime(q)) throw DomainError("keypair factors must be prime");
  if (p == q) throw DomainError("keypair factors must be distinct");
  const BigInt lambda = carmichael(p, q);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), lambda.get_mpz_t());
  if (g != 1) throw DomainError("public exponent " + e.get_str() + " is not coprime to lambda(N)=" + lambda.get_str());
  // d is taken mod phi(N), the textbook convention; it is also an inverse mod lambda(N).
  const BigInt phi = (p - 1) * (q - 1);
  mpz_invert(kp.d.get_mpz_t(), e.get_mpz_t(), phi.get_mpz_t());
  kp.validate();
  return kp;
}

ToyKeypair toy_keygen(std::size_t bit_size, std::mt19937_64& rng) {
  if (bit_size < 16) throw DomainError("toy modulus needs at least 16 bits");
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  const BigInt e = 65537;
  const std::size_t pbits = bit_size / 2;
  const std::size_t qbits = bit_size - pbits;
  while (true) {
    const BigInt p = random_prime(pbits, gen);
    const BigInt q = random_prime(qbits, gen);
    if (p == q) continue;
    BigInt g;
    const BigInt lambda = carmichael(p, q);
    mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), lambda.get_mpz_t());
    if (g != 1) continue;
    return keypair_from_primes(p, q, e);
  }
}

BigInt encrypt_chunk(const PublicKey& pub, const BigInt& m) {
  if (m < 0 || m >= pub.modulus) throw DomainError("chunk must lie in [0, N)");
  BigInt c;
  mpz_powm(c.get_mpz_t(), m.get_mpz_t(), pub.exponent.get_mpz_t(), pub.modulus.get_mpz_t());
  return c;
}

BigInt decrypt_chunk(const PrivateKey& priv, const BigInt& c) {
  if (c < 0 || c >= priv.modulus) throw DomainError("chunk must lie in [0, N)");
  BigInt m;
  mpz_powm(m.get_mpz_t(), c.get_mpz_t(), priv.exponent.get_mpz_t(), priv.modulus.get_mpz_t());
  return m;
}

std::size_t chunk_bytes(const BigInt& modulus) {
  const BigInt top = modulus - 1;
  const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
  return top > 0 ? bits / 8 : 0;
}

std::vector<BigInt> wrap_session(const PublicKey& pub, const SessionKey& blob) {
  const std::size_t k = chunk_bytes(pub.modulus);
  if (k == 0) throw DomainError("modulus too small to carry a byte");
  const std::string text = format_key(blob);
  Bytes framed;
  const auto len = static_cast<std::uint32_t>(text.size());
  for (int shift = 24; shift >= 0; shift -= 8) framed.push_back(static_cast<std::uint8_t>(len >> shift));
  framed.insert(framed.end(), text.begin(), text.end());
  framed.resize((framed.size() + k - 1) / k * k, 0);

  std::vector<BigInt> out;
  for (std::size_t off = 0; off < framed.size(); off += k) {
    BigInt chunk;
    mpz_import(chunk.get_mpz_t(), k, 1, 1, 1, 0, framed.data() + off);
    out.push_back(encrypt_chunk(pub, chunk));
  }
  return out;
}

SessionKey unwrap_session(const PrivateKey& priv, const std::vector<BigInt>& wrapped) {
  const std::size_t k = chunk_bytes(priv.modulus);
  if (k == 0) throw DomainError("modulus too small to carry a byte");
  Bytes framed;
  for (const auto& c : wrapped) {
    if (c < 0 || c >= priv.modulus) throw FormatError("envelope chunk outside [0, N)");
    const BigInt m = decrypt_chunk(priv, c);
    if (mpz_sizeinbase(m.get_mpz_t(), 2) > 8 * k)
      throw FormatError("envelope chunk decodes to more than " + std::to_string(k) + " bytes");
    Bytes part(k, 0);
    std::size_t count = 0;
    Bytes raw(k + 1, 0);
    mpz_export(raw.data(), &count, 1, 1, 1, 0, m.get_mpz_t());
    std::copy(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(count), part.begin() + static_cast<std::ptrdiff_t>(k - count));
    framed.insert(framed.end(), part.begin(), part.end());
  }
  if (framed.size() < 4) throw FormatError("envelope too short for its length prefix");
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = len << 8 | framed[i];
  if (len > framed.size() - 4 || framed.size() - 4 - len >= k)
    throw FormatError("envelope length prefix does not match its chunk count");
  for (std::size_t i = 4 + len; i < framed.size(); ++i)
    if (framed[i] != 0) throw FormatError("envelope framing has nonzero trailing bytes");
  return parse_key(std::string_view(reinterpret_cast<const char*>(framed.data()) + 4, len));
}

std::string format_envelope(const std::vector<BigInt>& chunks) {
  std::string out = "HILBXENV1\n";
  for (const auto& c : chunks) out += c.get_str(10) + "\n";
  return out;
}

std::vector<BigInt> parse_envelope(std::string_view text) {
  constexpr std::string_view what = "envelope file";
  const auto lines = detail::split_lines(text, what);
  if (lines.empty() || lines[0] != "HILBXENV1") throw FormatError("envelope file: expected HILBXENV1 header");
  std::vector<BigInt> out;
  for (std::size_t i = 1; i < lines.size(); ++i) out.push_back(parse_decimal(lines[i], what));
  return out;
}

std::string format_public(const PublicKey& pub) {
  return "HILBXPUB1\nN=" + pub.modulus.get_str(10) + "\ne=" + pub.exponent.get_str(10) + "\n";
}

PublicKey parse_public(std::string_view text) {
  constexpr std::string_view what = "public key file";
  const auto lines = detail::split_lines(text, what);
  if (lines.size() != 3 || lines[0] != "HILBXPUB1") throw FormatError("public key file: expected HILBXPUB1 and 2 fields");
  return {parse_decimal(detail::field(lines[1], "N", what), what), parse_decimal(detail::field(lines[2], "e", what), what)};
}

std::string format_keypair(const ToyKeypair& kp) {
  return "HILBXPRIV1\nN=" + kp.modulus.get_str(10) + "\ne=" + kp.e.get_str(10) + "\nd=" + kp.d.get_str(10) +
         "\np=" + kp.p.get_str(10) + "\nq=" + kp.q.get_str(10) + "\n";
}

ToyKeypair parse_keypair(std::string_view text) {
  constexpr std::string_view what = "private key file";
  const auto lines = detail::split_lines(text, what);
  if (lines.size() != 6 || lines[0] != "HILBXPRIV1") throw FormatError("private key file: expected HILBXPRIV1 and 5 fields");
  ToyKeypair kp;
  kp.modulus = parse_decimal(detail::field(lines[1], "N", what), what);
  kp.e = parse_decimal(detail::field(lines[2], "e", what), what);
  kp.d = parse_decimal(detail::field(lines[3], "d", what), what);
  kp.p = parse_decimal(detail::field(lines[4], "p", what), what);
  kp.q = parse_decimal(detail::field(lines[5], "q", what), what);
  try {
    kp.validate();
  } catch (const DomainError& e) {
    throw FormatError(std::string("private key file: ") + e.what());
  }
  return kp;
}

}  // namespace hilbx::envelope
