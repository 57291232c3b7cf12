#include "hilbx/cipher.hpp"

#include <map>
#include <numeric>
#include <mutex>

#include "hilbx/errors.hpp"
#include "hilbx/special.hpp"
#include "text.hpp"

namespace hilbx {

namespace {

std::string num(std::size_t v) { return std::to_string(v); }

Bytes random_bytes(std::size_t count, std::mt19937_64& rng) {
  Bytes out(count);
  std::uint64_t word = 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (k % 8 == 0) word = rng();
    out[k] = static_cast<std::uint8_t>(word >> (8 * (k % 8)));
  }
  return out;
}

void xor_into(Bytes& dst, std::span<const std::uint8_t> src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] ^= src[k];
}

}  // namespace

void SessionKey::validate() const {
  if (m < 1 || m > 255) throw DomainError("block size m must be in 1..255");
  if (n <= m) throw DomainError("hilbert order n=" + num(n) + " must exceed block size m=" + num(m));
  if (pad.size() != n - m) throw DomainError("pad K has " + num(pad.size()) + " bytes, expected n-m=" + num(n - m));
  if (iv.size() != m) throw DomainError("IV has " + num(iv.size()) + " bytes, expected m=" + num(m));
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (v % p == 0) return v == p;
  }
  for (std::uint64_t d = 17; d <= v / d; d += 2)
    if (v % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t v) {
  while (!is_prime(v)) ++v;
  return v;
}

SessionKey keygen(std::size_t m, std::optional<std::size_t> n_request, std::mt19937_64& rng) {
  if (m < 1 || m > 255) throw DomainError("block size m must be in 1..255");
  SessionKey key;
  key.m = m;
  if (n_request) {
    if (!is_prime(*n_request)) throw DomainError("requested order n=" + num(*n_request) + " is not prime");
    if (*n_request <= m) throw DomainError("requested order n=" + num(*n_request) + " must exceed m=" + num(m));
    key.n = *n_request;
  } else {
    key.n = next_prime(2 * m + 1);
  }
  // Raw engine output keeps seeded keys identical across standard libraries.
  key.pad = random_bytes(key.n - m, rng);
  key.iv = random_bytes(m, rng);
  return key;
}

Matrix encode_block(const SessionKey& key, std::span<const std::uint8_t> bytes) {
  key.validate();
  if (bytes.size() != key.m) throw DomainError("plaintext block has " + num(bytes.size()) + " bytes, expected m=" + num(key.m));
  return encode_block(bytes, key.pad);
}

Matrix encode_block(std::span<const std::uint8_t> bytes, std::span<const std::uint8_t> pad) {
  if (bytes.empty()) throw DomainError("plaintext block is empty");
  std::vector<Rational> col;
  col.reserve(bytes.size() + pad.size());
  for (auto b : bytes) col.emplace_back(static_cast<std::int64_t>(b));
  for (auto b : pad) col.emplace_back(static_cast<std::int64_t>(b));
  return Matrix::column(std::move(col));
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_p(const BigInt& v) {
  // mpz_fdiv_ui always returns the non-negative residue.
  return static_cast<std::uint64_t>(mpz_fdiv_ui(v.get_mpz_t(), kPrime));
}

std::uint64_t mul_p(std::uint64_t a, std::uint64_t b) {
  const auto t = static_cast<unsigned __int128>(a) * b;
  const std::uint64_t r = (static_cast<std::uint64_t>(t) & kPrime) + static_cast<std::uint64_t>(t >> 61);
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t add_p(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t inv_p(std::uint64_t a) {
  std::uint64_t r = 1;
  for (std::uint64_t e = kPrime - 2; e; e >>= 1, a = mul_p(a, a))
    if (e & 1) r = mul_p(r, a);
  return r;
}

}  // namespace

HilbertKernel::HilbertKernel(std::size_t n) : n_(n) {
  if (n < 1) throw DomainError("hilbert order must be >= 1");
  row_lcm_.resize(n);
  runs_.resize(n);
  small_.resize(n * n);
  // D <= 2^52 and at most 15 columns per run keep each run sum of byte
  // multiples below 2^64.
  constexpr std::uint64_t kMaxDen = std::uint64_t{1} << 52;
  constexpr std::size_t kMaxRun = 15;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i + j + 1);
    std::size_t j = 0;
    while (j < n) {
      const std::size_t begin = j;
      std::uint64_t d = 1;
      while (j < n && j - begin < kMaxRun) {
        const std::uint64_t next = std::lcm(d, static_cast<std::uint64_t>(i + j + 1));
        if (next > kMaxDen) break;
        d = next;
        ++j;
      }
      Run run{begin, j, BigInt()};
      mpz_divexact_ui(run.scale.get_mpz_t(), l.get_mpz_t(), d);
      for (std::size_t k = begin; k < j; ++k) small_[i * n + k] = d / (i + k + 1);
      runs_[i].push_back(std::move(run));
    }
    row_lcm_[i] = std::move(l);
  }
  row_chunks_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t p = 2; p <= i + n; ++p) {
      if (!is_prime(p)) continue;
      // v_p(L_i) is the largest e with a multiple of p^e in the window i+1..i+n.
      std::uint64_t pe = 1;
      while ((i + n) / (pe * p) > i / (pe * p)) pe *= p;
      if (pe == 1) continue;
      auto& chunks = row_chunks_[i];
      if (chunks.empty() || chunks.back().modulus > UINT64_MAX / pe) chunks.push_back({1, {}});
      chunks.back().modulus *= pe;
      chunks.back().powers.push_back({p, pe});
    }
  }
  common_ = 1;
  for (std::size_t k = 1; k < 2 * n; ++k) mpz_lcm_ui(common_.get_mpz_t(), common_.get_mpz_t(), k);
  inverse_ = special::hilbert_inverse_integers(n);
  inverse_mod_.resize(inverse_.size());
  for (std::size_t k = 0; k < inverse_.size(); ++k) inverse_mod_[k] = mod_p(inverse_[k]);
}

std::optional<Bytes> HilbertKernel::try_solve_bytes(const CipherBlock& c, std::size_t rows) const {
  if (c.size() != n_ || rows > n_) return std::nullopt;
  // Solve modulo a word prime, then confirm H * v == c exactly. A confirmed
  // byte vector v is the unique preimage, so no rational arithmetic is needed.
  // Batch inversion of the denominators: one exponentiation for the block.
  std::vector<std::uint64_t> den(n_), prefix(n_ + 1, 1), cm(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    den[j] = mod_p(c.entries[j].den_ref());
    if (den[j] == 0) return std::nullopt;
    prefix[j + 1] = mul_p(prefix[j], den[j]);
  }
  std::uint64_t inv = inv_p(prefix[n_]);
  for (std::size_t j = n_; j-- > 0;) {
    cm[j] = mul_p(mod_p(c.entries[j].num_ref()), mul_p(inv, prefix[j]));
    inv = mul_p(inv, den[j]);
  }
  Bytes v(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < n_; ++j) acc = add_p(acc, mul_p(inverse_mod_[i * n_ + j], cm[j]));
    if (acc > 255) return std::nullopt;
    v[i] = static_cast<std::uint8_t>(acc);
  }
  BigInt acc, lhs, rhs;
  for (std::size_t i = 0; i < n_; ++i) {
    row_numerator(i, v, acc);
    mpz_mul(lhs.get_mpz_t(), acc.get_mpz_t(), c.entries[i].den_ref().get_mpz_t());
    mpz_mul(rhs.get_mpz_t(), c.entries[i].num_ref().get_mpz_t(), row_lcm_[i].get_mpz_t());
    if (lhs != rhs) return std::nullopt;
  }
  v.resize(rows);
  return v;
}

std::shared_ptr<const HilbertKernel> HilbertKernel::get(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const HilbertKernel>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const HilbertKernel>(n);
  return slot;
}

void HilbertKernel::row_numerator(std::size_t i, std::span<const std::uint8_t> v, BigInt& acc) const {
  acc = 0;
  const std::uint64_t* small = small_.data() + i * n_;
  for (const auto& run : runs_[i]) {
    std::uint64_t sum = 0;
    for (std::size_t j = run.begin; j < run.end; ++j) sum += v[j] * small[j];
    if (sum) mpz_addmul_ui(acc.get_mpz_t(), run.scale.get_mpz_t(), sum);
  }
}

CipherBlock HilbertKernel::apply(std::span<const std::uint8_t> column) const {
  if (column.size() != n_) throw DomainError("column length " + num(column.size()) + " != order " + num(n_));
  CipherBlock out;
  out.entries.reserve(n_);
  BigInt acc, g;
  for (std::size_t i = 0; i < n_; ++i) {
    row_numerator(i, column, acc);
    if (acc == 0) {
      out.entries.emplace_back(0);
      continue;
    }
    // L_i is smooth, so gcd(acc, L_i) comes from word-sized residues instead
    // of a multi-limb gcd.
    g = 1;
    for (const auto& chunk : row_chunks_[i]) {
      const std::uint64_t r = mpz_fdiv_ui(acc.get_mpz_t(), chunk.modulus);
      std::uint64_t f = 1;
      for (const auto& [p, pe] : chunk.powers) {
        std::uint64_t rp = r % pe;
        if (rp == 0) {
          f *= pe;
          continue;
        }
        while (rp % p == 0) {
          rp /= p;
          f *= p;
        }
      }
      if (f != 1) mpz_mul_ui(g.get_mpz_t(), g.get_mpz_t(), f);
    }
    mpq_class q;
    if (g == 1) {
      q.get_num() = acc;
      q.get_den() = row_lcm_[i];
    } else {
      mpz_divexact(q.get_num_mpz_t(), acc.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(q.get_den_mpz_t(), row_lcm_[i].get_mpz_t(), g.get_mpz_t());
    }
    out.entries.push_back(Rational(std::move(q)));
  }
  return out;
}

std::vector<Rational> HilbertKernel::solve_prefix(const CipherBlock& c, std::size_t rows) const {
  if (c.size() != n_) throw DomainError("block length " + num(c.size()) + " != order " + num(n_));
  // Bring all entries over one common denominator so each row is an integer dot product.
  // Every honest ciphertext denominator divides lcm(1..2n-1); anything else takes the slow path.
  bool fits = true;
  for (const auto& e : c.entries) fits = fits && mpz_divisible_p(common_.get_mpz_t(), e.den_ref().get_mpz_t());
  BigInt common = common_;
  if (!fits) {
    common = 1;
    for (const auto& e : c.entries) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), e.den_ref().get_mpz_t());
  }
  std::vector<BigInt> scaled(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    mpz_divexact(scaled[j].get_mpz_t(), common.get_mpz_t(), c.entries[j].den_ref().get_mpz_t());
    scaled[j] *= c.entries[j].num_ref();
  }
  std::vector<Rational> out;
  out.reserve(rows);
  BigInt acc;
  for (std::size_t i = 0; i < rows; ++i) {
    acc = 0;
    for (std::size_t j = 0; j < n_; ++j) mpz_addmul(acc.get_mpz_t(), inverse_[i * n_ + j].get_mpz_t(), scaled[j].get_mpz_t());
    if (mpz_divisible_p(acc.get_mpz_t(), common.get_mpz_t())) {
      mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), common.get_mpz_t());
      out.emplace_back(acc);
    } else {
      out.push_back(Rational::canonical(acc, common));
    }
  }
  return out;
}

CipherBlock encrypt_block(const SessionKey& key, std::span<const std::uint8_t> block) {
  key.validate();
  if (block.size() != key.m) throw DomainError("plaintext block has " + num(block.size()) + " bytes, expected m=" + num(key.m));
  Bytes column(block.begin(), block.end());
  column.insert(column.end(), key.pad.begin(), key.pad.end());
  return HilbertKernel::get(key.n)->apply(column);
}

Bytes decrypt_block(const SessionKey& key, const CipherBlock& cblock) {
  key.validate();
  if (cblock.size() != key.n)
    throw IntegrityError("cipher block has " + num(cblock.size()) + " entries but the key order is " + num(key.n));
  const auto kernel = HilbertKernel::get(key.n);
  if (auto fast = kernel->try_solve_bytes(cblock, key.m)) return std::move(*fast);
  const auto recovered = kernel->solve_prefix(cblock, key.m);
  Bytes out(key.m);
  for (std::size_t i = 0; i < key.m; ++i) {
    const auto& v = recovered[i];
    if (!v.is_integer() || v.sign() < 0 || v.num_ref() > 255)
      throw IntegrityError("recovered entry " + num(i + 1) + " is " + v.str() + ", not a byte");
    out[i] = static_cast<std::uint8_t>(v.num_ref().get_ui());
  }
  return out;
}

std::string serialize_block(const CipherBlock& cblock) {
  std::string s;
  for (std::size_t k = 0; k < cblock.entries.size(); ++k) {
    if (k) s.push_back(';');
    s += cblock.entries[k].str();
  }
  return s;
}

Bytes chain_bytes(const CipherBlock& cblock, std::size_t m) {
  if (m < 1) throw DomainError("block size m must be >= 1");
  // Folds the serialized block without materializing the string.
  Bytes b(m, 0);
  std::size_t slot = 0;
  auto fold = [&](char ch) {
    b[slot] = static_cast<std::uint8_t>(b[slot] * 31u + static_cast<unsigned char>(ch));
    if (++slot == m) slot = 0;
  };
  std::vector<char> buf;
  auto fold_int = [&](const BigInt& v) {
    buf.resize(mpz_sizeinbase(v.get_mpz_t(), 10) + 2);
    mpz_get_str(buf.data(), 10, v.get_mpz_t());
    for (const char* p = buf.data(); *p; ++p) fold(*p);
  };
  for (std::size_t k = 0; k < cblock.entries.size(); ++k) {
    if (k) fold(';');
    fold_int(cblock.entries[k].num_ref());
    fold('/');
    fold_int(cblock.entries[k].den_ref());
  }
  return b;
}

std::vector<Bytes> pad_message(std::span<const std::uint8_t> data, std::size_t m) {
  if (m < 1 || m > 255) throw DomainError("block size m must be in 1..255 for byte padding");
  const std::size_t p = m - data.size() % m;
  Bytes padded(data.begin(), data.end());
  padded.insert(padded.end(), p, static_cast<std::uint8_t>(p));
  std::vector<Bytes> blocks;
  blocks.reserve(padded.size() / m);
  for (std::size_t off = 0; off < padded.size(); off += m) blocks.emplace_back(padded.begin() + off, padded.begin() + off + m);
  return blocks;
}

Bytes unpad_message(std::span<const std::uint8_t> padded, std::size_t m) {
  if (padded.empty() || padded.size() % m != 0)
    throw PaddingError("padded length " + num(padded.size()) + " is not a positive multiple of m=" + num(m));
  const std::size_t p = padded.back();
  if (p < 1 || p > m) throw PaddingError("final padding byte " + num(p) + " outside 1.." + num(m));
  for (std::size_t k = padded.size() - p; k < padded.size(); ++k)
    if (padded[k] != p) throw PaddingError("padding bytes are not all " + num(p));
  return Bytes(padded.begin(), padded.end() - static_cast<std::ptrdiff_t>(p));
}

CiphertextMessage cbc_encrypt(const SessionKey& key, std::span<const std::uint8_t> data) {
  key.validate();
  CiphertextMessage msg;
  msg.m = key.m;
  Bytes chain = key.iv;
  for (auto& block : pad_message(data, key.m)) {
    xor_into(block, chain);
    msg.blocks.push_back(encrypt_block(key, block));
    chain = chain_bytes(msg.blocks.back(), key.m);
  }
  return msg;
}

Bytes cbc_decrypt_raw(const SessionKey& key, const CiphertextMessage& msg) {
  key.validate();
  if (msg.m != key.m) throw IntegrityError("ciphertext block size m=" + num(msg.m) + " does not match key m=" + num(key.m));
  Bytes out;
  out.reserve(msg.blocks.size() * key.m);
  Bytes chain = key.iv;
  for (const auto& c : msg.blocks) {
    Bytes y = decrypt_block(key, c);
    xor_into(y, chain);
    out.insert(out.end(), y.begin(), y.end());
    chain = chain_bytes(c, key.m);
  }
  return out;
}

Bytes cbc_decrypt(const SessionKey& key, const CiphertextMessage& msg) {
  return unpad_message(cbc_decrypt_raw(key, msg), key.m);
}

CiphertextMessage ecb_encrypt(const SessionKey& key, std::span<const std::uint8_t> data) {
  key.validate();
  CiphertextMessage msg;
  msg.m = key.m;
  for (const auto& block : pad_message(data, key.m)) msg.blocks.push_back(encrypt_block(key, block));
  return msg;
}

Bytes ecb_decrypt(const SessionKey& key, const CiphertextMessage& msg) {
  key.validate();
  if (msg.m != key.m) throw IntegrityError("ciphertext block size m=" + num(msg.m) + " does not match key m=" + num(key.m));
  Bytes out;
  for (const auto& c : msg.blocks) {
    const Bytes y = decrypt_block(key, c);
    out.insert(out.end(), y.begin(), y.end());
  }
  return unpad_message(out, key.m);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw FormatError(std::string("invalid lowercase hex digit '") + c + "'");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = static_cast<std::uint8_t>(nibble(hex[2 * k]) << 4 | nibble(hex[2 * k + 1]));
  return out;
}

std::string format_key(const SessionKey& key) {
  key.validate();
  return "HILBXKEY1\nn=" + num(key.n) + "\nm=" + num(key.m) + "\nK=" + to_hex(key.pad) + "\nIV=" + to_hex(key.iv) + "\n";
}

SessionKey parse_key(std::string_view text) {
  constexpr std::string_view what = "key file";
  const auto lines = detail::split_lines(text, what);
  if (lines.size() != 5 || lines[0] != "HILBXKEY1") throw FormatError("key file: expected HILBXKEY1 header and 4 fields");
  SessionKey key;
  key.n = detail::parse_size(detail::field(lines[1], "n", what), what);
  key.m = detail::parse_size(detail::field(lines[2], "m", what), what);
  key.pad = from_hex(detail::field(lines[3], "K", what));
  key.iv = from_hex(detail::field(lines[4], "IV", what));
  try {
    key.validate();
  } catch (const DomainError& e) {
    throw FormatError(std::string("key file: ") + e.what());
  }
  return key;
}

std::string format_ciphertext(const CiphertextMessage& msg) {
  std::string s = "HILBXCT1\nm=" + num(msg.m) + " t=" + num(msg.blocks.size()) + "\n";
  for (const auto& block : msg.blocks) {
    for (std::size_t k = 0; k < block.entries.size(); ++k) {
      if (k) s.push_back(' ');
      s += block.entries[k].str();
    }
    s.push_back('\n');
  }
  return s;
}

CiphertextMessage parse_ciphertext(std::string_view text) {
  constexpr std::string_view what = "ciphertext file";
  const auto lines = detail::split_lines(text, what);
  if (lines.size() < 2 || lines[0] != "HILBXCT1") throw FormatError("ciphertext file: expected HILBXCT1 header");
  const auto sp = lines[1].find(' ');
  if (sp == std::string_view::npos) throw FormatError("ciphertext file: expected 'm=<dec> t=<dec>'");
  CiphertextMessage msg;
  msg.m = detail::parse_size(detail::field(lines[1].substr(0, sp), "m", what), what);
  const std::size_t t = detail::parse_size(detail::field(lines[1].substr(sp + 1), "t", what), what);
  if (lines.size() != t + 2)
    throw FormatError("ciphertext file: header says t=" + num(t) + " but found " + num(lines.size() - 2) + " block lines");
  for (std::size_t b = 0; b < t; ++b) {
    CipherBlock block;
    std::string_view line = lines[b + 2];
    while (true) {
      const auto cut = line.find(' ');
      const auto token = line.substr(0, cut);
      if (token.empty() || token.find('/') == std::string_view::npos)
        throw FormatError("ciphertext file: malformed token on block line " + num(b + 1));
      try {
        block.entries.push_back(Rational::parse(token));
      } catch (const DomainError& e) {
        throw FormatError(std::string("ciphertext file: ") + e.what());
      }
      if (block.entries.back().str() != token)
        throw FormatError("ciphertext file: non-canonical rational '" + std::string(token) + "'");
      if (cut == std::string_view::npos) break;
      line.remove_prefix(cut + 1);
    }
    if (!msg.blocks.empty() && block.size() != msg.blocks.front().size())
      throw FormatError("ciphertext file: block " + num(b + 1) + " has a different entry count");
    msg.blocks.push_back(std::move(block));
  }
  return msg;
}

}  // namespace hilbx
