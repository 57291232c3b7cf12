#include "hilbx/classical.hpp"

#include <numeric>

#include "hilbx/matrix.hpp"
#include "text.hpp"

namespace hilbx::classical {

namespace {

int mod26(long long v) { return static_cast<int>(((v % 26) + 26) % 26); }

int unit_inverse26(int a) {
  for (int x = 1; x < 26; ++x)
    if (a * x % 26 == 1) return x;
  throw DomainError("determinant " + std::to_string(a) + " is not invertible mod 26");
}

char fold(char c) {
  if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return c;
}

Matrix to_matrix(std::size_t m, std::span<const int> entries) {
  std::vector<Rational> v(entries.begin(), entries.end());
  return Matrix(m, m, std::move(v));
}

std::string shift_digram(const PlayfairKey& key, char a, char b, int dir) {
  const auto [ra, ca] = key.locate(a);
  const auto [rb, cb] = key.locate(b);
  const auto step = [dir](std::size_t v) { return static_cast<std::size_t>(static_cast<int>(v) + 5 + dir) % 5; };
  std::string out(2, ' ');
  if (ra == rb) {
    out[0] = key.at(ra, step(ca));
    out[1] = key.at(rb, step(cb));
  } else if (ca == cb) {
    out[0] = key.at(step(ra), ca);
    out[1] = key.at(step(rb), cb);
  } else {
    out[0] = key.at(ra, cb);
    out[1] = key.at(rb, ca);
  }
  return out;
}

}  // namespace

PlayfairKey::PlayfairKey(std::string_view keyword) {
  pos_.fill(-1);
  std::size_t filled = 0;
  auto place = [&](char c) {
    c = fold(c);
    if (c < 'a' || c > 'z') return;
    if (c == 'j') c = 'i';
    if (pos_[c - 'a'] >= 0) return;
    pos_[c - 'a'] = static_cast<int>(filled);
    grid_[filled++] = c;
  };
  for (char c : keyword) place(c);
  for (char c = 'a'; c <= 'z'; ++c) place(c);
  pos_['j' - 'a'] = pos_['i' - 'a'];
}

std::pair<std::size_t, std::size_t> PlayfairKey::locate(char letter) const {
  letter = fold(letter);
  if (letter < 'a' || letter > 'z') throw DomainError(std::string("not a letter: '") + letter + "'");
  const auto p = static_cast<std::size_t>(pos_[letter - 'a']);
  return {p / 5, p % 5};
}

std::string playfair_prepare(std::string_view text) {
  std::string letters;
  letters.reserve(text.size());
  for (char c : text) {
    c = fold(c);
    if (c < 'a' || c > 'z') throw DomainError(std::string("playfair input must be letters, got '") + c + "'");
    letters.push_back(c == 'j' ? 'i' : c);
  }
  auto filler = [](char c) { return c == 'x' ? 'q' : 'x'; };
  std::string out;
  std::size_t i = 0;
  while (i < letters.size()) {
    const char a = letters[i];
    if (i + 1 < letters.size() && letters[i + 1] != a) {
      out += a;
      out += letters[i + 1];
      i += 2;
    } else {
      out += a;
      out += filler(a);
      i += 1;
    }
  }
  return out;
}

std::string format_digrams(std::string_view prepared) {
  std::string out;
  for (std::size_t i = 0; i < prepared.size(); i += 2) {
    if (i) out += ' ';
    out += prepared.substr(i, 2);
  }
  return out;
}

std::string playfair_encrypt(const PlayfairKey& key, std::string_view text) {
  const std::string prepared = playfair_prepare(text);
  std::string out;
  for (std::size_t i = 0; i < prepared.size(); i += 2) out += shift_digram(key, prepared[i], prepared[i + 1], +1);
  return out;
}

std::string playfair_decrypt(const PlayfairKey& key, std::string_view cipher) {
  if (cipher.size() % 2 != 0) throw DomainError("playfair ciphertext has odd length");
  std::string out;
  for (std::size_t i = 0; i < cipher.size(); i += 2) out += shift_digram(key, cipher[i], cipher[i + 1], -1);
  return out;
}

int det_mod26(std::size_t m, std::span<const int> entries) {
  const Rational d = determinant(to_matrix(m, entries));
  return static_cast<int>(mpz_fdiv_ui(d.num_ref().get_mpz_t(), 26));
}

std::vector<int> inverse_mod26(std::size_t m, std::span<const int> entries) {
  const Matrix k = to_matrix(m, entries);
  const Rational d = determinant(k);
  const int d26 = static_cast<int>(mpz_fdiv_ui(d.num_ref().get_mpz_t(), 26));
  if (std::gcd(d26, 26) != 1) throw DomainError("matrix determinant " + std::to_string(d26) + " is not a unit mod 26");
  const int dinv = unit_inverse26(d26);
  // adj(K) = det(K) K^-1 is an integer matrix.
  const Matrix kinv = inverse(k);
  std::vector<int> out(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      const Rational adj = kinv(r, c) * d;
      const int a = static_cast<int>(mpz_fdiv_ui(adj.num_ref().get_mpz_t(), 26));
      out[r * m + c] = mod26(static_cast<long long>(a) * dinv);
    }
  }
  return out;
}

std::vector<int> multiply_mod26(std::size_t m, std::span<const int> a, std::span<const int> b, std::size_t k) {
  const std::size_t inner = a.size() / m;
  std::vector<int> out(m * k);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      long long acc = 0;
      for (std::size_t t = 0; t < inner; ++t) acc += static_cast<long long>(a[r * inner + t]) * b[t * k + c];
      out[r * k + c] = mod26(acc);
    }
  }
  return out;
}

HillKey::HillKey(std::size_t m, std::vector<int> entries) : m_(m), mat_(std::move(entries)) {
  if (m_ == 0 || mat_.size() != m_ * m_) throw DomainError("hill key must be a nonempty square matrix");
  for (auto& v : mat_) v = mod26(v);
  inv_ = inverse_mod26(m_, mat_);
}

std::vector<int> letters_to_numbers(std::string_view text) {
  std::vector<int> out;
  for (char c : text) {
    c = fold(c);
    if (c >= 'a' && c <= 'z') out.push_back(c - 'a');
  }
  return out;
}

std::string numbers_to_letters(std::span<const int> values) {
  std::string out;
  out.reserve(values.size());
  for (int v : values) out.push_back(static_cast<char>('a' + mod26(v)));
  return out;
}

namespace {

std::string hill_apply(std::size_t m, const std::vector<int>& mat, std::vector<int> values) {
  while (values.size() % m != 0) values.push_back('x' - 'a');
  std::vector<int> out;
  out.reserve(values.size());
  for (std::size_t off = 0; off < values.size(); off += m) {
    const auto col = multiply_mod26(m, mat, std::span<const int>(values).subspan(off, m), 1);
    out.insert(out.end(), col.begin(), col.end());
  }
  return numbers_to_letters(out);
}

}  // namespace

std::string hill_encrypt(const HillKey& key, std::string_view text) {
  return hill_apply(key.size(), key.entries(), letters_to_numbers(text));
}

std::string hill_decrypt(const HillKey& key, std::string_view cipher) {
  return hill_apply(key.size(), key.inverse(), letters_to_numbers(cipher));
}

HillKey hill_kpa_attack(std::span<const KnownPair> pairs, std::size_t m) {
  if (m == 0) throw DomainError("hill block size must be >= 1");
  std::vector<std::vector<int>> pcols, ccols;
  for (const auto& pr : pairs) {
    const auto p = letters_to_numbers(pr.plain);
    const auto c = letters_to_numbers(pr.cipher);
    if (p.size() != c.size() || p.size() % m != 0)
      throw DomainError("known pair lengths must match and be a multiple of m=" + std::to_string(m));
    for (std::size_t off = 0; off < p.size(); off += m) {
      pcols.emplace_back(p.begin() + off, p.begin() + off + m);
      ccols.emplace_back(c.begin() + off, c.begin() + off + m);
    }
  }
  if (pcols.size() < m) throw AttackInconclusive("need at least m=" + std::to_string(m) + " known columns");

  // Search column subsets in lexicographic order for an invertible P.
  constexpr std::size_t kMaxTries = 200000;
  std::vector<std::size_t> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  std::size_t tries = 0;
  while (true) {
    std::vector<int> pm(m * m), cm(m * m);
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t r = 0; r < m; ++r) {
        pm[r * m + c] = pcols[pick[c]][r];
        cm[r * m + c] = ccols[pick[c]][r];
      }
    }
    if (std::gcd(det_mod26(m, pm), 26) == 1) {
      std::vector<int> k = multiply_mod26(m, cm, inverse_mod26(m, pm), m);
      for (std::size_t col = 0; col < pcols.size(); ++col) {
        if (multiply_mod26(m, k, pcols[col], 1) != ccols[col])
          throw AttackInconclusive("known pairs are not consistent with a single hill key");
      }
      try {
        return HillKey(m, std::move(k));
      } catch (const DomainError&) {
        throw AttackInconclusive("recovered matrix is not invertible mod 26");
      }
    }
    if (++tries >= kMaxTries) break;
    // next combination
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == pcols.size() - m + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  throw AttackInconclusive("no invertible plaintext matrix mod 26 among the known columns; supply more text");
}

std::vector<KnownPair> parse_pairs(std::string_view text, std::size_t m) {
  constexpr std::string_view what = "pairs file";
  std::vector<KnownPair> out;
  for (auto line : detail::split_lines(text, what)) {
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos) throw FormatError("pairs file: expected 'P=<letters> C=<letters>'");
    KnownPair pr{std::string(detail::field(line.substr(0, sp), "P", what)),
                 std::string(detail::field(line.substr(sp + 1), "C", what))};
    for (const auto* s : {&pr.plain, &pr.cipher})
      for (char c : *s)
        if (c < 'a' || c > 'z') throw FormatError("pairs file: letters must be lowercase a-z");
    if (pr.plain.size() != pr.cipher.size() || m == 0 || pr.plain.size() % m != 0)
      throw FormatError("pairs file: P and C must have equal length, a multiple of m=" + std::to_string(m));
    out.push_back(std::move(pr));
  }
  return out;
}

std::string format_pairs(std::span<const KnownPair> pairs) {
  std::string out;
  for (const auto& pr : pairs) out += "P=" + pr.plain + " C=" + pr.cipher + "\n";
  return out;
}

}  // namespace hilbx::classical
