#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hilbx/errors.hpp"

namespace hilbx::classical {

// ---------------------------------------------------------------- Playfair

/// 5x5 Playfair square, I and J merged. Keyword letters (deduplicated, j->i)
/// come first in reading order, then the rest of the alphabet.
class PlayfairKey {
 public:
  explicit PlayfairKey(std::string_view keyword);

  char at(std::size_t row, std::size_t col) const { return grid_[row * 5 + col]; }
  std::pair<std::size_t, std::size_t> locate(char letter) const;
  std::string_view grid() const { return {grid_.data(), grid_.size()}; }

 private:
  std::array<char, 25> grid_{};
  std::array<int, 26> pos_{};
};

/// Lowercases, maps j to i, splits repeated letters inside a digram with 'x'
/// ('q' when the letter is itself 'x') and fills an odd tail the same way.
/// Returns the prepared text with even length. Throws DomainError on non-letters.
std::string playfair_prepare(std::string_view text);

/// "balxloon" -> "ba lx lo on".
std::string format_digrams(std::string_view prepared);

std::string playfair_encrypt(const PlayfairKey& key, std::string_view text);
/// Inverts encryption on prepared text; output is still in prepared form.
std::string playfair_decrypt(const PlayfairKey& key, std::string_view cipher);

// -------------------------------------------------------------------- Hill

/// m x m key over Z/26, stored row-major. Construction rejects keys whose
/// determinant is not a unit mod 26.
class HillKey {
 public:
  HillKey(std::size_t m, std::vector<int> entries);

  std::size_t size() const { return m_; }
  int at(std::size_t r, std::size_t c) const { return mat_[r * m_ + c]; }
  const std::vector<int>& entries() const { return mat_; }
  /// K^-1 mod 26 as adjugate times det^-1.
  const std::vector<int>& inverse() const { return inv_; }

  friend bool operator==(const HillKey& a, const HillKey& b) { return a.m_ == b.m_ && a.mat_ == b.mat_; }

 private:
  std::size_t m_;
  std::vector<int> mat_;
  std::vector<int> inv_;
};

/// Lowercase letters only, a=0..z=25. Other characters are dropped.
std::vector<int> letters_to_numbers(std::string_view text);
std::string numbers_to_letters(std::span<const int> values);

/// Determinant mod 26 (in 0..25) of a square integer matrix.
int det_mod26(std::size_t m, std::span<const int> entries);
/// Inverse mod 26; throws DomainError if the determinant is not a unit.
std::vector<int> inverse_mod26(std::size_t m, std::span<const int> entries);
/// a * b mod 26 for m x m by m x k row-major matrices.
std::vector<int> multiply_mod26(std::size_t m, std::span<const int> a, std::span<const int> b, std::size_t k);

/// Strips non-letters, case-folds, pads with 'x' to a multiple of m, and
/// computes C = K P mod 26 column by column.
std::string hill_encrypt(const HillKey& key, std::string_view text);
std::string hill_decrypt(const HillKey& key, std::string_view cipher);

class AttackInconclusive : public DomainError {
 public:
  explicit AttackInconclusive(const std::string& what) : DomainError(what) {}
};

struct KnownPair {
  std::string plain;
  std::string cipher;
};

/// Known-plaintext key recovery: picks m plaintext columns P invertible mod
/// 26, takes the matching ciphertext columns C and returns K = C P^-1 mod 26.
/// The recovered key is checked against every supplied pair. Throws
/// AttackInconclusive when no invertible P exists in the data or the data
/// is inconsistent with any single key.
HillKey hill_kpa_attack(std::span<const KnownPair> pairs, std::size_t m);

/// Parses lines of "P=<letters> C=<letters>". Throws FormatError.
std::vector<KnownPair> parse_pairs(std::string_view text, std::size_t m);
std::string format_pairs(std::span<const KnownPair> pairs);

// ------------------------------------------------------------- repetition

/// Every (i, j), i < j, with blocks[i] == blocks[j].
template <class Block>
std::vector<std::pair<std::size_t, std::size_t>> find_repeats(std::span<const Block> blocks) {
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (blocks[i] == blocks[j]) hits.emplace_back(i, j);
  return hits;
}

}  // namespace hilbx::classical
