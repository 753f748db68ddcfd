#pragma once

// Words over a free group of finite rank: free and cyclic reduction,
// canonical conjugacy representatives, roots and the two text grammars.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "whitebind/errors.hpp"

namespace whitebind {

/// Rank of the ambient free group F_g.
class Rank {
 public:
  explicit constexpr Rank(int g) : g_(g) {
    if (g < 1) throw std::invalid_argument("rank must be at least 1");
  }

  constexpr int value() const noexcept { return g_; }
  constexpr int letter_count() const noexcept { return 2 * g_; }

  friend constexpr bool operator==(Rank, Rank) = default;

 private:
  int g_;
};

/// A generator or its inverse, stored as a signed index (+k for x_k, -k for x_k^-1).
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign) : value_(sign < 0 ? -generator : generator) {
    if (generator < 1) throw std::invalid_argument("generator index must be at least 1");
  }

  static constexpr Letter from_signed(int value) {
    return value < 0 ? Letter(-value, -1) : Letter(value, +1);
  }

  /// Inverse of Letter::order_key.
  static constexpr Letter from_order_key(int key) { return Letter(key / 2 + 1, key % 2 ? -1 : +1); }

  constexpr int generator() const noexcept { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const noexcept { return value_ < 0 ? -1 : +1; }
  constexpr int signed_value() const noexcept { return value_; }
  constexpr bool positive() const noexcept { return value_ > 0; }
  constexpr Letter inverse() const noexcept { return from_signed(-value_); }
  constexpr bool is_inverse_of(Letter other) const noexcept { return value_ == -other.value_; }

  /// Position in the total order x1 < X1 < x2 < X2 < ...; also a dense index in [0, 2g).
  constexpr int order_key() const noexcept { return 2 * (generator() - 1) + (value_ < 0 ? 1 : 0); }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) noexcept {
    return a.order_key() <=> b.order_key();
  }

 private:
  int value_ = 1;
};

inline std::vector<Letter> reduce_letters(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back().is_inverse_of(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

/// A freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters) : letters_(reduce_letters(letters)) {}
  Word(std::initializer_list<Letter> letters)
      : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  int max_generator() const noexcept {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, l.generator());
    return m;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

inline Word free_reduce(std::span<const Letter> letters) { return Word(letters); }

inline Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(out);
}

inline Word concat(const Word& u, const Word& v) {
  std::vector<Letter> all(u.letters().begin(), u.letters().end());
  all.insert(all.end(), v.letters().begin(), v.letters().end());
  return Word(all);
}

namespace detail {

inline void check_rank(std::span<const Letter> letters, Rank rank) {
  for (Letter l : letters)
    if (l.generator() > rank.value()) throw RankExceeded(l.generator(), rank.value());
}

// Start index of the lexicographically least rotation (two-pointer minimum
// expression scan, linear time).
inline std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const int a = s[(i + k) % n].order_key();
    const int b = s[(j + k) % n].order_key();
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return n == 0 ? 0 : std::min(i, j);
}

// Smallest p with s = (s[0..p))^(n/p), via the prefix function.
inline std::size_t smallest_period(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t q = 1; q < n; ++q) {
    std::size_t k = pi[q - 1];
    while (k > 0 && s[q] != s[k]) k = pi[k - 1];
    if (s[q] == s[k]) ++k;
    pi[q] = k;
  }
  const std::size_t p = n - pi[n - 1];
  return n % p == 0 ? p : n;
}

}  // namespace detail

/// A cyclically reduced word in canonical rotation: a conjugacy class of F_g.
class CyclicWord {
 public:
  /// The identity class of the given rank.
  explicit CyclicWord(Rank rank) : rank_(rank) {}

  /// Reduces, cyclically reduces and canonicalizes arbitrary letters.
  static CyclicWord from_letters(std::span<const Letter> letters, Rank rank) {
    detail::check_rank(letters, rank);
    std::vector<Letter> w = reduce_letters(letters);
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo].is_inverse_of(w[hi - 1])) {
      ++lo;
      --hi;
    }
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(hi), w.end());
    w.erase(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(lo));
    return from_cyclically_reduced(std::move(w), rank);
  }

  /// Canonicalizes letters already known to be cyclically reduced. When
  /// `rotation` is given it receives the offset r such that the result is
  /// letters[r..] letters[..r].
  static CyclicWord from_cyclically_reduced(std::vector<Letter> letters, Rank rank,
                                            std::size_t* rotation = nullptr) {
    CyclicWord c(rank);
    c.letters_ = std::move(letters);
    const std::size_t r = detail::least_rotation(c.letters_);
    std::rotate(c.letters_.begin(), c.letters_.begin() + static_cast<std::ptrdiff_t>(r), c.letters_.end());
    if (rotation) *rotation = r;
    return c;
  }

  static CyclicWord from_word(const Word& w, Rank rank) { return from_letters(w.letters(), rank); }

  std::span<const Letter> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Rank rank() const noexcept { return rank_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word as_word() const { return Word(letters_); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  std::vector<Letter> letters_;
  Rank rank_;
};

/// w = conjugator * core * conjugator^-1.
struct CyclicReduction {
  CyclicWord core;
  Word conjugator;
};

inline CyclicReduction cyclic_reduce(const Word& w, Rank rank) {
  detail::check_rank(w.letters(), rank);
  auto letters = w.letters();
  std::size_t lo = 0, hi = letters.size();
  while (hi - lo >= 2 && letters[lo].is_inverse_of(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  std::size_t r = 0;
  CyclicWord core = CyclicWord::from_cyclically_reduced(
      std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                          letters.begin() + static_cast<std::ptrdiff_t>(hi)),
      rank, &r);
  // middle = p q with core = q p, so middle = p core p^-1.
  std::vector<Letter> conj(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(lo + r));
  return {std::move(core), Word(conj)};
}

struct CyclicRoot {
  CyclicWord root;
  int exponent;
};

inline CyclicRoot cyclic_root(const CyclicWord& c) {
  if (c.empty()) throw EmptyWord("cyclic_root");
  const std::size_t p = detail::smallest_period(c.letters());
  // The least rotation of r^k is (least rotation of r)^k, so the prefix is canonical.
  return {CyclicWord::from_letters(c.letters().first(p), c.rank()),
          static_cast<int>(c.size() / p)};
}

inline std::set<int> support(std::span<const Letter> letters) {
  std::set<int> s;
  for (Letter l : letters) s.insert(l.generator());
  return s;
}

inline std::set<int> support(const CyclicWord& c) { return support(c.letters()); }

/// Smallest generator index of the rank that does not occur, or 0 if all occur.
inline int first_omitted_generator(const CyclicWord& c) {
  std::vector<bool> seen(static_cast<std::size_t>(c.rank().value()) + 1, false);
  for (Letter l : c.letters()) seen[static_cast<std::size_t>(l.generator())] = true;
  for (int k = 1; k <= c.rank().value(); ++k)
    if (!seen[static_cast<std::size_t>(k)]) return k;
  return 0;
}

inline bool has_full_support(const CyclicWord& c) { return first_omitted_generator(c) == 0; }

// ---------------------------------------------------------------------------
// Text grammars

struct ParsedText {
  std::vector<Letter> letters;  // as written, not reduced
  int max_generator = 0;
};

/// Parses either grammar without a rank bound. Compact form: a..z are x1..x26,
/// A..Z their inverses. Indexed form: whitespace separated x<k> / X<k>.
inline ParsedText parse_letters(std::string_view text) {
  ParsedText out;
  if (text.empty()) return out;

  auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
  auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
  auto is_alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z'); };

  const bool indexed =
      is_space(text[0]) || ((text[0] == 'x' || text[0] == 'X') && text.size() > 1 && is_digit(text[1]));

  if (!indexed) {
    if (!is_alpha(text[0])) throw SyntaxError("unexpected character '" + std::string(1, text[0]) + "'", 0);
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch >= 'a' && ch <= 'z')
        out.letters.emplace_back(ch - 'a' + 1, +1);
      else if (ch >= 'A' && ch <= 'Z')
        out.letters.emplace_back(ch - 'A' + 1, -1);
      else if (is_space(ch) || is_digit(ch))
        throw SyntaxError("compact and indexed forms cannot be mixed", i);
      else
        throw SyntaxError("unexpected character '" + std::string(1, ch) + "'", i);
      out.max_generator = std::max(out.max_generator, out.letters.back().generator());
    }
    return out;
  }

  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const char head = text[i];
    if (head != 'x' && head != 'X') throw SyntaxError("expected token x<k> or X<k>", i);
    ++i;
    const std::size_t digits_start = i;
    long long k = 0;
    while (i < text.size() && is_digit(text[i])) {
      if (i - digits_start >= 9) throw SyntaxError("generator index too large", start);
      k = k * 10 + (text[i] - '0');
      ++i;
    }
    if (i == digits_start) throw SyntaxError("missing generator index", i);
    if (i < text.size() && !is_space(text[i]))
      throw SyntaxError("compact and indexed forms cannot be mixed", i);
    if (k < 1) throw SyntaxError("generator index must be at least 1", start);
    out.letters.emplace_back(static_cast<int>(k), head == 'x' ? +1 : -1);
    out.max_generator = std::max(out.max_generator, static_cast<int>(k));
  }
  return out;
}

inline Word parse_word(std::string_view text, Rank rank) {
  ParsedText parsed = parse_letters(text);
  detail::check_rank(parsed.letters, rank);
  return Word(parsed.letters);
}

/// Compact form when every generator fits a..z, indexed form otherwise.
inline std::string to_string(std::span<const Letter> letters) {
  const bool compact = std::all_of(letters.begin(), letters.end(), [](Letter l) { return l.generator() <= 26; });
  std::string out;
  for (Letter l : letters) {
    if (compact) {
      out.push_back(static_cast<char>((l.positive() ? 'a' : 'A') + l.generator() - 1));
    } else {
      if (!out.empty()) out.push_back(' ');
      out.push_back(l.positive() ? 'x' : 'X');
      out += std::to_string(l.generator());
    }
  }
  return out;
}

inline std::string to_string(const Word& w) { return to_string(w.letters()); }
inline std::string to_string(const CyclicWord& c) { return to_string(c.letters()); }

}  // namespace whitebind

template <>
struct std::hash<whitebind::CyclicWord> {
  std::size_t operator()(const whitebind::CyclicWord& c) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(c.rank().value());
    for (whitebind::Letter l : c.letters()) {
      h ^= static_cast<std::uint64_t>(l.order_key() + 1);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
