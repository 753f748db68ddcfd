#pragma once

// Elementary automorphisms of F_g: Whitehead moves of type I (signed
// permutations) and type II (multiplier moves), elementary Nielsen moves,
// replayable witnesses and Nielsen reduction of generating tuples.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "whitebind/errors.hpp"
#include "whitebind/word.hpp"

namespace whitebind {

/// x_i -> x_{permutation[i-1]}^{-1 if i in flips else +1}.
struct TypeIMove {
  std::vector<int> permutation;  // 1-based images, a bijection of {1..g}
  std::vector<int> flips;        // sorted generator indices

  friend bool operator==(const TypeIMove&, const TypeIMove&) = default;
};

/// Whitehead multiplier move (multiplier a, set S) with a in S and a^-1 not in S.
/// A letter v other than a^{+-1} is sent to [a^-1 if v^-1 in S] v [a if v in S].
struct TypeIIMove {
  Letter multiplier;
  std::vector<Letter> set;  // sorted by Letter order, contains the multiplier

  friend bool operator==(const TypeIIMove&, const TypeIIMove&) = default;
};

enum class NielsenOp { swap, invert, left_multiply, right_multiply };

/// Elementary Nielsen transformation (Lyndon-Schupp convention). On a tuple:
/// swap y_i and y_j; y_i -> y_i^-1; y_i -> y_j^sign y_i; y_i -> y_i y_j^sign.
/// On a word it acts as the automorphism obtained by applying it to the
/// standard basis.
struct NielsenMove {
  NielsenOp op = NielsenOp::swap;
  int i = 1;
  int j = 2;
  int sign = +1;

  static NielsenMove swap(int i, int j) { return {NielsenOp::swap, i, j, +1}; }
  static NielsenMove invert(int i) { return {NielsenOp::invert, i, 0, +1}; }
  static NielsenMove left_multiply(int i, int j, int sign) { return {NielsenOp::left_multiply, i, j, sign}; }
  static NielsenMove right_multiply(int i, int j, int sign) { return {NielsenOp::right_multiply, i, j, sign}; }

  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;
};

using Move = std::variant<TypeIMove, TypeIIMove, NielsenMove>;

/// A sequence of moves, applied first to last.
struct AutomorphismWitness {
  std::vector<Move> moves;

  bool empty() const noexcept { return moves.empty(); }
  std::size_t size() const noexcept { return moves.size(); }

  AutomorphismWitness& then(const AutomorphismWitness& other) {
    moves.insert(moves.end(), other.moves.begin(), other.moves.end());
    return *this;
  }

  friend bool operator==(const AutomorphismWitness&, const AutomorphismWitness&) = default;
};

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw RankMismatch(message);
}

inline void validate_letter(Letter l, Rank rank, const char* what) {
  require(l.generator() <= rank.value(),
          std::string(what) + " uses generator x" + std::to_string(l.generator()) +
              " outside rank " + std::to_string(rank.value()));
}

}  // namespace detail

inline void validate(const TypeIMove& m, Rank rank) {
  const int g = rank.value();
  detail::require(static_cast<int>(m.permutation.size()) == g,
                  "type I move permutes " + std::to_string(m.permutation.size()) +
                      " generators, rank is " + std::to_string(g));
  std::vector<bool> hit(static_cast<std::size_t>(g) + 1, false);
  for (int p : m.permutation) {
    detail::require(p >= 1 && p <= g && !hit[static_cast<std::size_t>(p)], "type I permutation is not a bijection");
    hit[static_cast<std::size_t>(p)] = true;
  }
  for (int f : m.flips) detail::require(f >= 1 && f <= g, "type I flip outside rank");
}

inline void validate(const TypeIIMove& m, Rank rank) {
  detail::validate_letter(m.multiplier, rank, "type II multiplier");
  bool has_multiplier = false;
  for (Letter l : m.set) {
    detail::validate_letter(l, rank, "type II set");
    if (l == m.multiplier) has_multiplier = true;
    detail::require(l != m.multiplier.inverse(), "type II set contains the inverse of the multiplier");
  }
  detail::require(has_multiplier, "type II set must contain the multiplier");
}

inline void validate(const NielsenMove& m, Rank rank) {
  const int g = rank.value();
  detail::require(m.i >= 1 && m.i <= g, "Nielsen move index i outside rank");
  if (m.op != NielsenOp::invert) {
    detail::require(m.j >= 1 && m.j <= g, "Nielsen move index j outside rank");
    detail::require(m.i != m.j, "Nielsen move requires i != j");
  }
  if (m.op == NielsenOp::left_multiply || m.op == NielsenOp::right_multiply)
    detail::require(m.sign == 1 || m.sign == -1, "Nielsen multiplier sign must be +1 or -1");
}

inline void validate(const Move& m, Rank rank) {
  std::visit([&](const auto& mv) { validate(mv, rank); }, m);
}

// ---------------------------------------------------------------------------
// Substitution tables: every elementary move sends a letter to a word of
// length at most three.

class Substitution {
 public:
  explicit Substitution(Rank rank) : rank_(rank), images_(static_cast<std::size_t>(rank.letter_count())) {
    for (int key = 0; key < rank.letter_count(); ++key) set_generator_image_raw(key, {Letter::from_order_key(key)});
  }

  Rank rank() const noexcept { return rank_; }

  /// Sets the image of x_k; the image of x_k^-1 follows.
  void set_generator_image(int generator, std::initializer_list<Letter> image) {
    const int key = Letter(generator, +1).order_key();
    set_generator_image_raw(key, image);
    std::vector<Letter> inv(image.begin(), image.end());
    std::reverse(inv.begin(), inv.end());
    for (Letter& l : inv) l = l.inverse();
    set_image_raw(key + 1, inv);
  }

  std::span<const Letter> image(Letter l) const {
    const Image& im = images_[static_cast<std::size_t>(l.order_key())];
    return std::span<const Letter>(im.letters.data(), im.size);
  }

  /// Substitutes and freely reduces.
  std::vector<Letter> apply(std::span<const Letter> letters) const {
    std::vector<Letter> out;
    out.reserve(letters.size() + letters.size() / 2 + 2);
    for (Letter l : letters) {
      for (Letter x : image(l)) {
        if (!out.empty() && out.back().is_inverse_of(x))
          out.pop_back();
        else
          out.push_back(x);
      }
    }
    return out;
  }

 private:
  struct Image {
    std::array<Letter, 3> letters{};
    std::size_t size = 0;
  };

  void set_generator_image_raw(int key, std::initializer_list<Letter> image) {
    set_image_raw(key, std::vector<Letter>(image));
  }
  void set_image_raw(int key, const std::vector<Letter>& image) {
    Image& im = images_[static_cast<std::size_t>(key)];
    im.size = image.size();
    std::copy(image.begin(), image.end(), im.letters.begin());
  }

  Rank rank_;
  std::vector<Image> images_;
};

inline Substitution substitution(const TypeIMove& m, Rank rank) {
  validate(m, rank);
  Substitution s(rank);
  for (int i = 1; i <= rank.value(); ++i) {
    const bool flip = std::find(m.flips.begin(), m.flips.end(), i) != m.flips.end();
    s.set_generator_image(i, {Letter(m.permutation[static_cast<std::size_t>(i - 1)], flip ? -1 : +1)});
  }
  return s;
}

inline Substitution substitution(const TypeIIMove& m, Rank rank) {
  validate(m, rank);
  std::vector<bool> in_set(static_cast<std::size_t>(rank.letter_count()), false);
  for (Letter l : m.set) in_set[static_cast<std::size_t>(l.order_key())] = true;
  const Letter a = m.multiplier;
  Substitution s(rank);
  for (int i = 1; i <= rank.value(); ++i) {
    if (i == a.generator()) continue;
    const Letter x(i, +1);
    const bool x_in = in_set[static_cast<std::size_t>(x.order_key())];
    const bool xinv_in = in_set[static_cast<std::size_t>(x.inverse().order_key())];
    if (x_in && xinv_in)
      s.set_generator_image(i, {a.inverse(), x, a});
    else if (x_in)
      s.set_generator_image(i, {x, a});
    else if (xinv_in)
      s.set_generator_image(i, {a.inverse(), x});
  }
  return s;
}

inline Substitution substitution(const NielsenMove& m, Rank rank) {
  validate(m, rank);
  Substitution s(rank);
  const Letter xi(m.i, +1);
  switch (m.op) {
    case NielsenOp::swap:
      s.set_generator_image(m.i, {Letter(m.j, +1)});
      s.set_generator_image(m.j, {xi});
      break;
    case NielsenOp::invert:
      s.set_generator_image(m.i, {xi.inverse()});
      break;
    case NielsenOp::left_multiply:
      s.set_generator_image(m.i, {Letter(m.j, m.sign), xi});
      break;
    case NielsenOp::right_multiply:
      s.set_generator_image(m.i, {xi, Letter(m.j, m.sign)});
      break;
  }
  return s;
}

inline Substitution substitution(const Move& m, Rank rank) {
  return std::visit([&](const auto& mv) { return substitution(mv, rank); }, m);
}

// ---------------------------------------------------------------------------
// Application

inline Word substitute(const Substitution& s, const Word& w) { return Word(s.apply(w.letters())); }

inline CyclicWord substitute(const Substitution& s, const CyclicWord& c) {
  detail::require(s.rank() == c.rank(), "substitution rank differs from word rank");
  return CyclicWord::from_letters(s.apply(c.letters()), c.rank());
}

inline Word apply_move(const Move& m, const Word& w, Rank rank) {
  detail::check_rank(w.letters(), rank);
  return substitute(substitution(m, rank), w);
}

inline CyclicWord apply_move(const Move& m, const CyclicWord& c) { return substitute(substitution(m, c.rank()), c); }

inline Word apply_type_I(const TypeIMove& m, const Word& w, Rank rank) { return apply_move(Move(m), w, rank); }
inline CyclicWord apply_type_I(const TypeIMove& m, const CyclicWord& c) { return apply_move(Move(m), c); }
inline Word apply_type_II(const TypeIIMove& m, const Word& w, Rank rank) { return apply_move(Move(m), w, rank); }
inline CyclicWord apply_type_II(const TypeIIMove& m, const CyclicWord& c) { return apply_move(Move(m), c); }

inline Word apply_witness(const AutomorphismWitness& wit, const Word& w, Rank rank) {
  Word out = w;
  for (const Move& m : wit.moves) out = apply_move(m, out, rank);
  return out;
}

inline CyclicWord apply_witness(const AutomorphismWitness& wit, const CyclicWord& c) {
  CyclicWord out = c;
  for (const Move& m : wit.moves) out = apply_move(m, out);
  return out;
}

/// Positional action of a Nielsen move on a tuple.
inline void apply_to_tuple(const NielsenMove& m, std::vector<Word>& tuple) {
  detail::require(!tuple.empty(), "empty tuple");
  validate(m, Rank(static_cast<int>(tuple.size())));
  Word& yi = tuple[static_cast<std::size_t>(m.i - 1)];
  switch (m.op) {
    case NielsenOp::swap:
      std::swap(yi, tuple[static_cast<std::size_t>(m.j - 1)]);
      break;
    case NielsenOp::invert:
      yi = invert(yi);
      break;
    case NielsenOp::left_multiply: {
      const Word& yj = tuple[static_cast<std::size_t>(m.j - 1)];
      yi = concat(m.sign > 0 ? yj : invert(yj), yi);
      break;
    }
    case NielsenOp::right_multiply: {
      const Word& yj = tuple[static_cast<std::size_t>(m.j - 1)];
      yi = concat(yi, m.sign > 0 ? yj : invert(yj));
      break;
    }
  }
}

/// Replays a witness on a tuple: Nielsen moves act positionally, Whitehead
/// moves act on every entry.
inline std::vector<Word> apply_witness(const AutomorphismWitness& wit, std::vector<Word> tuple, Rank rank) {
  for (const Move& m : wit.moves) {
    if (const auto* n = std::get_if<NielsenMove>(&m)) {
      apply_to_tuple(*n, tuple);
    } else {
      const Substitution s = substitution(m, rank);
      for (Word& y : tuple) y = substitute(s, y);
    }
  }
  return tuple;
}

// ---------------------------------------------------------------------------
// Inverses

inline TypeIMove invert_move(const TypeIMove& m) {
  TypeIMove inv;
  inv.permutation.assign(m.permutation.size(), 0);
  for (std::size_t i = 0; i < m.permutation.size(); ++i)
    inv.permutation[static_cast<std::size_t>(m.permutation[i] - 1)] = static_cast<int>(i + 1);
  for (int f : m.flips) inv.flips.push_back(m.permutation[static_cast<std::size_t>(f - 1)]);
  std::sort(inv.flips.begin(), inv.flips.end());
  return inv;
}

/// (a, S) is undone by (a^-1, S - {a} + {a^-1}).
inline TypeIIMove invert_move(const TypeIIMove& m) {
  TypeIIMove inv{m.multiplier.inverse(), {}};
  for (Letter l : m.set) inv.set.push_back(l == m.multiplier ? m.multiplier.inverse() : l);
  std::sort(inv.set.begin(), inv.set.end());
  return inv;
}

inline NielsenMove invert_move(const NielsenMove& m) {
  NielsenMove inv = m;
  if (m.op == NielsenOp::left_multiply || m.op == NielsenOp::right_multiply) inv.sign = -m.sign;
  return inv;
}

inline Move invert_move(const Move& m) {
  return std::visit([](const auto& mv) -> Move { return invert_move(mv); }, m);
}

/// Inverse automorphism for the word action: moves inverted, order reversed.
inline AutomorphismWitness inverse(const AutomorphismWitness& wit) {
  AutomorphismWitness inv;
  for (auto it = wit.moves.rbegin(); it != wit.moves.rend(); ++it) inv.moves.push_back(invert_move(*it));
  return inv;
}

// ---------------------------------------------------------------------------
// Enumeration

/// All non-degenerate type II moves, multiplier-major in Letter order, then
/// by the bitmask of the remaining letters of S. Count: 2g (2^(2g-2) - 1).
inline std::vector<TypeIIMove> enumerate_type_II(Rank rank) {
  const int n = rank.letter_count();
  if (n - 2 >= 62) throw ResourceLimit(PartialState{"type II enumeration", 0, 0, 0});
  std::vector<TypeIIMove> moves;
  moves.reserve(static_cast<std::size_t>(n) * ((std::size_t{1} << (n - 2)) - 1));
  for (int akey = 0; akey < n; ++akey) {
    const Letter a = Letter::from_order_key(akey);
    std::vector<Letter> others;
    for (int key = 0; key < n; ++key)
      if (key != akey && key != a.inverse().order_key()) others.push_back(Letter::from_order_key(key));
    const std::uint64_t limit = std::uint64_t{1} << others.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
      TypeIIMove m{a, {a}};
      for (std::size_t b = 0; b < others.size(); ++b)
        if (mask >> b & 1U) m.set.push_back(others[b]);
      std::sort(m.set.begin(), m.set.end());
      moves.push_back(std::move(m));
    }
  }
  return moves;
}

/// Generators of the signed permutation group: every transposition x_i <-> x_j
/// and every single flip x_i -> x_i^-1.
inline std::vector<TypeIMove> type_I_generators(Rank rank) {
  const int g = rank.value();
  std::vector<int> identity(static_cast<std::size_t>(g));
  std::iota(identity.begin(), identity.end(), 1);
  std::vector<TypeIMove> moves;
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j) {
      TypeIMove m{identity, {}};
      std::swap(m.permutation[static_cast<std::size_t>(i - 1)], m.permutation[static_cast<std::size_t>(j - 1)]);
      moves.push_back(std::move(m));
    }
  for (int i = 1; i <= g; ++i) moves.push_back(TypeIMove{identity, {i}});
  return moves;
}

/// All elementary Nielsen moves in a fixed order: for each ordered pair (i, j),
/// right then left multiplication with sign +1 then -1; then swaps; then inversions.
inline std::vector<NielsenMove> enumerate_nielsen(Rank rank) {
  const int g = rank.value();
  std::vector<NielsenMove> moves;
  for (int i = 1; i <= g; ++i)
    for (int j = 1; j <= g; ++j) {
      if (i == j) continue;
      moves.push_back(NielsenMove::right_multiply(i, j, +1));
      moves.push_back(NielsenMove::right_multiply(i, j, -1));
      moves.push_back(NielsenMove::left_multiply(i, j, +1));
      moves.push_back(NielsenMove::left_multiply(i, j, -1));
    }
  for (int i = 1; i <= g; ++i)
    for (int j = i + 1; j <= g; ++j) moves.push_back(NielsenMove::swap(i, j));
  for (int i = 1; i <= g; ++i) moves.push_back(NielsenMove::invert(i));
  return moves;
}

// ---------------------------------------------------------------------------
// Nielsen reduction

namespace detail {

inline std::size_t total_length(const std::vector<Word>& tuple) {
  std::size_t n = 0;
  for (const Word& w : tuple) n += w.size();
  return n;
}

inline Rank tuple_rank(const std::vector<Word>& tuple) {
  require(!tuple.empty(), "tuple must be non-empty");
  return Rank(static_cast<int>(tuple.size()));
}

}  // namespace detail

struct NielsenReduction {
  std::vector<Word> reduced;
  AutomorphismWitness witness;
};

namespace detail {

inline bool is_multiply(const NielsenMove& m) {
  return m.op == NielsenOp::left_multiply || m.op == NielsenOp::right_multiply;
}

/// Image of entry i under a multiplication move.
inline Word multiplied_entry(const NielsenMove& m, const std::vector<Word>& tuple) {
  const std::size_t i = static_cast<std::size_t>(m.i - 1);
  const std::size_t j = static_cast<std::size_t>(m.j - 1);
  const Word yj = m.sign > 0 ? tuple[j] : invert(tuple[j]);
  return m.op == NielsenOp::right_multiply ? concat(tuple[i], yj) : concat(yj, tuple[i]);
}

inline std::string tuple_key(const std::vector<Word>& tuple) {
  std::string key;
  for (const Word& w : tuple) {
    for (Letter l : w.letters()) key += std::to_string(l.signed_value()) + ',';
    key += '|';
  }
  return key;
}

/// Breadth-first search among tuples of the same total length for one that
/// admits a strictly shortening move. Returns the moves reaching it (the
/// shortening move included), or nothing when the plateau is exhausted.
inline std::optional<std::vector<NielsenMove>> escape_plateau(const std::vector<Word>& start,
                                                                const std::vector<NielsenMove>& moves,
                                                                std::size_t max_states) {
  struct Node {
    std::vector<Word> tuple;
    std::size_t parent;
    std::size_t move;
  };
  std::vector<Node> nodes{{start, 0, 0}};
  std::unordered_set<std::string> seen{tuple_key(start)};
  auto path_to = [&](std::size_t idx, std::size_t last) {
    std::vector<NielsenMove> path{moves[last]};
    for (; idx != 0; idx = nodes[idx].parent) path.push_back(moves[nodes[idx].move]);
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    for (std::size_t k = 0; k < moves.size(); ++k) {
      const NielsenMove& m = moves[k];
      const std::size_t i = static_cast<std::size_t>(m.i - 1);
      Word candidate = multiplied_entry(m, nodes[head].tuple);
      const std::size_t before = nodes[head].tuple[i].size();
      if (candidate.size() < before) return path_to(head, k);
      if (candidate.size() > before) continue;
      std::vector<Word> next = nodes[head].tuple;
      next[i] = std::move(candidate);
      if (!seen.insert(tuple_key(next)).second) continue;
      if (nodes.size() >= max_states)
        throw ResourceLimit(PartialState{"nielsen reduction", nodes.size(), nodes.size(), total_length(start)});
      nodes.push_back({std::move(next), head, k});
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Reduces total length with multiplication moves (in enumerate_nielsen
/// order): the first strictly shortening move when one exists, otherwise a
/// breadth-first walk through equal-length tuples to the nearest one that
/// has a shortening move. Stops when no tuple of the current total length
/// can be shortened.
inline NielsenReduction nielsen_reduce(std::vector<Word> tuple, Rank rank, std::size_t max_plateau = 200000) {
  const Rank positions = detail::tuple_rank(tuple);
  for (const Word& w : tuple) detail::check_rank(w.letters(), rank);
  std::vector<NielsenMove> moves;
  for (const NielsenMove& m : enumerate_nielsen(positions))
    if (detail::is_multiply(m)) moves.push_back(m);

  NielsenReduction out{std::move(tuple), {}};
  for (;;) {
    bool improved = false;
    for (const NielsenMove& m : moves) {
      Word candidate = detail::multiplied_entry(m, out.reduced);
      if (candidate.size() < out.reduced[static_cast<std::size_t>(m.i - 1)].size()) {
        out.reduced[static_cast<std::size_t>(m.i - 1)] = std::move(candidate);
        out.witness.moves.emplace_back(m);
        improved = true;
        break;
      }
    }
    if (improved) continue;
    auto path = detail::escape_plateau(out.reduced, moves, max_plateau);
    if (!path) break;
    for (const NielsenMove& m : *path) {
      apply_to_tuple(m, out.reduced);
      out.witness.moves.emplace_back(m);
    }
  }
  return out;
}

struct BasisResult {
  bool is_basis = false;
  std::vector<Word> reduced;        // Nielsen-reduced tuple
  AutomorphismWitness witness;      // when is_basis: replays the input tuple onto (x1, ..., xg)
};

/// A g-tuple is a basis of F_g iff Nielsen reduction ends at a signed
/// permutation of the standard basis; the witness then finishes with the
/// inversions and swaps putting it in order.
inline BasisResult is_basis(const std::vector<Word>& tuple, Rank rank) {
  detail::require(static_cast<int>(tuple.size()) == rank.value(),
                  "basis test needs exactly " + std::to_string(rank.value()) + " words, got " +
                      std::to_string(tuple.size()));
  NielsenReduction red = nielsen_reduce(tuple, rank);
  BasisResult out{false, red.reduced, std::move(red.witness)};

  std::vector<bool> seen(static_cast<std::size_t>(rank.value()) + 1, false);
  for (const Word& y : out.reduced) {
    if (y.size() != 1 || seen[static_cast<std::size_t>(y[0].generator())]) {
      out.witness = {};
      return out;
    }
    seen[static_cast<std::size_t>(y[0].generator())] = true;
  }

  std::vector<Word> work = out.reduced;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!work[i][0].positive()) {
      const NielsenMove m = NielsenMove::invert(static_cast<int>(i + 1));
      apply_to_tuple(m, work);
      out.witness.moves.emplace_back(m);
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    const int want = static_cast<int>(i + 1);
    if (work[i][0].generator() == want) continue;
    for (std::size_t j = i + 1; j < work.size(); ++j) {
      if (work[j][0].generator() == want) {
        const NielsenMove m = NielsenMove::swap(want, static_cast<int>(j + 1));
        apply_to_tuple(m, work);
        out.witness.moves.emplace_back(m);
        break;
      }
    }
  }
  out.is_basis = true;
  return out;
}

}  // namespace whitebind
