#pragma once

// Deciding whether an element of F_g binds F_g, i.e. lies in no proper free
// factor.
//
// Pipeline: trivial and rank-one cases; cyclic reduction; visibly missing
// generator; Whitehead graph fast path; greedy Whitehead minimization; closure
// of the minimal length level under length-preserving Whitehead moves. The
// element is separable exactly when some minimal-length member of its
// automorphism orbit omits a generator, and by Whitehead's peak reduction all
// minimal-length members are reached from any one of them by
// length-preserving moves.

#include <cstdlib>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "whitebind/automorphism.hpp"
#include "whitebind/errors.hpp"
#include "whitebind/whitehead_graph.hpp"
#include "whitebind/word.hpp"

namespace whitebind {

struct Limits {
  std::size_t max_level_set = 200000;
  std::size_t max_moves = 10000000;

  /// Defaults, with WHITEBIND_MAX_LEVEL_SET overriding the level-set cap.
  static Limits from_env() {
    Limits limits;
    if (const char* v = std::getenv("WHITEBIND_MAX_LEVEL_SET")) {
      char* end = nullptr;
      const unsigned long long n = std::strtoull(v, &end, 10);
      if (end != v && *end == '\0' && n > 0) limits.max_level_set = static_cast<std::size_t>(n);
    }
    return limits;
  }
};

namespace detail {

struct PreparedMove {
  Move move;
  Substitution substitution;
};

inline std::vector<PreparedMove> prepare_type_II(Rank rank) {
  std::vector<PreparedMove> out;
  for (TypeIIMove& m : enumerate_type_II(rank)) {
    Substitution s = substitution(m, rank);
    out.push_back({Move(std::move(m)), std::move(s)});
  }
  return out;
}

inline std::vector<PreparedMove> prepare_type_I(Rank rank) {
  std::vector<PreparedMove> out;
  for (TypeIMove& m : type_I_generators(rank)) {
    Substitution s = substitution(m, rank);
    out.push_back({Move(std::move(m)), std::move(s)});
  }
  return out;
}

class MoveBudget {
 public:
  MoveBudget(const Limits& limits, std::string stage) : cap_(limits.max_moves), stage_(std::move(stage)) {}

  void spend(std::size_t members, std::size_t length) {
    if (++applied_ > cap_) throw ResourceLimit(PartialState{stage_, applied_ - 1, members, length});
  }
  void set_stage(std::string stage) { stage_ = std::move(stage); }
  std::size_t applied() const noexcept { return applied_; }

 private:
  std::size_t cap_;
  std::size_t applied_ = 0;
  std::string stage_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Minimization

struct MinimizationResult {
  CyclicWord minimal;
  AutomorphismWitness witness;  // replays the original onto `minimal`
  std::size_t original_length = 0;
  std::size_t minimal_length = 0;
};

namespace detail {

inline MinimizationResult minimize(const CyclicWord& c, const std::vector<PreparedMove>& moves, MoveBudget& budget) {
  MinimizationResult out{c, {}, c.size(), c.size()};
  bool improved = !c.empty();
  while (improved) {
    improved = false;
    for (const PreparedMove& pm : moves) {
      budget.spend(0, out.minimal.size());
      CyclicWord image = substitute(pm.substitution, out.minimal);
      if (image.size() < out.minimal.size()) {
        out.minimal = std::move(image);
        out.witness.moves.push_back(pm.move);
        improved = true;
        break;
      }
    }
  }
  out.minimal_length = out.minimal.size();
  return out;
}

}  // namespace detail

/// Greedy Whitehead descent: applies the first length-decreasing type II
/// move in enumeration order until none exists. The result has minimal
/// length in the automorphism orbit.
inline MinimizationResult minimize(const CyclicWord& c, const Limits& limits = {}) {
  detail::MoveBudget budget(limits, "minimization");
  return detail::minimize(c, detail::prepare_type_II(c.rank()), budget);
}

/// True when no type II move shortens c.
inline bool is_minimal(const CyclicWord& c) {
  for (const auto& pm : detail::prepare_type_II(c.rank()))
    if (substitute(pm.substitution, c).size() < c.size()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Level sets

/// Members of one minimal length reached from a seed by length-preserving
/// Whitehead moves, in breadth-first discovery order.
class LevelSet {
 public:
  const std::vector<CyclicWord>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool truncated() const noexcept { return truncated_; }
  bool contains(const CyclicWord& c) const { return index_.count(c) != 0; }

  std::optional<std::size_t> index_of(const CyclicWord& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Moves replaying the seed onto member i.
  AutomorphismWitness witness_for(std::size_t i) const {
    AutomorphismWitness wit;
    while (i != 0) {
      wit.moves.push_back(via_[i]);
      i = parent_[i];
    }
    std::reverse(wit.moves.begin(), wit.moves.end());
    return wit;
  }

 private:
  template <typename StopPredicate>
  friend LevelSet explore_level_set(const CyclicWord&, const Limits&, detail::MoveBudget&, StopPredicate&&);

  std::size_t add(CyclicWord c, std::size_t parent, Move via) {
    const std::size_t idx = members_.size();
    index_.emplace(c, idx);
    members_.push_back(std::move(c));
    parent_.push_back(parent);
    via_.push_back(std::move(via));
    return idx;
  }

  std::vector<CyclicWord> members_;
  std::vector<std::size_t> parent_;
  std::vector<Move> via_;
  std::unordered_map<CyclicWord, std::size_t> index_;
  bool truncated_ = false;
  std::optional<std::size_t> stopped_at_;

 public:
  /// Member at which exploration stopped early, if the stop predicate fired.
  std::optional<std::size_t> stopped_at() const noexcept { return stopped_at_; }
};

/// Breadth-first closure of `seed` under the type I generators (transpositions
/// and single flips, which generate every signed permutation) followed by all
/// type II moves, keeping images of the seed's length. Stops as soon as a
/// newly discovered member satisfies `stop`, or flags truncation when the
/// member cap is exceeded.
template <typename StopPredicate>
LevelSet explore_level_set(const CyclicWord& seed, const Limits& limits, detail::MoveBudget& budget,
                           StopPredicate&& stop) {
  LevelSet ls;
  const Rank rank = seed.rank();
  std::vector<detail::PreparedMove> moves = detail::prepare_type_I(rank);
  for (auto& pm : detail::prepare_type_II(rank)) moves.push_back(std::move(pm));

  ls.add(seed, 0, Move(TypeIMove{}));
  if (stop(seed)) {
    ls.stopped_at_ = 0;
    return ls;
  }
  const std::size_t length = seed.size();
  for (std::size_t head = 0; head < ls.members_.size(); ++head) {
    for (const detail::PreparedMove& pm : moves) {
      budget.spend(ls.members_.size(), length);
      CyclicWord image = substitute(pm.substitution, ls.members_[head]);
      if (image.size() != length || ls.index_.count(image)) continue;
      if (ls.members_.size() >= limits.max_level_set) {
        ls.truncated_ = true;
        return ls;
      }
      const std::size_t idx = ls.add(std::move(image), head, pm.move);
      if (stop(ls.members_[idx])) {
        ls.stopped_at_ = idx;
        return ls;
      }
    }
  }
  return ls;
}

inline LevelSet level_set(const CyclicWord& seed, const Limits& limits = {}) {
  detail::MoveBudget budget(limits, "level-set enumeration");
  return explore_level_set(seed, limits, budget, [](const CyclicWord&) { return false; });
}

// ---------------------------------------------------------------------------
// Verdicts and certificates

enum class VerdictKind { binds, separable };

inline const char* to_string(VerdictKind k) { return k == VerdictKind::binds ? "binds" : "separable"; }

/// Replaying `witness` on the word gives a cyclic core `image` that omits
/// generator `omitted_generator`.
struct SeparableCertificate {
  AutomorphismWitness witness;
  int omitted_generator = 1;
  CyclicWord image;
};

/// The word lives in F_1 and is not the identity.
struct RankOneCertificate {};

/// Replaying `witness` on the cyclic core gives `member`, whose Whitehead
/// graph is connected without cut vertex.
struct StallingsCertificate {
  AutomorphismWitness witness;
  CyclicWord member;
};

/// Replaying `witness` on the cyclic core gives the Whitehead-minimal word
/// `minimal`, whose level set has `level_set_size` members, all of full
/// support.
struct LevelSetCertificate {
  AutomorphismWitness witness;
  CyclicWord minimal;
  std::size_t level_set_size = 0;
  std::optional<StallingsCertificate> stallings_member;
};

using Certificate = std::variant<SeparableCertificate, RankOneCertificate, StallingsCertificate, LevelSetCertificate>;

struct VerdictStats {
  std::size_t minimal_length = 0;
  std::size_t level_set_size = 0;
  bool fast_path = false;
  std::size_t moves_applied = 0;
};

struct Verdict {
  VerdictKind kind;
  Word word;
  CyclicWord core;
  Certificate certificate;
  VerdictStats stats;

  Rank rank() const noexcept { return core.rank(); }
  bool binds() const noexcept { return kind == VerdictKind::binds; }
};

namespace detail {

inline Verdict separable(const Word& w, const CyclicWord& core, SeparableCertificate cert, VerdictStats stats) {
  return Verdict{VerdictKind::separable, w, core, std::move(cert), stats};
}

}  // namespace detail

/// Binds or Separable, with a certificate checkable by verify(). Throws
/// ResourceLimit rather than answering from a truncated search.
inline Verdict decide(const Word& w, Rank rank, const Limits& limits = {}) {
  CyclicReduction red = cyclic_reduce(w, rank);
  const CyclicWord& core = red.core;
  VerdictStats stats;

  if (core.empty()) return detail::separable(w, core, {{}, 1, core}, stats);

  if (rank.value() == 1) {
    stats.minimal_length = 1;
    return Verdict{VerdictKind::binds, w, core, RankOneCertificate{}, stats};
  }

  if (int omitted = first_omitted_generator(core)) {
    stats.minimal_length = core.size();
    return detail::separable(w, core, {{}, omitted, core}, stats);
  }

  // A connected Whitehead graph without cut vertex also means core is already
  // Whitehead-minimal.
  if (stallings_criterion(core) == StallingsResult::binds_certified) {
    stats.minimal_length = core.size();
    stats.fast_path = true;
    return Verdict{VerdictKind::binds, w, core, StallingsCertificate{{}, core}, stats};
  }

  detail::MoveBudget budget(limits, "minimization");
  MinimizationResult min = detail::minimize(core, detail::prepare_type_II(rank), budget);
  stats.minimal_length = min.minimal_length;
  if (int omitted = first_omitted_generator(min.minimal)) {
    stats.moves_applied = budget.applied();
    return detail::separable(w, core, {min.witness, omitted, min.minimal}, stats);
  }

  budget.set_stage("level-set enumeration");
  LevelSet ls = explore_level_set(min.minimal, limits, budget,
                                  [](const CyclicWord& c) { return !has_full_support(c); });
  stats.level_set_size = ls.size();
  stats.moves_applied = budget.applied();
  if (auto hit = ls.stopped_at()) {
    AutomorphismWitness wit = min.witness;
    wit.then(ls.witness_for(*hit));
    const CyclicWord& image = ls.members()[*hit];
    return detail::separable(w, core, {std::move(wit), first_omitted_generator(image), image}, stats);
  }
  if (ls.truncated())
    throw ResourceLimit(PartialState{"level-set enumeration", budget.applied(), ls.size(), min.minimal_length});

  LevelSetCertificate cert{min.witness, min.minimal, ls.size(), std::nullopt};
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (stallings_criterion(ls.members()[i]) == StallingsResult::binds_certified) {
      AutomorphismWitness wit = min.witness;
      wit.then(ls.witness_for(i));
      cert.stallings_member = StallingsCertificate{std::move(wit), ls.members()[i]};
      break;
    }
  }
  return Verdict{VerdictKind::binds, w, core, std::move(cert), stats};
}

inline Verdict decide(const CyclicWord& c, const Limits& limits = {}) { return decide(c.as_word(), c.rank(), limits); }

struct VerificationResult {
  bool ok = false;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

namespace detail {

inline VerificationResult fail(std::string reason) { return {false, std::move(reason)}; }

inline VerificationResult verify_stallings(const StallingsCertificate& cert, const CyclicWord& core) {
  const CyclicWord member = apply_witness(cert.witness, core);
  if (member != cert.member) return fail("witness does not replay onto the certified member");
  if (stallings_criterion(member) != StallingsResult::binds_certified)
    return fail("certified member's Whitehead graph is disconnected or has a cut vertex");
  return {true, "Whitehead graph of " + to_string(member) + " is connected without cut vertex"};
}

}  // namespace detail

/// Independently re-checks a verdict's certificate by replay.
inline VerificationResult verify(const Verdict& v, const Limits& limits = {}) {
  const Rank rank = v.rank();
  if (CyclicWord::from_word(v.word, rank) != v.core) return detail::fail("core is not the cyclic reduction of the word");

  return std::visit(
      [&](const auto& cert) -> VerificationResult {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, SeparableCertificate>) {
          if (v.kind != VerdictKind::separable) return detail::fail("separable certificate on a binds verdict");
          if (cert.omitted_generator < 1 || cert.omitted_generator > rank.value())
            return detail::fail("omitted generator outside rank");
          const CyclicWord image = CyclicWord::from_word(apply_witness(cert.witness, v.word, rank), rank);
          if (image != cert.image) return detail::fail("witness does not replay onto the certified image");
          if (support(image).count(cert.omitted_generator)) return detail::fail("image uses the omitted generator");
          return {true, "image " + to_string(image) + " omits x" + std::to_string(cert.omitted_generator)};
        } else if constexpr (std::is_same_v<T, RankOneCertificate>) {
          if (v.kind != VerdictKind::binds) return detail::fail("rank-one certificate on a separable verdict");
          if (rank.value() != 1) return detail::fail("rank-one certificate for rank > 1");
          if (v.word.empty()) return detail::fail("identity does not bind");
          return {true, "non-trivial element of F_1"};
        } else if constexpr (std::is_same_v<T, StallingsCertificate>) {
          if (v.kind != VerdictKind::binds) return detail::fail("Stallings certificate on a separable verdict");
          return detail::verify_stallings(cert, v.core);
        } else {
          if (v.kind != VerdictKind::binds) return detail::fail("level-set certificate on a separable verdict");
          const CyclicWord minimal = apply_witness(cert.witness, v.core);
          if (minimal != cert.minimal) return detail::fail("witness does not replay onto the certified minimal word");
          if (!is_minimal(minimal)) return detail::fail("certified word is not Whitehead-minimal");
          if (!has_full_support(minimal)) return detail::fail("minimal word omits a generator");
          const LevelSet ls = level_set(minimal, limits);
          if (ls.truncated()) return detail::fail("level set could not be exhausted within limits");
          if (ls.size() != cert.level_set_size) return detail::fail("level-set size differs from certificate");
          for (const CyclicWord& m : ls.members())
            if (!has_full_support(m)) return detail::fail("level-set member " + to_string(m) + " omits a generator");
          if (cert.stallings_member) {
            VerificationResult r = detail::verify_stallings(*cert.stallings_member, v.core);
            if (!r) return r;
          }
          return {true, "level set of " + to_string(minimal) + " (" + std::to_string(ls.size()) +
                            " members) exhausted with full support"};
        }
      },
      v.certificate);
}

// ---------------------------------------------------------------------------
// Primitivity

inline bool is_primitive(const Word& w, Rank rank, const Limits& limits = {}) {
  const CyclicWord core = CyclicWord::from_word(w, rank);
  if (core.empty()) return false;
  return minimize(core, limits).minimal_length == 1;
}

struct PowerOfPrimitive {
  bool is_power_of_primitive = false;
  int exponent = 1;
};

inline PowerOfPrimitive is_power_of_primitive(const Word& w, Rank rank, const Limits& limits = {}) {
  const CyclicWord core = CyclicWord::from_word(w, rank);
  if (core.empty()) throw EmptyWord("is_power_of_primitive");
  const CyclicRoot root = cyclic_root(core);
  return {minimize(root.root, limits).minimal_length == 1, root.exponent};
}

// ---------------------------------------------------------------------------
// Brute-force oracle

struct OracleResult {
  bool found = false;           // SeparableWitnessFound vs NoWitnessToDepth
  AutomorphismWitness witness;  // Nielsen moves, replayable on the word
  CyclicWord image;
  std::size_t states_explored = 0;
};

/// Breadth-first search over sequences of at most `depth` elementary Nielsen
/// automorphisms applied to the cyclic core, images capped at core length +
/// depth. Makes no use of length monotonicity; any image omitting a
/// generator is a witness.
inline OracleResult brute_force_oracle(const Word& w, Rank rank, int depth) {
  if (depth < 0) throw std::invalid_argument("oracle depth must be non-negative");
  const CyclicWord core = CyclicWord::from_word(w, rank);
  const std::size_t cap = core.size() + static_cast<std::size_t>(depth);

  std::vector<std::pair<NielsenMove, Substitution>> moves;
  for (const NielsenMove& m : enumerate_nielsen(rank)) moves.emplace_back(m, substitution(m, rank));

  struct Node {
    std::size_t parent;
    std::size_t move;
    int depth;
  };
  std::vector<CyclicWord> states{core};
  std::vector<Node> nodes{{0, 0, 0}};
  std::unordered_map<CyclicWord, std::size_t> seen{{core, 0}};

  auto result_for = [&](std::size_t idx) {
    OracleResult r{true, {}, states[idx], states.size()};
    for (std::size_t i = idx; i != 0; i = nodes[i].parent) r.witness.moves.emplace_back(moves[nodes[i].move].first);
    std::reverse(r.witness.moves.begin(), r.witness.moves.end());
    return r;
  };

  if (!has_full_support(core)) return result_for(0);

  for (std::size_t head = 0; head < states.size(); ++head) {
    if (nodes[head].depth == depth) continue;
    for (std::size_t k = 0; k < moves.size(); ++k) {
      CyclicWord image = substitute(moves[k].second, states[head]);
      if (image.size() > cap || seen.count(image)) continue;
      seen.emplace(image, states.size());
      states.push_back(std::move(image));
      nodes.push_back({head, k, nodes[head].depth + 1});
      if (!has_full_support(states.back())) return result_for(states.size() - 1);
    }
  }
  return OracleResult{false, {}, core, states.size()};
}

// ---------------------------------------------------------------------------

/// x1^2 x2^2 ... xg^2 (x1 for g = 1): its Whitehead graph is a single cycle
/// through all 2g vertices, so it binds. Checked on every call.
inline CyclicWord sample_binding_word(Rank rank) {
  std::vector<Letter> letters;
  if (rank.value() == 1) {
    letters.emplace_back(1, +1);
  } else {
    for (int i = 1; i <= rank.value(); ++i) {
      letters.emplace_back(i, +1);
      letters.emplace_back(i, +1);
    }
  }
  CyclicWord c = CyclicWord::from_letters(letters, rank);
  if (!decide(c).binds())
    throw std::logic_error("sample binding word " + to_string(c) + " failed to bind");
  return c;
}

}  // namespace whitebind
