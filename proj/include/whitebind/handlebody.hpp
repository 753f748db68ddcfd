#pragma once

// Topological reading of a verdict for a knot class in a genus-g handlebody V,
// with pi_1(V) identified with F_g through a fixed one-vertex spine. No
// topology is computed here; every flag is the algebraic verdict plus the
// statement that licenses it.

#include <string>
#include <vector>

#include "json.hpp"
#include "whitebind/separability.hpp"
#include "whitebind/verdict_json.hpp"
#include "whitebind/word.hpp"

namespace whitebind {

namespace citation {

inline constexpr const char* boundary_complement =
    "Lemma 1.1: for a knot K on the boundary of M, the surface (boundary of M) minus K is "
    "incompressible in M exactly when K binds pi_1(M)";
inline constexpr const char* binds_implies_fills =
    "Lemma 1.4: a knot that binds pi_1(M) fills up M";
inline constexpr const char* fills_implies_binds =
    "Lemma 1.4 (converse): when M satisfies the SBKC, a knot that fills up M binds pi_1(M)";
inline constexpr const char* sbkc_handlebody =
    "SBKC remark: a genus g handlebody satisfies the SBKC, each free splitting of its "
    "fundamental group being realized by a separating disk";

}  // namespace citation

inline constexpr const char* boundary_realization_note =
    "interpretation: the boundary statement concerns a curve on the boundary of V in this "
    "homotopy class; realizability of the class on the boundary is not checked";

class HandlebodyContext {
 public:
  explicit HandlebodyContext(int genus) : rank_(genus) {}

  int genus() const noexcept { return rank_.value(); }
  Rank rank() const noexcept { return rank_; }

 private:
  Rank rank_;
};

struct TopologicalClaim {
  bool value = false;
  std::vector<std::string> explanation;
};

struct TopologicalVerdict {
  CyclicWord word;
  bool binds = false;
  bool fills_up = false;
  bool boundary_complement_incompressible = false;
  std::vector<std::string> citations;
  std::string note;
  Verdict verdict;
};

inline TopologicalClaim fills_up(const HandlebodyContext& ctx, const Word& w, const Limits& limits = {}) {
  const bool b = decide(w, ctx.rank(), limits).binds();
  return {b, {citation::binds_implies_fills, citation::fills_implies_binds, citation::sbkc_handlebody}};
}

inline TopologicalClaim boundary_complement_incompressible(const HandlebodyContext& ctx, const Word& w,
                                                           const Limits& limits = {}) {
  const bool b = decide(w, ctx.rank(), limits).binds();
  return {b, {citation::boundary_complement, boundary_realization_note}};
}

/// One decision fanned out into every flag.
inline TopologicalVerdict report(const HandlebodyContext& ctx, const Word& w, const Limits& limits = {}) {
  Verdict v = decide(w, ctx.rank(), limits);
  const bool b = v.binds();
  return TopologicalVerdict{v.core,
                            b,
                            b,
                            b,
                            {citation::boundary_complement, citation::binds_implies_fills,
                             citation::fills_implies_binds, citation::sbkc_handlebody},
                            boundary_realization_note,
                            std::move(v)};
}

inline nlohmann::json to_json(const TopologicalVerdict& r) {
  return {{"genus", r.word.rank().value()},
          {"word", to_string(r.word)},
          {"binds", r.binds},
          {"fills_up", r.fills_up},
          {"boundary_complement_incompressible", r.boundary_complement_incompressible},
          {"citations", r.citations},
          {"note", r.note},
          {"verdict", to_json(r.verdict)}};
}

}  // namespace whitebind
