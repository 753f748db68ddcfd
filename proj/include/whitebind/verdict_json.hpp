#pragma once

// Verdict JSON:
//   {"word": "...", "rank": g, "verdict": "binds"|"separable",
//    "certificate": {...}, "stats": {"minimal_length": n, "level_set_size": m, "fast_path": b}}
// Certificate kinds: "omitted_generator", "rank_one", "stallings", "level_set".

#include <string>

#include "json.hpp"
#include "whitebind/errors.hpp"
#include "whitebind/separability.hpp"
#include "whitebind/witness_json.hpp"

namespace whitebind {

namespace detail {

inline json stallings_json(const StallingsCertificate& c) {
  return {{"member", to_string(c.member)}, {"witness", to_json(c.witness)}};
}

inline json certificate_json(const Certificate& cert) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SeparableCertificate>) {
          return {{"kind", "omitted_generator"},
                  {"omitted_generator", c.omitted_generator},
                  {"image", to_string(c.image)},
                  {"witness", to_json(c.witness)}};
        } else if constexpr (std::is_same_v<T, RankOneCertificate>) {
          return {{"kind", "rank_one"}};
        } else if constexpr (std::is_same_v<T, StallingsCertificate>) {
          json j = stallings_json(c);
          j["kind"] = "stallings";
          return j;
        } else {
          return {{"kind", "level_set"},
                  {"minimal", to_string(c.minimal)},
                  {"level_set_size", c.level_set_size},
                  {"witness", to_json(c.witness)},
                  {"stallings_member", c.stallings_member ? stallings_json(*c.stallings_member) : json(nullptr)}};
        }
      },
      cert);
}

inline const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::string string_field(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_string()) throw FormatError(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::size_t size_field(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number_unsigned()) throw FormatError(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

inline CyclicWord cyclic_field(const json& j, const char* key, Rank rank) {
  return CyclicWord::from_word(parse_word(string_field(j, key), rank), rank);
}

inline StallingsCertificate stallings_from_json(const json& j, Rank rank) {
  return {witness_from_json(require_field(j, "witness")), cyclic_field(j, "member", rank)};
}

}  // namespace detail

inline json to_json(const Verdict& v) {
  return {{"word", to_string(v.word)},
          {"rank", v.rank().value()},
          {"verdict", to_string(v.kind)},
          {"certificate", detail::certificate_json(v.certificate)},
          {"stats",
           {{"minimal_length", v.stats.minimal_length},
            {"level_set_size", v.stats.level_set_size},
            {"fast_path", v.stats.fast_path}}}};
}

/// Rebuilds a verdict for verify(). Throws FormatError, SyntaxError or
/// RankExceeded on malformed input.
inline Verdict verdict_from_json(const json& j) {
  const json& rank_j = detail::require_field(j, "rank");
  if (!rank_j.is_number_integer() || rank_j.get<long long>() < 1 || rank_j.get<long long>() > 1000000)
    throw FormatError("\"rank\" must be a positive integer");
  const Rank rank(rank_j.get<int>());
  const Word word = parse_word(detail::string_field(j, "word"), rank);

  const std::string kind_s = detail::string_field(j, "verdict");
  VerdictKind kind;
  if (kind_s == "binds")
    kind = VerdictKind::binds;
  else if (kind_s == "separable")
    kind = VerdictKind::separable;
  else
    throw FormatError("\"verdict\" must be \"binds\" or \"separable\"");

  const json& c = detail::require_field(j, "certificate");
  const std::string ck = detail::string_field(c, "kind");
  Certificate cert = RankOneCertificate{};
  if (ck == "omitted_generator") {
    const json& og = detail::require_field(c, "omitted_generator");
    if (!og.is_number_integer()) throw FormatError("\"omitted_generator\" must be an integer");
    cert = SeparableCertificate{witness_from_json(detail::require_field(c, "witness")), og.get<int>(),
                                detail::cyclic_field(c, "image", rank)};
  } else if (ck == "rank_one") {
    cert = RankOneCertificate{};
  } else if (ck == "stallings") {
    cert = detail::stallings_from_json(c, rank);
  } else if (ck == "level_set") {
    LevelSetCertificate ls{witness_from_json(detail::require_field(c, "witness")),
                           detail::cyclic_field(c, "minimal", rank), detail::size_field(c, "level_set_size"),
                           std::nullopt};
    if (c.contains("stallings_member") && !c.at("stallings_member").is_null())
      ls.stallings_member = detail::stallings_from_json(c.at("stallings_member"), rank);
    cert = std::move(ls);
  } else {
    throw FormatError("unknown certificate kind \"" + ck + "\"");
  }

  VerdictStats stats;
  if (j.contains("stats") && j.at("stats").is_object()) {
    const json& s = j.at("stats");
    if (s.contains("minimal_length")) stats.minimal_length = detail::size_field(s, "minimal_length");
    if (s.contains("level_set_size")) stats.level_set_size = detail::size_field(s, "level_set_size");
    if (s.contains("fast_path") && s.at("fast_path").is_boolean()) stats.fast_path = s.at("fast_path").get<bool>();
  }
  return Verdict{kind, word, CyclicWord::from_word(word, rank), std::move(cert), stats};
}

}  // namespace whitebind
