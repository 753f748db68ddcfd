#pragma once

// JSON form of moves and witnesses. A witness is an array of move records:
//   {"kind": "typeI", "permutation": [2, 1], "flips": [1]}
//   {"kind": "typeII", "multiplier": -2, "set": [1, -2]}
//   {"kind": "nielsen", "op": "right_multiply", "i": 1, "j": 2, "sign": -1}
// Signed letters are written as +k / -k.

#include <string>

#include "json.hpp"
#include "whitebind/automorphism.hpp"
#include "whitebind/errors.hpp"

namespace whitebind {

using json = nlohmann::json;

inline const char* to_string(NielsenOp op) {
  switch (op) {
    case NielsenOp::swap: return "swap";
    case NielsenOp::invert: return "invert";
    case NielsenOp::left_multiply: return "left_multiply";
    case NielsenOp::right_multiply: return "right_multiply";
  }
  return "?";
}

inline json to_json(const Move& move) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TypeIMove>) {
          return {{"kind", "typeI"}, {"permutation", m.permutation}, {"flips", m.flips}};
        } else if constexpr (std::is_same_v<T, TypeIIMove>) {
          json set = json::array();
          for (Letter l : m.set) set.push_back(l.signed_value());
          return {{"kind", "typeII"}, {"multiplier", m.multiplier.signed_value()}, {"set", std::move(set)}};
        } else {
          json j = {{"kind", "nielsen"}, {"op", to_string(m.op)}, {"i", m.i}};
          if (m.op != NielsenOp::invert) j["j"] = m.j;
          if (m.op == NielsenOp::left_multiply || m.op == NielsenOp::right_multiply) j["sign"] = m.sign;
          return j;
        }
      },
      move);
}

inline json to_json(const AutomorphismWitness& wit) {
  json arr = json::array();
  for (const Move& m : wit.moves) arr.push_back(to_json(m));
  return arr;
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("move record is missing \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

inline Letter letter_from_json(const json& v) {
  if (!v.is_number_integer() || v.get<long long>() == 0)
    throw FormatError("signed letter must be a non-zero integer");
  return Letter::from_signed(v.get<int>());
}

inline std::vector<int> int_array(const json& v, const char* key) {
  if (!v.is_array()) throw FormatError(std::string("\"") + key + "\" must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) throw FormatError(std::string("\"") + key + "\" must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace detail

inline Move move_from_json(const json& j) {
  const json& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw FormatError("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "typeI") {
    return TypeIMove{detail::int_array(detail::field(j, "permutation"), "permutation"),
                     detail::int_array(detail::field(j, "flips"), "flips")};
  }
  if (k == "typeII") {
    TypeIIMove m{detail::letter_from_json(detail::field(j, "multiplier")), {}};
    const json& set = detail::field(j, "set");
    if (!set.is_array()) throw FormatError("\"set\" must be an array");
    for (const json& e : set) m.set.push_back(detail::letter_from_json(e));
    return m;
  }
  if (k == "nielsen") {
    const json& opj = detail::field(j, "op");
    if (!opj.is_string()) throw FormatError("\"op\" must be a string");
    const std::string op = opj.get<std::string>();
    const int i = detail::int_field(j, "i");
    if (op == "invert") return NielsenMove::invert(i);
    const int jj = detail::int_field(j, "j");
    if (op == "swap") return NielsenMove::swap(i, jj);
    const int sign = detail::int_field(j, "sign");
    if (op == "left_multiply") return NielsenMove::left_multiply(i, jj, sign);
    if (op == "right_multiply") return NielsenMove::right_multiply(i, jj, sign);
    throw FormatError("unknown Nielsen op \"" + op + "\"");
  }
  throw FormatError("unknown move kind \"" + k + "\"");
}

inline AutomorphismWitness witness_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("witness must be a JSON array");
  AutomorphismWitness wit;
  for (const json& m : j) wit.moves.push_back(move_from_json(m));
  return wit;
}

}  // namespace whitebind
