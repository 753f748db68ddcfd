#pragma once

// whitebind command line front end. Exit codes: 0 binds / true / valid,
// 1 separable / false / invalid, 2 input error, 3 resource limit.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "whitebind/whitebind.hpp"

namespace whitebind::cli {

enum ExitCode : int { kTrue = 0, kFalse = 1, kInputError = 2, kResourceLimit = 3 };

struct Options {
  std::optional<int> rank;
  bool json = false;
  bool dot = false;
  std::size_t max_level_set = 0;  // 0: default or environment
  std::size_t max_moves = 0;
  int oracle_depth = 6;
  unsigned jobs = 1;
};

inline Limits limits_from(const Options& opt) {
  Limits limits = Limits::from_env();
  if (opt.max_level_set) limits.max_level_set = opt.max_level_set;
  if (opt.max_moves) limits.max_moves = opt.max_moves;
  return limits;
}

/// Rank is the --rank value when given, otherwise the largest generator index
/// spelled in the text.
inline Rank resolve_rank(const std::vector<std::string>& texts, std::optional<int> explicit_rank) {
  int max_generator = 0;
  for (const std::string& t : texts) max_generator = std::max(max_generator, parse_letters(t).max_generator);
  if (explicit_rank) {
    if (*explicit_rank < 1) throw FormatError("--rank must be at least 1");
    if (max_generator > *explicit_rank) throw RankExceeded(max_generator, *explicit_rank);
    return Rank(*explicit_rank);
  }
  if (max_generator == 0) throw FormatError("--rank is required when the word does not determine it");
  return Rank(max_generator);
}

inline std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

// ---------------------------------------------------------------------------
// Commands. Each returns the exit code and writes its result to `out`.

inline int cmd_binds(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const Verdict v = decide(parse_word(text, rank), rank, limits_from(opt));
  if (opt.json)
    out << dump(to_json(v), true) << '\n';
  else
    out << to_string(v.kind) << '\n';
  return v.binds() ? kTrue : kFalse;
}

inline int cmd_wgraph(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const WhiteheadGraph g = WhiteheadGraph::build(CyclicWord::from_word(parse_word(text, rank), rank));
  if (opt.json)
    out << dump(to_json(g), true) << '\n';
  else
    out << to_dot(g);
  return kTrue;
}

inline json minimize_json(const Word& w, Rank rank, const MinimizationResult& m) {
  return {{"word", to_string(w)},
          {"rank", rank.value()},
          {"original_length", m.original_length},
          {"minimal_length", m.minimal_length},
          {"minimal", to_string(m.minimal)},
          {"witness", to_json(m.witness)}};
}

inline int cmd_minimize(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const Word w = parse_word(text, rank);
  const MinimizationResult m = minimize(CyclicWord::from_word(w, rank), limits_from(opt));
  if (opt.json)
    out << dump(minimize_json(w, rank, m), true) << '\n';
  else
    out << "length " << m.original_length << " -> " << m.minimal_length << ": " << to_string(m.minimal) << '\n';
  return kTrue;
}

inline int cmd_primitive(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const bool p = is_primitive(parse_word(text, rank), rank, limits_from(opt));
  if (opt.json)
    out << json{{"word", text}, {"rank", rank.value()}, {"primitive", p}}.dump() << '\n';
  else
    out << "primitive: " << (p ? "true" : "false") << '\n';
  return p ? kTrue : kFalse;
}

inline int cmd_power_of_primitive(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const PowerOfPrimitive r = is_power_of_primitive(parse_word(text, rank), rank, limits_from(opt));
  if (opt.json)
    out << json{{"word", text},
                {"rank", rank.value()},
                {"power_of_primitive", r.is_power_of_primitive},
                {"exponent", r.exponent}}
               .dump()
        << '\n';
  else
    out << "power of primitive: " << (r.is_power_of_primitive ? "true" : "false") << " (exponent " << r.exponent
        << ")\n";
  return r.is_power_of_primitive ? kTrue : kFalse;
}

inline int cmd_basis(const std::vector<std::string>& texts, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank(texts, opt.rank);
  std::vector<Word> tuple;
  for (const std::string& t : texts) tuple.push_back(parse_word(t, rank));
  const BasisResult r = is_basis(tuple, rank);
  json reduced = json::array();
  for (const Word& w : r.reduced) reduced.push_back(to_string(w));
  if (opt.json) {
    out << dump({{"rank", rank.value()},
                 {"basis", r.is_basis},
                 {"reduced", reduced},
                 {"witness", r.is_basis ? to_json(r.witness) : json(nullptr)}},
                true)
        << '\n';
  } else {
    out << "basis: " << (r.is_basis ? "true" : "false") << '\n';
    if (r.is_basis) out << "witness: " << to_json(r.witness).dump() << '\n';
    else out << "reduced: " << reduced.dump() << '\n';
  }
  return r.is_basis ? kTrue : kFalse;
}

inline int cmd_fills_up(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const HandlebodyContext ctx(rank.value());
  const TopologicalClaim c = fills_up(ctx, parse_word(text, rank), limits_from(opt));
  if (opt.json) {
    out << dump({{"word", text}, {"genus", ctx.genus()}, {"fills_up", c.value}, {"citations", c.explanation}}, true)
        << '\n';
  } else {
    out << "fills up: " << (c.value ? "true" : "false") << '\n';
    for (const std::string& e : c.explanation) out << "  " << e << '\n';
  }
  return c.value ? kTrue : kFalse;
}

inline int cmd_report(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const TopologicalVerdict r = report(HandlebodyContext(rank.value()), parse_word(text, rank), limits_from(opt));
  out << dump(to_json(r), true) << '\n';
  return r.binds ? kTrue : kFalse;
}

inline int cmd_oracle(const std::string& text, const Options& opt, std::ostream& out) {
  const Rank rank = resolve_rank({text}, opt.rank);
  const OracleResult r = brute_force_oracle(parse_word(text, rank), rank, opt.oracle_depth);
  out << dump({{"word", text},
               {"rank", rank.value()},
               {"depth", opt.oracle_depth},
               {"found", r.found},
               {"image", to_string(r.image)},
               {"witness", to_json(r.witness)},
               {"states_explored", r.states_explored}},
              opt.json)
      << '\n';
  return r.found ? kFalse : kTrue;
}

inline int cmd_verify_certificate(const std::string& path, const Options& opt, std::istream& in, std::ostream& out) {
  std::string content;
  if (path == "-") {
    content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open " + path);
    content.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  json j = json::parse(content, nullptr, false);
  if (j.is_discarded()) throw FormatError("certificate is not valid JSON");
  const VerificationResult r = verify(verdict_from_json(j), limits_from(opt));
  out << (r.ok ? "valid: " : "invalid: ") << r.reason << '\n';
  return r.ok ? kTrue : kFalse;
}

// ---------------------------------------------------------------------------
// Batch: one JSON record per input line, one JSON result per output line.

/// {"word": "...", "rank": g, "command": "binds" | "minimize" | "primitive" |
///  "power_of_primitive" | "fills_up" | "report" | "wgraph"}; rank and
/// command optional.
inline json run_record(const std::string& line, std::size_t line_no, const Options& base) {
  try {
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) throw FormatError("line is not a JSON object");
    if (!rec.contains("word") || !rec["word"].is_string()) throw FormatError("record needs a string \"word\"");
    Options opt = base;
    if (rec.contains("rank")) {
      if (!rec["rank"].is_number_integer()) throw FormatError("\"rank\" must be an integer");
      opt.rank = rec["rank"].get<int>();
    }
    const std::string text = rec["word"].get<std::string>();
    const std::string command = rec.contains("command") && rec["command"].is_string()
                                    ? rec["command"].get<std::string>()
                                    : std::string("binds");
    const Rank rank = resolve_rank({text}, opt.rank);
    const Word w = parse_word(text, rank);
    const Limits limits = limits_from(opt);
    if (command == "binds") return to_json(decide(w, rank, limits));
    if (command == "minimize") return minimize_json(w, rank, minimize(CyclicWord::from_word(w, rank), limits));
    if (command == "primitive") return {{"word", text}, {"rank", rank.value()}, {"primitive", is_primitive(w, rank, limits)}};
    if (command == "power_of_primitive") {
      const PowerOfPrimitive p = is_power_of_primitive(w, rank, limits);
      return {{"word", text}, {"rank", rank.value()}, {"power_of_primitive", p.is_power_of_primitive}, {"exponent", p.exponent}};
    }
    if (command == "fills_up") {
      const TopologicalClaim c = fills_up(HandlebodyContext(rank.value()), w, limits);
      return {{"word", text}, {"genus", rank.value()}, {"fills_up", c.value}, {"citations", c.explanation}};
    }
    if (command == "report") return to_json(report(HandlebodyContext(rank.value()), w, limits));
    if (command == "wgraph") return to_json(WhiteheadGraph::build(CyclicWord::from_word(w, rank)));
    throw FormatError("unknown command \"" + command + "\"");
  } catch (const ResourceLimit& e) {
    return {{"line", line_no}, {"error", e.what()}, {"error_kind", "resource_limit"}};
  } catch (const std::exception& e) {
    return {{"line", line_no}, {"error", e.what()}, {"error_kind", "input"}};
  }
}

inline std::vector<std::string> run_batch_lines(const std::vector<std::string>& lines, const Options& opt) {
  std::vector<std::string> results(lines.size());
  const unsigned jobs = std::max(1U, std::min<unsigned>(opt.jobs, static_cast<unsigned>(std::max<std::size_t>(lines.size(), 1))));
  auto worker = [&](unsigned id) {
    for (std::size_t i = id; i < lines.size(); i += jobs) results[i] = run_record(lines[i], i + 1, opt).dump();
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
    for (std::thread& t : pool) t.join();
  }
  return results;
}

inline int cmd_batch(const std::string& path, const Options& opt, std::istream& in, std::ostream& out) {
  std::ifstream file;
  std::istream* src = &in;
  if (path != "-") {
    file.open(path);
    if (!file) throw FormatError("cannot open " + path);
    src = &file;
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(*src, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  for (const std::string& r : run_batch_lines(lines, opt)) out << r << '\n';
  return kTrue;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"whitebind: decide whether free group elements bind the free group"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rank", opt.rank, "rank g of the free group (default: largest generator in the word)");
    sub->add_option("--max-level-set", opt.max_level_set, "cap on level-set members (default 200000)");
    sub->add_option("--max-moves", opt.max_moves, "cap on move applications (default 10000000)");
  };

  std::string word;
  std::vector<std::string> words;
  std::string path;

  auto* binds = app.add_subcommand("binds", "decide whether WORD binds F_g");
  binds->add_option("word", word, "word in compact (abAB) or indexed (x1 x2 X1 X2) form")->required();
  add_common(binds);
  binds->add_flag("--json", opt.json, "print the verdict with its certificate as JSON");

  auto* wgraph = app.add_subcommand("wgraph", "export the Whitehead graph of WORD");
  wgraph->add_option("word", word)->required();
  add_common(wgraph);
  auto* dot_flag = wgraph->add_flag("--dot", opt.dot, "Graphviz DOT output (default)");
  wgraph->add_flag("--json", opt.json, "JSON output")->excludes(dot_flag);

  auto* minimize_cmd = app.add_subcommand("minimize", "Whitehead-minimize WORD");
  minimize_cmd->add_option("word", word)->required();
  add_common(minimize_cmd);
  minimize_cmd->add_flag("--json", opt.json);

  auto* primitive = app.add_subcommand("primitive", "test whether WORD is primitive");
  primitive->add_option("word", word)->required();
  add_common(primitive);
  primitive->add_flag("--json", opt.json);

  auto* power = app.add_subcommand("power-of-primitive", "test whether WORD is a power of a primitive element");
  power->add_option("word", word)->required();
  add_common(power);
  power->add_flag("--json", opt.json);

  auto* basis = app.add_subcommand("basis", "test whether WORDS form a basis of F_g");
  basis->add_option("words", words)->required();
  basis->add_option("--rank", opt.rank);
  basis->add_flag("--json", opt.json);

  auto* fills = app.add_subcommand("fills-up", "whether the knot class WORD fills up the genus-g handlebody");
  fills->add_option("word", word)->required();
  add_common(fills);
  fills->add_flag("--json", opt.json);

  auto* report_cmd = app.add_subcommand("report", "full handlebody report for WORD (JSON)");
  report_cmd->add_option("word", word)->required();
  add_common(report_cmd);

  auto* oracle = app.add_subcommand("oracle", "bounded brute-force search for a separating automorphism (debug)");
  oracle->add_option("word", word)->required();
  oracle->add_option("--rank", opt.rank);
  oracle->add_option("--oracle-depth", opt.oracle_depth, "number of Nielsen moves to search (default 6)");
  oracle->add_flag("--json", opt.json);

  auto* verify_cmd = app.add_subcommand("verify-certificate", "replay a verdict JSON and check its certificate");
  verify_cmd->add_option("file", path, "verdict JSON file, or - for stdin")->required();
  verify_cmd->add_option("--max-level-set", opt.max_level_set);
  verify_cmd->add_option("--max-moves", opt.max_moves);

  auto* batch = app.add_subcommand("batch", "process a JSONL file, one result line per input line");
  batch->add_option("file", path, "JSONL file, or - for stdin")->required();
  batch->add_option("--max-level-set", opt.max_level_set);
  batch->add_option("--max-moves", opt.max_moves);
  batch->add_option("--jobs", opt.jobs, "worker threads (output order is unaffected)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*binds) return cmd_binds(word, opt, out);
    if (*wgraph) return cmd_wgraph(word, opt, out);
    if (*minimize_cmd) return cmd_minimize(word, opt, out);
    if (*primitive) return cmd_primitive(word, opt, out);
    if (*power) return cmd_power_of_primitive(word, opt, out);
    if (*basis) return cmd_basis(words, opt, out);
    if (*fills) return cmd_fills_up(word, opt, out);
    if (*report_cmd) return cmd_report(word, opt, out);
    if (*oracle) return cmd_oracle(word, opt, out);
    if (*verify_cmd) return cmd_verify_certificate(path, opt, in, out);
    if (*batch) return cmd_batch(path, opt, in, out);
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace whitebind::cli
