#include "negata/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "negata/conllu.hpp"
#include "negata/corpus.hpp"
#include "negata/cues.hpp"
#include "negata/metrics.hpp"
#include "negata/reversal.hpp"

namespace negata {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lexicon precedence: explicit path, then NEGATA_LEXICON, then built-in.
CueLexicon resolve_lexicon(const std::string& path) {
  if (!path.empty()) return CueLexicon::load(path);
  if (const char* env = std::getenv("NEGATA_LEXICON"); env && *env) return CueLexicon::load(env);
  return CueLexicon::defaults();
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  int n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(n) + ": expected key=value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("config: " + key + " must be true or false");
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    long x = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("config: " + key + " must be an integer");
  }
}

void apply_tasks(BuildConfig& config, const std::string& spec) {
  config.nspp = config.nsp = false;
  std::istringstream in(spec);
  for (std::string t; std::getline(in, t, ',');) {
    if (t == "nspp") config.nspp = true;
    else if (t == "nsp") config.nsp = true;
    else throw UsageError("unknown task '" + t + "'");
  }
}

void apply_subset(BuildConfig& config, const std::string& spec) {
  auto mode = parse_subset_mode(spec);
  if (!mode) throw UsageError("unknown subset '" + spec + "'");
  config.subset = *mode;
}

std::string read_all(std::istream& in) {
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

ordered_json edit_json(const Edit& e) {
  ordered_json j = {{"op", to_string(e.op)},
                    {"kind", to_string(e.kind)},
                    {"position", e.position},
                    {"before", e.before},
                    {"after", e.after},
                    {"space_after", e.space_after}};
  if (e.left_space_after) j["left_space_after"] = *e.left_space_after;
  return j;
}

std::string cue_kind_name(CueKind k) {
  switch (k) {
    case CueKind::Not: return "Not";
    case CueKind::Nt: return "Nt";
    case CueKind::Never: return "Never";
    case CueKind::Lexical: return "Lexical";
  }
  return "?";
}

struct BuildArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string tasks;
  std::string subset;
  long val_pairs = 0;
  std::uint64_t seed = 0;
  std::string lexicon;
  bool no_cue_matching = false;
  int jobs = 1;
  std::string config;
  bool tsv = false;
};

int do_build(const BuildArgs& a, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
  BuildConfig config;
  std::string lexicon_path;
  if (!a.config.empty()) {
    for (const auto& [key, value] : read_config_file(a.config)) {
      if (key == "seed") config.seed = static_cast<std::uint64_t>(parse_long(key, value));
      else if (key == "val_pairs") config.val_pairs = parse_long(key, value);
      else if (key == "subset") apply_subset(config, value);
      else if (key == "tasks") apply_tasks(config, value);
      else if (key == "match_cue_distribution") config.match_cue_distribution = parse_bool(key, value);
      else if (key == "lexicon") lexicon_path = value;
      else if (key == "jobs") config.jobs = static_cast<int>(parse_long(key, value));
      else if (key == "tsv") config.tsv = parse_bool(key, value);
      else throw UsageError("config: unknown key '" + key + "'");
    }
  }
  if (cmd.count("--seed")) config.seed = a.seed;
  if (cmd.count("--val-pairs")) config.val_pairs = a.val_pairs;
  if (cmd.count("--subset")) apply_subset(config, a.subset);
  if (cmd.count("--tasks")) apply_tasks(config, a.tasks);
  if (cmd.count("--no-cue-matching")) config.match_cue_distribution = false;
  if (cmd.count("--lexicon")) lexicon_path = a.lexicon;
  if (cmd.count("--jobs")) config.jobs = a.jobs;
  if (cmd.count("--tsv")) config.tsv = true;
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  CueLexicon lexicon = resolve_lexicon(lexicon_path);
  std::vector<std::filesystem::path> inputs(a.inputs.begin(), a.inputs.end());
  std::vector<Diagnostic> diagnostics;
  BuildInput input = read_inputs(inputs, &diagnostics);
  for (const auto& d : diagnostics) err << format_diagnostic(d) << "\n";
  Datasets data = build_datasets(input, config, lexicon);
  write_datasets(data, a.out);
  const auto& m = data.manifest;
  out << "records " << m["records"]["total"] << " (negated " << m["records"]["negated_origin"] << ", affirmative "
      << m["records"]["affirmative_origin"] << "), shortfall " << m["selection"]["shortfall"] << "\n";
  return kExitOk;
}

int do_reverse(const std::string& cue_name, const std::string& lexicon_path, std::istream& in,
               std::ostream& out, std::ostream& err) {
  auto cue = parse_cue(cue_name);
  if (!cue) throw UsageError("unknown cue '" + cue_name + "'");
  CueLexicon lexicon = resolve_lexicon(lexicon_path);
  auto parsed = parse_conllu(read_all(in), "<stdin>");
  for (const auto& d : parsed.diagnostics) err << format_diagnostic(d) << "\n";
  if (parsed.sentences.size() != 1) {
    err << "expected exactly one sentence, got " << parsed.sentences.size() << "\n";
    return kExitData;
  }
  const ParsedSentence& s = parsed.sentences.front();
  auto r = reverse_polarity(s, CuePolicy::fixed(*cue), 0, lexicon);
  ordered_json j;
  j["input_text"] = detokenize(s);
  if (!r) {
    j["rejection"] = {{"reason", to_string(r.error().reason)}, {"detail", r.error().detail}};
  } else {
    const auto& o = r.outcome();
    j["output_text"] = o.text;
    j["direction"] = to_string(o.direction);
    j["cue_used"] = to_string(o.cue_used);
    if (o.requested) j["cue_requested"] = to_string(*o.requested);
    j["edits"] = ordered_json::array();
    for (const auto& e : o.edits) j["edits"].push_back(edit_json(e));
  }
  out << j.dump() << "\n";
  return kExitOk;
}

int do_detect(const std::string& lexicon_path, std::istream& in, std::ostream& out, std::ostream& err) {
  CueLexicon lexicon = resolve_lexicon(lexicon_path);
  auto parsed = parse_conllu(read_all(in), "<stdin>");
  for (const auto& d : parsed.diagnostics) err << format_diagnostic(d) << "\n";
  for (const auto& s : parsed.sentences) {
    ordered_json j;
    j["text"] = detokenize(s);
    j["cues"] = ordered_json::array();
    for (const auto& c : detect_cues(s, lexicon)) {
      ordered_json cj = {{"kind", cue_kind_name(c.kind)}, {"text", c.text}, {"token_index", c.token_index},
                         {"length", c.length}};
      cj["attached_to"] = c.attached_to ? ordered_json(*c.attached_to) : ordered_json(nullptr);
      j["cues"].push_back(cj);
    }
    auto v = eligibility(s, lexicon);
    j["main_verb"] = v.main ? ordered_json(*v.main) : ordered_json(nullptr);
    j["verdict"] = v.eligible() ? "Eligible" : "Rejected";
    if (!v.eligible()) j["reason"] = to_string(*v.rejection);
    out << j.dump() << "\n";
  }
  return parsed.diagnostics.empty() ? kExitOk : kExitData;
}

int do_validate(const std::string& dir, const std::string& lexicon_path, std::ostream& out, std::ostream& err) {
  auto failures = validate_output(dir, resolve_lexicon(lexicon_path));
  for (const auto& f : failures) err << dir << ": " << f << "\n";
  if (!failures.empty()) return kExitData;
  out << dir << ": ok\n";
  return kExitOk;
}

std::string label_string(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

int do_score(const std::string& metric, const std::string& input_path, const std::string& pair_with,
             const std::string& classes_spec, std::istream& in, std::ostream& out) {
  std::string text;
  if (input_path == "-") {
    text = read_all(in);
  } else {
    std::ifstream f(input_path);
    if (!f) throw DataError("cannot open " + input_path);
    text = read_all(f);
  }
  std::vector<ordered_json> rows;
  std::istringstream lines(text);
  int n = 0;
  for (std::string line; std::getline(lines, line);) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(ordered_json::parse(line));
    } catch (const std::exception&) {
      throw DataError("line " + std::to_string(n) + ": not valid JSON");
    }
  }

  ordered_json result;
  result["metric"] = metric;
  result["n"] = rows.size();
  try {
    if (metric == "group_consistency") {
      std::vector<PredictionGroup> groups;
      std::map<std::string, size_t> slot;
      for (const auto& r : rows) {
        std::string id = label_string(r.at("group_id"));
        auto variant = parse_variant(r.at("variant").get<std::string>());
        if (!variant) throw DataError("unknown variant " + r.at("variant").dump());
        auto [it, fresh] = slot.emplace(id, groups.size());
        if (fresh) groups.push_back({id, {}});
        groups[it->second].items.push_back({*variant, r.at("correct").get<bool>()});
      }
      std::optional<Variant> pw;
      if (!pair_with.empty()) {
        pw = parse_variant(pair_with);
        if (!pw) throw UsageError("unknown variant '" + pair_with + "'");
        result["pair_with"] = pair_with;
      }
      result["groups"] = groups.size();
      result["value"] = group_consistency(groups, pw);
    } else if (metric == "mean_top1_error" || metric == "precision_at_1") {
      std::vector<Ranking> rankings;
      for (const auto& r : rows) rankings.push_back({label_string(r.at("gold")), label_string(r.at("predicted"))});
      result["value"] = metric == "precision_at_1" ? precision_at_1(rankings) : mean_top1_error(rankings);
    } else if (metric == "macro_f1") {
      std::vector<LabelPair> labels;
      std::set<std::string> seen;
      for (const auto& r : rows) {
        labels.push_back({label_string(r.at("gold")), label_string(r.at("predicted"))});
        seen.insert(labels.back().gold);
        seen.insert(labels.back().predicted);
      }
      std::vector<std::string> classes;
      if (!classes_spec.empty()) {
        std::istringstream cs(classes_spec);
        for (std::string c; std::getline(cs, c, ',');) classes.push_back(c);
      } else {
        classes.assign(seen.begin(), seen.end());
      }
      result["classes"] = classes;
      result["value"] = macro_f1(labels, classes);
    } else {
      throw UsageError("unknown metric '" + metric + "'");
    }
  } catch (const MetricError& e) {
    throw DataError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed record: ") + e.what());
  }
  out << result.dump() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negation polarity reversal and NSPP/NSP corpus builder", "negata"};
  app.require_subcommand(1);

  BuildArgs b;
  auto* build = app.add_subcommand("build", "Build NSPP/NSP datasets from CoNLL-U input");
  build->add_option("--input", b.inputs, "CoNLL-U files")->required()->check(CLI::ExistingFile);
  build->add_option("--out", b.out, "Output directory")->required();
  build->add_option("--tasks", b.tasks, "Comma-separated tasks: nspp,nsp");
  build->add_option("--subset", b.subset, "both | add-only | remove-only");
  build->add_option("--val-pairs", b.val_pairs, "Validation pairs (even)");
  build->add_option("--seed", b.seed, "Random seed");
  build->add_option("--lexicon", b.lexicon, "Extended cue lexicon file");
  build->add_flag("--no-cue-matching", b.no_cue_matching, "Add only 'not' to affirmatives");
  build->add_option("--jobs", b.jobs, "Worker threads")->check(CLI::PositiveNumber);
  build->add_option("--config", b.config, "key=value config file");
  build->add_flag("--tsv", b.tsv, "Also write TSV files");

  std::string cue_name = "not";
  std::string lexicon_path;
  auto* reverse = app.add_subcommand("reverse", "Reverse the polarity of one CoNLL-U sentence on stdin");
  reverse->add_option("--cue", cue_name, "Cue to add: not | nt | never");
  reverse->add_option("--lexicon", lexicon_path, "Extended cue lexicon file");

  auto* detect = app.add_subcommand("detect", "Print cues and eligibility for CoNLL-U sentences on stdin");
  detect->add_option("--lexicon", lexicon_path, "Extended cue lexicon file");

  std::string dir;
  auto* validate = app.add_subcommand("validate", "Re-check an emitted dataset directory");
  validate->add_option("dir", dir, "Dataset directory")->required();
  validate->add_option("--lexicon", lexicon_path, "Extended cue lexicon file");

  std::string metric, score_input = "-", pair_with, classes;
  auto* score = app.add_subcommand("score", "Compute an evaluation metric over JSON-lines predictions");
  score->add_option("--metric", metric, "group_consistency | mean_top1_error | precision_at_1 | macro_f1")
      ->required();
  score->add_option("--input", score_input, "JSON-lines file, - for stdin");
  score->add_option("--pair-with", pair_with, "group_consistency: paraphrase | scope | affirmation");
  score->add_option("--classes", classes, "macro_f1: comma-separated class list");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "negata: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*build) return do_build(b, *build, out, err);
    if (*reverse) return do_reverse(cue_name, lexicon_path, in, out, err);
    if (*detect) return do_detect(lexicon_path, in, out, err);
    if (*validate) return do_validate(dir, lexicon_path, out, err);
    if (*score) return do_score(metric, score_input, pair_with, classes, in, out);
  } catch (const UsageError& e) {
    err << "negata: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "negata: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace negata
