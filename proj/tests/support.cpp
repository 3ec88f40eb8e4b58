#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "negata/morphology.hpp"
#include "negata/reversal.hpp"

namespace negata::test {

namespace fs = std::filesystem;

fs::path fixture(const std::string& name) { return fs::path(NEGATA_FIXTURE_DIR) / name; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<ParsedSentence> load_fixture(const std::string& name) {
  auto parsed = parse_conllu(read_file(fixture(name)), name);
  if (!parsed.diagnostics.empty()) {
    throw std::runtime_error(name + ": " + format_diagnostic(parsed.diagnostics.front()));
  }
  return parsed.sentences;
}

ParsedSentence parse_one(const std::string& conllu) {
  auto parsed = parse_conllu(conllu);
  if (!parsed.diagnostics.empty()) throw std::runtime_error(format_diagnostic(parsed.diagnostics.front()));
  if (parsed.sentences.size() != 1) throw std::runtime_error("expected one sentence");
  return parsed.sentences.front();
}

const std::vector<std::array<std::string, 4>>& published_aux_table() {
  static const std::vector<std::array<std::string, 4>> rows = {
      {"be", "not be", "-", "never be"},
      {"being", "not being", "-", "never being"},
      {"was", "was not", "wasn't", "was never"},
      {"is", "is not", "isn't", "is never"},
      {"were", "were not", "weren't", "were never"},
      {"have", "have not", "haven't", "have never"},
      {"having", "not having", "-", "never having"},
      {"had", "had not", "hadn't", "had never"},
      {"'ve", "'ve not", "-", "'ve never"},
      {"do", "do not", "don't", "do never"},
      {"does", "does not", "doesn't", "does never"},
      {"did", "did not", "didn't", "did never"},
      {"can", "can not", "can't", "can never"},
      {"could", "could not", "couldn't", "could never"},
      {"will", "will not", "won't", "will never"},
      {"'ll", "'ll not", "-", "'ll never"},
      {"would", "would not", "wouldn't", "would never"},
      {"shall", "shall not", "shan't", "shall never"},
      {"should", "should not", "shouldn't", "should never"},
      {"must", "must not", "-", "must never"},
      {"may", "may not", "-", "may never"},
      {"might", "might not", "-", "might never"},
  };
  return rows;
}

std::vector<GoldenCase> load_golden() {
  std::vector<GoldenCase> cases;
  for (auto& s : load_fixture("golden.conllu")) {
    GoldenCase c;
    c.id = s.meta("sent_id").value_or("?");
    const std::string op = s.meta("golden_op").value_or("");
    c.expect = s.meta("golden_expect").value_or("");
    if (op.rfind("add ", 0) == 0) {
      c.add = parse_cue(op.substr(4));
      if (!c.add) throw std::runtime_error(c.id + ": bad cue in golden_op");
    } else if (op != "remove") {
      throw std::runtime_error(c.id + ": bad golden_op '" + op + "'");
    }
    c.sentence = std::move(s);
    cases.push_back(std::move(c));
  }
  return cases;
}

std::string run_golden(const GoldenCase& c) {
  const ReversalResult r = c.add ? add_negation(c.sentence, *c.add) : remove_negation(c.sentence);
  if (!r) return "reject " + std::string(to_string(r.error().reason));
  return r.outcome().text;
}

namespace {

std::string lower_form(const Token& t) { return normalize_form(t.form); }

// Sentences whose removal output cannot equal the input: removal also
// rewrites in-scope NPIs, emphatic do, and a coordinating "but".
bool in_round_trip_a_domain(const ParsedSentence& s, int main) {
  for (const auto& t : s.tokens) {
    const std::string f = lower_form(t);
    if (f == "yet" || f == "any" || f == "but") return false;
    if (f == "all" && t.index > 1 && lower_form(s.at(t.index - 1)) == "at") return false;
  }
  for (int a : aux_chain(s, main)) {
    if (ascii_lower(s.at(a).lemma) == "do") return false;
  }
  return true;
}

long count_edits(const std::vector<Edit>& edits, EditOp op, std::optional<EditKind> kind = std::nullopt) {
  return std::count_if(edits.begin(), edits.end(), [&](const Edit& e) {
    return e.op == op && (!kind || e.kind == *kind);
  });
}

std::vector<std::string> forms(const ParsedSentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.form + (t.space_after ? " " : ""));
  return out;
}

std::optional<std::string> attachment_lemma(const ParsedSentence& s, const NegationCue& cue) {
  if (!cue.attached_to || *cue.attached_to < 1 || *cue.attached_to > s.size()) return std::nullopt;
  return ascii_lower(s.at(*cue.attached_to).lemma);
}

class Checker {
 public:
  Checker(const CueLexicon& lexicon, PropertyReport& report) : lexicon_(lexicon), report_(report) {}

  void sentence(const ParsedSentence& s) {
    id_ = s.doc_id + "/" + std::to_string(s.section_index) + "/" + std::to_string(s.sent_index) +
          " \"" + detokenize(s) + "\"";
    const auto cues = detect_cues(s, lexicon_);
    const auto main = main_verb(s);
    const auto verdict = eligibility(s, lexicon_);
    // Questions are outside both pools.
    if (cues.empty() && main && !is_question(s)) affirmative(s, *main, verdict);
    if (verdict.eligible()) negated(s, *verdict.cue);
  }

 private:
  void fail(const std::string& what) { report_.violations.push_back(id_ + ": " + what); }

  void common(const ParsedSentence& in, const ReversalOutcome& out, const std::string& tag) {
    if (detokenize(out.output) != out.text) fail(tag + ": text differs from detokenized output");
    try {
      if (replay(surface(in), out.edits) != surface(out.output)) fail(tag + ": edit replay differs");
    } catch (const std::logic_error& e) {
      fail(tag + ": edit replay throws: " + e.what());
    }
  }

  void affirmative(const ParsedSentence& s, int main, const EligibilityVerdict& verdict) {
    ++report_.affirmatives;
    if (verdict.rejection != Rejection::NoCue) fail("affirmative is not rejected with NoCue");
    for (Cue cue : {Cue::Not, Cue::Nt, Cue::Never}) {
      const std::string tag = "add " + std::string(to_string(cue));
      const auto r = add_negation(s, cue, lexicon_);
      if (!r) {
        fail(tag + ": rejected " + std::string(to_string(r.error().reason)));
        continue;
      }
      const auto& out = r.outcome();
      common(s, out, tag);
      const auto after = detect_cues(out.output, lexicon_);
      if (after.size() != 1 || !after.front().reversible() || after.front().cue() != out.cue_used) {
        fail(tag + ": output does not carry exactly the one added cue: " + out.text);
      }
      if (!eligibility(out.output, lexicon_).eligible()) fail(tag + ": output is not eligible for removal");
      const long expected = count_edits(out.edits, EditOp::Insert, EditKind::InsertAux) > 0 ? 2 : 1;
      if (out.output.size() - s.size() != expected) {
        fail(tag + ": token delta " + std::to_string(out.output.size() - s.size()) + ", expected " +
             std::to_string(expected));
      }
      if (cue == Cue::Not && in_round_trip_a_domain(s, main)) {
        ++report_.round_trip_a;
        const auto back = remove_negation(out.output, lexicon_);
        if (!back) {
          fail("round trip A: removal rejected " + std::string(to_string(back.error().reason)));
        } else if (forms(back.outcome().output) != forms(s)) {
          fail("round trip A: got \"" + back.outcome().text + "\"");
        }
      }
    }
  }

  void negated(const ParsedSentence& s, const NegationCue& cue) {
    ++report_.eligible;
    const auto r = remove_negation(s, lexicon_);
    if (!r) {
      fail("remove: rejected " + std::string(to_string(r.error().reason)));
      return;
    }
    const auto& out = r.outcome();
    common(s, out, "remove");
    if (!detect_cues(out.output, lexicon_).empty()) fail("remove: output still has a cue: " + out.text);
    if (out.cue_used != cue.cue()) fail("remove: removed cue differs from the detected one");
    const long expected = -1 - count_edits(out.edits, EditOp::Delete, EditKind::DeleteAux) -
                          count_edits(out.edits, EditOp::Delete, EditKind::SwapNPI);
    if (count_edits(out.edits, EditOp::Insert) != 0) fail("remove: inserts tokens");
    if (out.output.size() - s.size() != expected) {
      fail("remove: token delta " + std::to_string(out.output.size() - s.size()) + ", expected " +
           std::to_string(expected));
    }
    // Round trip B: adding the same cue back restores its kind and site.
    const auto again = add_negation(out.output, *cue.cue(), lexicon_);
    if (!again) {
      fail("round trip B: add rejected " + std::string(to_string(again.error().reason)));
      return;
    }
    const auto cues = detect_cues(again.outcome().output, lexicon_);
    if (cues.size() != 1 || cues.front().cue() != cue.cue()) {
      fail("round trip B: cue kind differs: " + again.outcome().text);
    } else if (attachment_lemma(again.outcome().output, cues.front()) != attachment_lemma(s, cue)) {
      fail("round trip B: cue attaches elsewhere: " + again.outcome().text);
    }
  }

  const CueLexicon& lexicon_;
  PropertyReport& report_;
  std::string id_;
};

}  // namespace

PropertyReport check_properties(const std::vector<ParsedSentence>& sentences, const CueLexicon& lexicon) {
  PropertyReport report;
  Checker checker(lexicon, report);
  for (const auto& s : sentences) checker.sentence(s);
  for (const auto& row : AuxNegationTable::core().rows()) {
    if (!row.nt_form) continue;
    ++report.contractible;
    try {
      const std::string expanded = expand_contraction(*row.nt_form);
      if (expanded != row.aux) {
        report.violations.push_back(*row.nt_form + " expands to " + expanded + ", not " + row.aux);
      } else if (negate_aux(expanded, Cue::Nt) != row.nt_form) {
        report.violations.push_back(row.aux + " does not contract back to " + *row.nt_form);
      }
    } catch (const MorphologyError& e) {
      report.violations.push_back(*row.nt_form + ": " + e.what());
    }
  }
  return report;
}

namespace reference {

double group_consistency(const std::vector<PredictionGroup>& groups, std::optional<Variant> pair_with) {
  double hits = 0;
  for (const auto& g : groups) {
    std::map<Variant, bool> by_variant;
    size_t wrong = 0;
    for (const auto& item : g.items) {
      by_variant[item.variant] = item.correct;
      wrong += !item.correct;
    }
    if (pair_with) {
      hits += by_variant.at(Variant::Original) && by_variant.at(*pair_with) ? 1 : 0;
    } else {
      hits += wrong == 0 ? 1 : 0;
    }
  }
  return hits / static_cast<double>(groups.size());
}

double match_rate(const std::vector<Ranking>& rankings) {
  std::vector<bool> hit;
  for (const auto& r : rankings) hit.push_back(r.gold.compare(r.predicted) == 0);
  return static_cast<double>(std::count(hit.begin(), hit.end(), true)) / static_cast<double>(hit.size());
}

double macro_f1(const std::vector<LabelPair>& labels, const std::vector<std::string>& classes) {
  double total = 0;
  for (const auto& c : classes) {
    std::set<size_t> gold, pred;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].gold == c) gold.insert(i);
      if (labels[i].predicted == c) pred.insert(i);
    }
    std::vector<size_t> both;
    std::set_intersection(gold.begin(), gold.end(), pred.begin(), pred.end(), std::back_inserter(both));
    if (both.empty()) continue;
    const double precision = static_cast<double>(both.size()) / static_cast<double>(pred.size());
    const double recall = static_cast<double>(both.size()) / static_cast<double>(gold.size());
    total += 2 * precision * recall / (precision + recall);
  }
  return total / static_cast<double>(classes.size());
}

}  // namespace reference

namespace {

void compare_json(const nlohmann::json& got, const nlohmann::json& want, const std::string& path,
                  std::vector<std::string>& out) {
  if (want.is_object() && got.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key())) {
        out.push_back(path + "." + it.key() + ": missing");
      } else {
        compare_json(got[it.key()], it.value(), path + "." + it.key(), out);
      }
    }
    for (auto it = got.begin(); it != got.end(); ++it) {
      if (!want.contains(it.key())) out.push_back(path + "." + it.key() + ": unexpected");
    }
    return;
  }
  if (want.is_array() && got.is_array() && want.size() == got.size()) {
    for (size_t i = 0; i < want.size(); ++i) {
      compare_json(got[i], want[i], path + "[" + std::to_string(i) + "]", out);
    }
    return;
  }
  if (got != want) out.push_back(path + ": got " + got.dump() + ", expected " + want.dump());
}

}  // namespace

std::vector<std::string> compare_with_oracle(const fs::path& manifest, const fs::path& expected) {
  const auto got = nlohmann::json::parse(read_file(manifest));
  const auto want = nlohmann::json::parse(read_file(expected));
  std::vector<std::string> out;
  for (auto it = want.begin(); it != want.end(); ++it) {
    if (!got.contains(it.key())) {
      out.push_back(it.key() + ": missing");
    } else {
      compare_json(got[it.key()], it.value(), it.key(), out);
    }
  }
  return out;
}

std::vector<std::string> diff_trees(const fs::path& a, const fs::path& b) {
  auto list = [](const fs::path& root) {
    std::map<std::string, fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = e.path();
    }
    return files;
  };
  const auto fa = list(a), fb = list(b);
  std::vector<std::string> out;
  for (const auto& [name, path] : fa) {
    auto it = fb.find(name);
    if (it == fb.end()) {
      out.push_back(name + ": only in " + a.string());
    } else if (read_file(path) != read_file(it->second)) {
      out.push_back(name + ": contents differ");
    }
  }
  for (const auto& [name, path] : fb) {
    if (!fa.count(name)) out.push_back(name + ": only in " + b.string());
  }
  return out;
}

namespace {

struct Row {
  std::string form, lemma, upos, xpos, feats;
  int head;
  std::string deprel;
  bool space = true;
};

void emit(std::ostringstream& out, const std::vector<Row>& rows) {
  int id = 1;
  for (const auto& r : rows) {
    out << id++ << '\t' << r.form << '\t' << r.lemma << '\t' << r.upos << '\t' << r.xpos << '\t'
        << (r.feats.empty() ? "_" : r.feats) << '\t' << r.head << '\t' << r.deprel << "\t_\t"
        << (r.space ? "_" : "SpaceAfter=No") << '\n';
  }
  out << '\n';
}

}  // namespace

std::string synthetic_corpus(long sections) {
  std::ostringstream out;
  const std::string past = "Mood=Ind|Tense=Past|VerbForm=Fin";
  for (long i = 0; i < sections; ++i) {
    if (i % 50 == 0) out << "# newdoc id = syn-" << i / 50 << '\n';
    out << "# newpar\n";
    const std::string n = std::to_string(i);
    emit(out, {{"Season", "season", "NOUN", "NN", "Number=Sing", 3, "nsubj"},
               {n, n, "NUM", "CD", "NumType=Card", 1, "nummod"},
               {"began", "begin", "VERB", "VBD", past, 0, "root", false},
               {".", ".", "PUNCT", ".", "", 3, "punct"}});
    switch (i % 3) {
      case 0:
      case 1:
        emit(out, {{"The", "the", "DET", "DT", "Definite=Def|PronType=Art", 2, "det"},
                   {"team", "team", "NOUN", "NN", "Number=Sing", 5, "nsubj"},
                   {"did", "do", "AUX", "VBD", past, 5, "aux", i % 3 == 0},
                   {i % 3 == 0 ? "not" : "n't", "not", "PART", "RB", "Polarity=Neg", 5, "advmod"},
                   {"win", "win", "VERB", "VB", "VerbForm=Inf", 0, "root"},
                   {"game", "game", "NOUN", "NN", "Number=Sing", 5, "obj"},
                   {n, n, "NUM", "CD", "NumType=Card", 6, "nummod", false},
                   {".", ".", "PUNCT", ".", "", 5, "punct"}});
        break;
      default:
        emit(out, {{"The", "the", "DET", "DT", "Definite=Def|PronType=Art", 2, "det"},
                   {"team", "team", "NOUN", "NN", "Number=Sing", 4, "nsubj"},
                   {"never", "never", "ADV", "RB", "", 4, "advmod"},
                   {"won", "win", "VERB", "VBD", past, 0, "root"},
                   {"game", "game", "NOUN", "NN", "Number=Sing", 4, "obj"},
                   {n, n, "NUM", "CD", "NumType=Card", 5, "nummod", false},
                   {".", ".", "PUNCT", ".", "", 4, "punct"}});
    }
    emit(out, {{"The", "the", "DET", "DT", "Definite=Def|PronType=Art", 2, "det"},
               {"club", "club", "NOUN", "NN", "Number=Sing", 3, "nsubj"},
               {"lost", "lose", "VERB", "VBD", past, 0, "root"},
               {"match", "match", "NOUN", "NN", "Number=Sing", 3, "obj"},
               {n, n, "NUM", "CD", "NumType=Card", 4, "nummod", false},
               {".", ".", "PUNCT", ".", "", 3, "punct"}});
  }
  return out.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("negata-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace negata::test
