#include "negata/cues.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "embedded_data.hpp"

namespace negata {

namespace {

std::optional<CueKind> reversible_kind(const Token& tok) {
  std::string form = normalize_form(tok.form);
  std::string lemma = normalize_form(tok.lemma);
  if (form == "never" || lemma == "never") return CueKind::Never;
  if (form == "n't" || (form == "nt" && lemma == "not")) return CueKind::Nt;
  if (form == "not" || lemma == "not") return CueKind::Not;
  return std::nullopt;
}

std::optional<CueKind> reversible_kind(std::string_view form) {
  if (form == "never") return CueKind::Never;
  if (form == "n't") return CueKind::Nt;
  if (form == "not") return CueKind::Not;
  return std::nullopt;
}

// Shared matcher over a sequence of normalized forms. `reversible_at`
// answers whether position i holds a reversible cue.
template <typename ReversibleAt>
std::vector<NegationCue> match_cues(const std::vector<std::string>& forms,
                                    const CueLexicon& lexicon, ReversibleAt reversible_at) {
  std::vector<NegationCue> cues;
  const size_t n = forms.size();
  for (size_t i = 0; i < n;) {
    size_t best_len = 0;
    const std::vector<std::string>* best = nullptr;
    for (const auto& entry : lexicon.extended()) {
      if (entry.size() <= best_len || i + entry.size() > n) continue;
      if (std::equal(entry.begin(), entry.end(), forms.begin() + i)) {
        best_len = entry.size();
        best = &entry;
      }
    }
    std::optional<CueKind> rev = reversible_at(i);
    if (rev && best_len <= 1) {
      NegationCue cue;
      cue.kind = *rev;
      cue.text = forms[i];
      cue.token_index = static_cast<int>(i) + 1;
      cues.push_back(cue);
      ++i;
      continue;
    }
    if (best) {
      NegationCue cue;
      cue.kind = CueKind::Lexical;
      for (const auto& w : *best) cue.text += (cue.text.empty() ? "" : " ") + w;
      cue.token_index = static_cast<int>(i) + 1;
      cue.length = static_cast<int>(best_len);
      cues.push_back(cue);
      i += best_len;
      continue;
    }
    ++i;
  }
  return cues;
}

bool is_modal_or_verbal(const Token& t) { return t.upos == "VERB" || t.upos == "AUX"; }

}  // namespace

std::string_view to_string(Cue cue) {
  switch (cue) {
    case Cue::Not: return "not";
    case Cue::Nt: return "n't";
    case Cue::Never: return "never";
  }
  return "?";
}

std::optional<Cue> parse_cue(std::string_view name) {
  std::string n = normalize_form(name);
  if (n == "not") return Cue::Not;
  if (n == "nt" || n == "n't") return Cue::Nt;
  if (n == "never") return Cue::Never;
  return std::nullopt;
}

std::optional<Cue> NegationCue::cue() const {
  switch (kind) {
    case CueKind::Not: return Cue::Not;
    case CueKind::Nt: return Cue::Nt;
    case CueKind::Never: return Cue::Never;
    case CueKind::Lexical: break;
  }
  return std::nullopt;
}

CueLexicon CueLexicon::defaults() { return parse(data::kDefaultLexicon); }

CueLexicon CueLexicon::parse(std::string_view text) {
  CueLexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    lex.add(line);
  }
  return lex;
}

CueLexicon CueLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void CueLexicon::add(std::string_view cue) {
  std::vector<std::string> words;
  std::istringstream in{normalize_form(cue)};
  for (std::string w; in >> w;) words.push_back(w);
  if (words.empty()) return;
  if (std::find(extended_.begin(), extended_.end(), words) != extended_.end()) return;
  longest_ = std::max(longest_, words.size());
  extended_.push_back(std::move(words));
}

std::string normalize_form(std::string_view form) {
  std::string out;
  out.reserve(form.size());
  for (size_t i = 0; i < form.size(); ++i) {
    // U+2019 RIGHT SINGLE QUOTATION MARK and U+2018 fold to '.
    if (i + 2 < form.size() && static_cast<unsigned char>(form[i]) == 0xE2 &&
        static_cast<unsigned char>(form[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(form[i + 2]) == 0x99 ||
         static_cast<unsigned char>(form[i + 2]) == 0x98)) {
      out += '\'';
      i += 2;
      continue;
    }
    char c = form[i];
    out += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

std::vector<NegationCue> detect_cues(const ParsedSentence& sentence, const CueLexicon& lexicon) {
  std::vector<std::string> forms;
  forms.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) forms.push_back(normalize_form(t.form));
  auto cues = match_cues(forms, lexicon, [&](size_t i) { return reversible_kind(sentence.tokens[i]); });
  for (auto& cue : cues) {
    if (!cue.reversible()) continue;
    int head = sentence.at(cue.token_index).head;
    if (head != 0) cue.attached_to = head;
  }
  return cues;
}

std::vector<std::string> surface_tokens(std::string_view text) {
  static const std::string_view kLeading = "([{\"'`";
  static const std::string_view kTrailing = ".,;:!?)]}\"'`";
  std::vector<std::string> out;
  std::istringstream in{normalize_form(text)};
  for (std::string chunk; in >> chunk;) {
    std::vector<std::string> tail;
    while (!chunk.empty() && kLeading.find(chunk.front()) != std::string_view::npos) {
      out.emplace_back(1, chunk.front());
      chunk.erase(0, 1);
    }
    while (!chunk.empty() && kTrailing.find(chunk.back()) != std::string_view::npos) {
      // Keep the apostrophe of n't attached.
      if (chunk.back() == '\'' && chunk.size() >= 2) break;
      tail.emplace_back(1, chunk.back());
      chunk.pop_back();
    }
    if (chunk.size() > 3 && chunk.ends_with("n't")) {
      out.push_back(chunk.substr(0, chunk.size() - 3));
      out.emplace_back("n't");
    } else if (!chunk.empty()) {
      out.push_back(chunk);
    }
    out.insert(out.end(), tail.rbegin(), tail.rend());
  }
  return out;
}

std::vector<NegationCue> detect_cues_in_text(std::string_view text, const CueLexicon& lexicon) {
  auto forms = surface_tokens(text);
  return match_cues(forms, lexicon, [&](size_t i) { return reversible_kind(forms[i]); });
}

std::optional<int> main_verb(const ParsedSentence& sentence) {
  int root = sentence.root();
  if (root == 0) return std::nullopt;
  if (is_modal_or_verbal(sentence.at(root))) return root;
  auto deps = sentence.children(root);
  for (int d : deps) {
    if (sentence.at(d).deprel == "cop" && is_modal_or_verbal(sentence.at(d))) return d;
  }
  for (int d : deps) {
    if (sentence.at(d).is_aux_relation() && is_modal_or_verbal(sentence.at(d))) return d;
  }
  for (int d : deps) {
    if (is_modal_or_verbal(sentence.at(d))) return d;
  }
  return std::nullopt;
}

int predicate_head(const ParsedSentence& sentence, int main) {
  const Token& t = sentence.at(main);
  if (t.deprel == "cop" || t.is_aux_relation()) return t.head;
  return main;
}

std::vector<int> aux_chain(const ParsedSentence& sentence, int main) {
  std::vector<int> chain;
  for (int d : sentence.children(main)) {
    if (sentence.at(d).is_aux_relation()) chain.push_back(d);
  }
  int pred = predicate_head(sentence, main);
  if (pred != main) {
    for (int d : sentence.children(pred)) {
      if (d != main && sentence.at(d).is_aux_relation() && d < main) chain.push_back(d);
    }
  }
  std::sort(chain.begin(), chain.end());
  return chain;
}

bool is_question(const ParsedSentence& sentence) {
  return !sentence.tokens.empty() && sentence.tokens.back().form == "?";
}

std::string_view to_string(Rejection reason) {
  switch (reason) {
    case Rejection::NoCue: return "NoCue";
    case Rejection::MultipleCues: return "MultipleCues";
    case Rejection::CueNotOnMainVerb: return "CueNotOnMainVerb";
    case Rejection::IsQuestion: return "IsQuestion";
    case Rejection::UnsupportedCue: return "UnsupportedCue";
    case Rejection::NoMainVerb: return "NoMainVerb";
    case Rejection::NotAffirmative: return "NotAffirmative";
    case Rejection::UnsupportedConstruction: return "UnsupportedConstruction";
  }
  return "?";
}

EligibilityVerdict eligibility(const ParsedSentence& sentence, const CueLexicon& lexicon) {
  EligibilityVerdict verdict;
  verdict.main = main_verb(sentence);
  if (!verdict.main) {
    verdict.rejection = Rejection::NoMainVerb;
    return verdict;
  }
  auto cues = detect_cues(sentence, lexicon);
  if (cues.empty()) {
    verdict.rejection = Rejection::NoCue;
    return verdict;
  }
  if (std::none_of(cues.begin(), cues.end(), [](const NegationCue& c) { return c.reversible(); })) {
    verdict.rejection = Rejection::UnsupportedCue;
    return verdict;
  }
  if (cues.size() > 1) {
    verdict.rejection = Rejection::MultipleCues;
    return verdict;
  }
  const NegationCue& cue = cues.front();
  int main = *verdict.main;
  int pred = predicate_head(sentence, main);
  auto chain = aux_chain(sentence, main);
  bool on_chain = cue.attached_to &&
                  (*cue.attached_to == main || *cue.attached_to == pred ||
                   std::find(chain.begin(), chain.end(), *cue.attached_to) != chain.end());
  if (!on_chain) {
    verdict.rejection = Rejection::CueNotOnMainVerb;
    return verdict;
  }
  if (is_question(sentence)) {
    verdict.rejection = Rejection::IsQuestion;
    return verdict;
  }
  verdict.cue = cue;
  return verdict;
}

}  // namespace negata
