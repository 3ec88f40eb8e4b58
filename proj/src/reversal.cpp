#include "negata/reversal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "negata/morphology.hpp"
#include "negata/rng.hpp"

namespace negata {

namespace {

// Bare main verbs that take not/n't directly after them.
constexpr std::array<std::string_view, 14> kDirectCueVerbs = {
    "were", "was", "is", "are", "do", "will", "would",
    "may", "might", "shall", "should", "can", "could", "must"};

bool starts_upper(std::string_view s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string decapitalize(std::string s) {
  if (!s.empty() && s[0] >= 'A' && s[0] <= 'Z') s[0] = static_cast<char>(s[0] - 'A' + 'a');
  return s;
}

// Sentence-initial words that keep their capital when pushed inward.
bool keeps_capital(const Token& t) {
  if (t.upos == "PROPN" || t.form == "I") return true;
  if (t.form.size() > 1 && std::all_of(t.form.begin(), t.form.end(), [](char c) {
        return !(c >= 'a' && c <= 'z');
      }))
    return true;
  return false;
}

bool is_have_form(std::string_view form) {
  std::string f = normalize_form(form);
  return f == "have" || f == "has" || f == "had" || f == "having" || f == "'ve";
}

bool alphabetic(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

// Working copy of a sentence that records every change as an Edit. Tokens
// keep stable ids (original index, or a fresh id for inserted tokens) and
// heads refer to ids until finish() renumbers them.
class Editor {
 public:
  explicit Editor(const ParsedSentence& s) : src_(s), next_id_(s.size() + 1) {
    for (const auto& t : s.tokens) nodes_.push_back({t, t.index});
  }

  int pos(int id) const {
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].id == id) return static_cast<int>(i);
    }
    return -1;
  }
  bool alive(int id) const { return pos(id) >= 0; }
  const Token& tok(int id) const { return nodes_.at(pos(id)).tok; }
  Token& tok_mut(int id) { return nodes_.at(pos(id)).tok; }

  int insert(int position, Token t, EditKind kind, bool space_after,
             std::optional<bool> left = std::nullopt) {
    bool displaces_capital = position == 0 && !nodes_.empty() && starts_upper(nodes_[0].tok.form);
    if (displaces_capital) t.form = capitalize(t.form);
    t.space_after = space_after;
    edits_.push_back({EditOp::Insert, kind, position, "", t.form, space_after, left});
    int id = next_id_++;
    nodes_.insert(nodes_.begin() + position, Node{std::move(t), id});
    if (left && position > 0) nodes_[position - 1].tok.space_after = *left;
    if (displaces_capital && !keeps_capital(nodes_[1].tok)) {
      replace(nodes_[1].id, decapitalize(nodes_[1].tok.form), EditKind::Recase);
    }
    return id;
  }

  void remove(int id, EditKind kind, std::optional<bool> left = std::nullopt) {
    int p = pos(id);
    Token old = nodes_.at(p).tok;
    edits_.push_back({EditOp::Delete, kind, p, old.form, "", old.space_after, left});
    for (auto& n : nodes_) {
      if (n.tok.head == id) n.tok.head = old.head;
    }
    nodes_.erase(nodes_.begin() + p);
    if (left && p > 0) nodes_[p - 1].tok.space_after = *left;
    touched_.push_back(id);
    if (p == 0 && starts_upper(old.form) && !nodes_.empty() && !starts_upper(nodes_[0].tok.form)) {
      replace(nodes_[0].id, capitalize(nodes_[0].tok.form), EditKind::Recase);
    }
  }

  void replace(int id, const std::string& form, EditKind kind) {
    int p = pos(id);
    Token& t = nodes_.at(p).tok;
    if (t.form == form) return;
    edits_.push_back({EditOp::Replace, kind, p, t.form, form, t.space_after, std::nullopt});
    t.form = form;
    touched_.push_back(id);
  }

  ParsedSentence finish() const {
    ParsedSentence out;
    out.doc_id = src_.doc_id;
    out.section_index = src_.section_index;
    out.sent_index = src_.sent_index;
    out.metadata = src_.metadata;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      Token t = nodes_[i].tok;
      t.index = static_cast<int>(i) + 1;
      t.head = t.head == 0 ? 0 : pos(t.head) + 1;
      out.tokens.push_back(std::move(t));
    }
    for (const auto& m : src_.multiword) {
      int start = pos(m.first);
      bool keep = start >= 0;
      for (int id = m.first; keep && id <= m.last; ++id) {
        keep = pos(id) == start + (id - m.first) &&
               std::find(touched_.begin(), touched_.end(), id) == touched_.end();
      }
      if (keep) out.multiword.push_back({start + 1, start + 1 + (m.last - m.first), m.form});
    }
    out.raw_text = detokenize(out);
    return out;
  }

  std::vector<Edit> edits() const { return edits_; }

 private:
  struct Node {
    Token tok;
    int id;
  };
  const ParsedSentence& src_;
  std::vector<Node> nodes_;
  std::vector<Edit> edits_;
  std::vector<int> touched_;
  int next_id_;
};

Token cue_token(Cue cue, int head) {
  Token t;
  t.head = head;
  t.deprel = "advmod";
  t.xpos = "RB";
  switch (cue) {
    case Cue::Not:
      t.form = "not";
      t.lemma = "not";
      t.upos = "PART";
      break;
    case Cue::Nt:
      t.form = "n't";
      t.lemma = "not";
      t.upos = "PART";
      break;
    case Cue::Never:
      t.form = "never";
      t.lemma = "never";
      t.upos = "ADV";
      break;
  }
  return t;
}

struct Attached {
  Cue used;
  int cue_id;
};

ReversalError unsupported(std::string detail) {
  return ReversalError{Rejection::UnsupportedConstruction, std::move(detail)};
}

// Negates an auxiliary (or an auxiliary-like main verb) per the table.
std::variant<Attached, ReversalError> attach_to_auxiliary(Editor& ed, int aux_id, Cue cue, int head) {
  const Token aux = ed.tok(aux_id);
  const AuxNegationRow* row = AuxNegationTable::core().find(aux.form);
  if (!row) row = AuxNegationTable::supplementary().find(aux.form);
  if (!row) return unsupported("no negation rule for auxiliary '" + aux.form + "'");
  Cue used = cue;
  if (cue == Cue::Nt && !row->nt_form) used = Cue::Not;

  if (used == Cue::Nt) {
    const std::string& fused = *row->nt_form;
    std::string host = fused.substr(0, fused.size() - 3);
    if (host != normalize_form(aux.form)) ed.replace(aux_id, match_case(host, aux.form), EditKind::ReplaceVerbForm);
    int id = ed.insert(ed.pos(aux_id) + 1, cue_token(Cue::Nt, head), EditKind::InsertCue,
                       ed.tok(aux_id).space_after, false);
    return Attached{used, id};
  }
  const std::string& cell = used == Cue::Not ? row->not_form : row->never_form;
  bool cue_first = cell.starts_with(std::string(to_string(used)) + " ");
  int id;
  if (cue_first) {
    id = ed.insert(ed.pos(aux_id), cue_token(used, head), EditKind::InsertCue, true);
  } else {
    id = ed.insert(ed.pos(aux_id) + 1, cue_token(used, head), EditKind::InsertCue,
                   ed.tok(aux_id).space_after, true);
  }
  return Attached{used, id};
}

bool takes_cue_directly(const Token& verb) {
  std::string form = normalize_form(verb.form);
  std::string lemma = normalize_form(verb.lemma);
  if (verb.upos == "AUX" || lemma == "be") return true;
  if (lemma == "do" && verb.upos == "VERB") return false;
  return std::find(kDirectCueVerbs.begin(), kDirectCueVerbs.end(), form) != kDirectCueVerbs.end();
}

bool is_gerund(const Token& verb) {
  std::string vf = verb.feat("VerbForm");
  return vf == "Ger" || (vf == "Part" && verb.feat("Tense") == "Pres") || verb.xpos == "VBG";
}

bool third_singular_subject(const ParsedSentence& s, int main) {
  const Token& verb = s.at(main);
  for (int d : s.children(main)) {
    const Token& subj = s.at(d);
    if (subj.deprel != "nsubj" && subj.deprel != "csubj") continue;
    std::string person = subj.feat("Person");
    std::string number = subj.feat("Number");
    if (person == "1" || person == "2") return false;
    if (person == "3") return number != "Plur";
    if (number == "Plur") return false;
    if (number == "Sing") return true;
    if (verb.feat("Person") == "3" && verb.feat("Number") == "Sing") return true;
    if (verb.xpos == "VBZ") return true;
    if (verb.xpos == "VBP") return false;
    return subj.upos == "NOUN" || subj.upos == "PROPN" || subj.deprel == "csubj";
  }
  if (verb.feat("Person") == "3" && verb.feat("Number") == "Sing") return true;
  return verb.xpos == "VBZ";
}

// did / do / does for a bare finite main verb, or nothing if the form is
// not a simple finite or base form.
std::optional<std::string> do_support_form(const ParsedSentence& s, int main) {
  const Token& v = s.at(main);
  std::string tense = v.feat("Tense");
  if (tense == "Past" || v.xpos == "VBD" || v.xpos == "VBN") return "did";
  if (tense == "Pres" || v.xpos == "VBZ" || v.xpos == "VBP")
    return third_singular_subject(s, main) ? "does" : "do";
  if (v.feat("Mood") == "Imp" || v.feat("VerbForm") == "Inf" || v.xpos == "VB") return "do";
  return std::nullopt;
}

Features do_features(std::string_view do_form) {
  if (do_form == "did") return {{"Mood", "Ind"}, {"Tense", "Past"}, {"VerbForm", "Fin"}};
  if (do_form == "does")
    return {{"Mood", "Ind"}, {"Number", "Sing"}, {"Person", "3"}, {"Tense", "Pres"}, {"VerbForm", "Fin"}};
  return {{"Mood", "Ind"}, {"Tense", "Pres"}, {"VerbForm", "Fin"}};
}

std::string do_xpos(std::string_view do_form) {
  if (do_form == "did") return "VBD";
  if (do_form == "does") return "VBZ";
  return "VBP";
}

bool in_scope(const ParsedSentence& s, const Editor& ed, int id, int pred, int after_pos) {
  return id <= s.size() && ed.alive(id) && ed.pos(id) > after_pos && s.dominates(pred, id);
}

ReversalOutcome make_outcome(const Editor& ed, Direction direction, Cue used, std::optional<Cue> requested) {
  ReversalOutcome out;
  out.output = ed.finish();
  out.text = *out.output.raw_text;
  out.direction = direction;
  out.cue_used = used;
  out.requested = requested;
  out.edits = ed.edits();
  return out;
}

bool is_but_coordinator(const ParsedSentence& s, const Token& t, int pred) {
  if (normalize_form(t.form) != "but" || t.deprel != "cc") return false;
  if (t.head == pred) {
    for (int d : s.children(pred)) {
      if (s.at(d).deprel == "conj" && d > t.index) return true;
    }
    return false;
  }
  return t.head != 0 && s.at(t.head).deprel == "conj" && s.at(t.head).head == pred;
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::Added ? "Added" : "Removed"; }

std::string_view to_string(EditKind k) {
  switch (k) {
    case EditKind::InsertCue: return "InsertCue";
    case EditKind::DeleteCue: return "DeleteCue";
    case EditKind::ReplaceVerbForm: return "ReplaceVerbForm";
    case EditKind::InsertAux: return "InsertAux";
    case EditKind::DeleteAux: return "DeleteAux";
    case EditKind::SwapNPI: return "SwapNPI";
    case EditKind::SwapConj: return "SwapConj";
    case EditKind::Recase: return "Recase";
  }
  return "?";
}

std::string_view to_string(EditOp op) {
  switch (op) {
    case EditOp::Insert: return "insert";
    case EditOp::Delete: return "delete";
    case EditOp::Replace: return "replace";
  }
  return "?";
}

std::vector<SurfaceToken> surface(const ParsedSentence& sentence) {
  std::vector<SurfaceToken> out;
  out.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) out.push_back({t.form, t.space_after});
  return out;
}

std::vector<SurfaceToken> replay(std::vector<SurfaceToken> tokens, std::span<const Edit> edits) {
  for (const auto& e : edits) {
    const auto n = static_cast<int>(tokens.size());
    switch (e.op) {
      case EditOp::Insert:
        if (e.position < 0 || e.position > n) throw std::logic_error("insert position out of range");
        tokens.insert(tokens.begin() + e.position, SurfaceToken{e.after, e.space_after});
        break;
      case EditOp::Delete:
        if (e.position < 0 || e.position >= n || tokens[e.position].form != e.before)
          throw std::logic_error("delete does not match token '" + e.before + "'");
        tokens.erase(tokens.begin() + e.position);
        break;
      case EditOp::Replace:
        if (e.position < 0 || e.position >= n || tokens[e.position].form != e.before)
          throw std::logic_error("replace does not match token '" + e.before + "'");
        tokens[e.position] = SurfaceToken{e.after, e.space_after};
        break;
    }
    if (e.left_space_after && e.position > 0) tokens[e.position - 1].space_after = *e.left_space_after;
  }
  return tokens;
}

size_t select_auxiliary(std::span<const std::string> chain_forms) {
  if (chain_forms.size() > 1 && is_modal(chain_forms[0])) {
    for (size_t i = 1; i < chain_forms.size(); ++i) {
      if (is_have_form(chain_forms[i])) return i;
    }
  }
  return 0;
}

int select_auxiliary(const ParsedSentence& sentence, std::span<const int> chain) {
  std::vector<std::string> forms;
  for (int id : chain) forms.push_back(sentence.at(id).form);
  return chain[select_auxiliary(forms)];
}

ReversalResult add_negation(const ParsedSentence& s, Cue cue, const CueLexicon& lexicon) {
  auto main = main_verb(s);
  if (!main) return ReversalError{Rejection::NoMainVerb, "no verbal token"};
  if (!detect_cues(s, lexicon).empty()) return ReversalError{Rejection::NotAffirmative, "sentence already has a negation cue"};
  if (is_question(s)) return ReversalError{Rejection::IsQuestion, "sentence is a question"};

  const int mv = *main;
  const int pred = predicate_head(s, mv);
  const auto chain = aux_chain(s, mv);
  const Token& verb = s.at(mv);
  Editor ed(s);
  Cue used = cue;
  int cue_id = 0;

  if (!chain.empty() || (cue != Cue::Never && takes_cue_directly(verb))) {
    int target = chain.empty() ? mv : select_auxiliary(s, chain);
    auto r = attach_to_auxiliary(ed, target, cue, pred);
    if (auto* err = std::get_if<ReversalError>(&r)) return *err;
    used = std::get<Attached>(r).used;
    cue_id = std::get<Attached>(r).cue_id;
  } else if (cue == Cue::Never || is_gerund(verb)) {
    if (cue == Cue::Nt) used = Cue::Not;
    cue_id = ed.insert(ed.pos(mv), cue_token(used, pred), EditKind::InsertCue, true);
  } else {
    std::string lemma = normalize_form(verb.lemma);
    if (!alphabetic(lemma)) return unsupported("main verb has no usable lemma");
    auto do_form = do_support_form(s, mv);
    if (!do_form) return unsupported("main verb form '" + verb.form + "' takes no do-support");
    ed.replace(mv, match_case(lemma, verb.form), EditKind::ReplaceVerbForm);
    Token& v = ed.tok_mut(mv);
    v.feats = {{"VerbForm", "Inf"}};
    v.xpos = "VB";

    Token aux;
    aux.form = *do_form;
    aux.lemma = "do";
    aux.upos = "AUX";
    aux.xpos = do_xpos(*do_form);
    aux.feats = do_features(*do_form);
    aux.head = mv;
    aux.deprel = "aux";
    int aux_id = ed.insert(ed.pos(mv), aux, EditKind::InsertAux, true);
    int after = ed.pos(aux_id) + 1;
    if (cue == Cue::Nt) {
      cue_id = ed.insert(after, cue_token(Cue::Nt, pred), EditKind::InsertCue, true, false);
    } else {
      cue_id = ed.insert(after, cue_token(Cue::Not, pred), EditKind::InsertCue, true, true);
    }
  }

  const int cue_pos = ed.pos(cue_id);
  bool swapped_already = false;
  bool swapped_some = false;
  for (int id = 1; id <= s.size(); ++id) {
    if (!in_scope(s, ed, id, pred, cue_pos)) continue;
    const Token& t = ed.tok(id);
    std::string f = normalize_form(t.form);
    if (!swapped_already && f == "already" && t.upos == "ADV") {
      ed.replace(id, match_case("yet", t.form), EditKind::SwapNPI);
      swapped_already = true;
    } else if (!swapped_some && f == "some" && (t.upos == "DET" || t.upos == "PRON")) {
      ed.replace(id, match_case("any", t.form), EditKind::SwapNPI);
      swapped_some = true;
    }
  }
  return make_outcome(ed, Direction::Added, used, cue);
}

ReversalResult remove_negation(const ParsedSentence& s, const CueLexicon& lexicon) {
  auto verdict = eligibility(s, lexicon);
  if (!verdict.eligible()) return ReversalError{*verdict.rejection, "sentence is not eligible for removal"};

  const NegationCue& cue = *verdict.cue;
  const int mv = *verdict.main;
  const int pred = predicate_head(s, mv);
  const auto chain = aux_chain(s, mv);
  const int cue_id = cue.token_index;
  const Token& ct = s.at(cue_id);
  const Cue kind = *cue.cue();
  Editor ed(s);

  const MultiwordToken* mwt = s.multiword_containing(cue_id);
  const bool fused_with_previous = mwt && mwt->first < cue_id;
  if (kind == Cue::Nt) {
    const int host_id = cue_id - 1;
    if (host_id < 1) return unsupported("n't without a host auxiliary");
    const Token& host = s.at(host_id);
    std::string fused = (fused_with_previous && mwt->first == host_id && mwt->last == cue_id)
                            ? mwt->form
                            : host.form + "n't";
    std::string expanded;
    try {
      expanded = expand_contraction(fused);
    } catch (const MorphologyError& e) {
      return unsupported(e.what());
    }
    ed.replace(host_id, expanded, EditKind::ReplaceVerbForm);
    ed.remove(cue_id, EditKind::DeleteCue, ct.space_after);
  } else {
    std::optional<bool> left;
    if (cue_id > 1 && (fused_with_previous || !ct.space_after)) left = ct.space_after;
    ed.remove(cue_id, EditKind::DeleteCue, left);
  }

  if (chain.size() == 1) {
    const int aux_id = chain.front();
    const Token& verb = s.at(mv);
    std::string aux_form = normalize_form(ed.tok(aux_id).form);
    bool carrier = (aux_form == "do" || aux_form == "does" || aux_form == "did") && aux_id != mv &&
                   verb.upos == "VERB" && normalize_form(verb.form) == normalize_form(verb.lemma) &&
                   alphabetic(verb.lemma);
    if (carrier) {
      const Token aux = ed.tok(aux_id);
      std::optional<bool> left;
      if (!aux.space_after) left = false;
      ed.remove(aux_id, EditKind::DeleteAux, left);
      std::string lemma = normalize_form(verb.lemma);
      std::string inflected = lemma;
      Features feats{{"Mood", "Ind"}, {"Tense", "Pres"}, {"VerbForm", "Fin"}};
      std::string xpos = "VBP";
      if (aux_form == "did") {
        inflected = past_tense(lemma);
        feats["Tense"] = "Past";
        xpos = "VBD";
      } else if (aux_form == "does") {
        inflected = third_person_singular(lemma);
        feats["Number"] = "Sing";
        feats["Person"] = "3";
        xpos = "VBZ";
      }
      ed.replace(mv, match_case(inflected, ed.tok(mv).form), EditKind::ReplaceVerbForm);
      Token& v = ed.tok_mut(mv);
      v.feats = feats;
      v.xpos = xpos;
    }
  }

  bool swapped_yet = false;
  bool swapped_any = false;
  bool swapped_at_all = false;
  for (int id = cue_id + 1; id <= s.size(); ++id) {
    if (!ed.alive(id) || !s.dominates(pred, id)) continue;
    const Token& t = ed.tok(id);
    std::string f = normalize_form(t.form);
    if (!swapped_yet && f == "yet" && t.upos == "ADV") {
      ed.replace(id, match_case("already", t.form), EditKind::SwapNPI);
      swapped_yet = true;
    } else if (!swapped_any && f == "any" && (t.upos == "DET" || t.upos == "PRON")) {
      ed.replace(id, match_case("some", t.form), EditKind::SwapNPI);
      swapped_any = true;
    } else if (!swapped_at_all && f == "at" && id + 1 <= s.size() && ed.alive(id + 1) &&
               ed.pos(id + 1) == ed.pos(id) + 1 && s.dominates(pred, id + 1) &&
               normalize_form(ed.tok(id + 1).form) == "all") {
      bool space = ed.tok(id + 1).space_after;
      ed.replace(id, match_case("somewhat", t.form), EditKind::SwapNPI);
      ed.remove(id + 1, EditKind::SwapNPI, space);
      swapped_at_all = true;
    }
  }

  for (int id = 1; id <= s.size(); ++id) {
    if (!ed.alive(id) || !is_but_coordinator(s, s.at(id), pred)) continue;
    ed.replace(id, match_case("and", ed.tok(id).form), EditKind::SwapConj);
  }

  return make_outcome(ed, Direction::Removed, kind, std::nullopt);
}

CuePolicy CuePolicy::fixed(Cue cue) {
  CuePolicy p;
  p.fixed_ = cue;
  return p;
}

CuePolicy CuePolicy::distribution(std::array<double, 3> weights) {
  double sum = 0;
  for (double w : weights) {
    if (w < 0 || !std::isfinite(w)) throw std::invalid_argument("cue weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("cue weights must sum to 1");
  CuePolicy p;
  p.weights_ = weights;
  return p;
}

Cue CuePolicy::draw(std::uint64_t seed) const {
  if (fixed_) return *fixed_;
  double u = Rng(seed).unit();
  double acc = 0;
  constexpr std::array<Cue, 3> kOrder = {Cue::Not, Cue::Nt, Cue::Never};
  for (size_t i = 0; i < 3; ++i) {
    acc += weights_[i];
    if (u < acc) return kOrder[i];
  }
  for (size_t i = 3; i-- > 0;) {
    if (weights_[i] > 0) return kOrder[i];
  }
  return Cue::Not;
}

ReversalResult reverse_polarity(const ParsedSentence& s, const CuePolicy& policy, std::uint64_t seed,
                                const CueLexicon& lexicon) {
  auto verdict = eligibility(s, lexicon);
  if (verdict.eligible()) return remove_negation(s, lexicon);
  if (verdict.rejection == Rejection::NoCue) {
    std::uint64_t key = mix_seed(seed, stable_hash(s.doc_id));
    key = mix_seed(key, static_cast<std::uint64_t>(s.section_index));
    key = mix_seed(key, static_cast<std::uint64_t>(s.sent_index));
    return add_negation(s, policy.draw(key), lexicon);
  }
  return ReversalError{*verdict.rejection, "sentence is neither eligible-negated nor affirmative"};
}

}  // namespace negata
