#include "negata/morphology.hpp"

#include <sstream>

#include "embedded_data.hpp"

namespace negata {

namespace {

std::vector<std::string> tsv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, '\t')) out.push_back(cell);
  return out;
}

// Non-empty, non-comment lines of a data file.
std::vector<std::string> data_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

const std::set<std::string, std::less<>>& cvc_doubling() {
  static const auto* words = [] {
    auto* s = new std::set<std::string, std::less<>>();
    for (auto& line : data_lines(data::kCvcDoubling)) s->insert(line);
    return s;
  }();
  return *words;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool consonant_y(std::string_view w) {
  return w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]);
}

}  // namespace

AuxNegationTable AuxNegationTable::parse(std::string_view tsv) {
  AuxNegationTable table;
  for (const auto& line : data_lines(tsv)) {
    auto f = tsv_fields(line);
    if (f.size() != 4) throw MorphologyError("auxiliary table row needs 4 columns: " + line);
    AuxNegationRow row{f[0], f[1], std::nullopt, f[3]};
    if (f[2] != "-") row.nt_form = f[2];
    table.rows_.push_back(std::move(row));
  }
  return table;
}

const AuxNegationTable& AuxNegationTable::core() {
  static const AuxNegationTable table = parse(data::kAuxNegationTsv);
  return table;
}

const AuxNegationTable& AuxNegationTable::supplementary() {
  static const AuxNegationTable table = parse(data::kAuxNegationExtraTsv);
  return table;
}

const AuxNegationRow* AuxNegationTable::find(std::string_view aux) const {
  std::string key = normalize_form(aux);
  for (const auto& row : rows_) {
    if (row.aux == key) return &row;
  }
  return nullptr;
}

std::optional<std::string> negate_aux(std::string_view aux_form, Cue cue) {
  const AuxNegationRow* row = AuxNegationTable::core().find(aux_form);
  if (!row) throw MorphologyError("not a negatable auxiliary: " + std::string(aux_form));
  switch (cue) {
    case Cue::Not: return row->not_form;
    case Cue::Nt: return row->nt_form;
    case Cue::Never: return row->never_form;
  }
  return std::nullopt;
}

IrregularVerbTable IrregularVerbTable::parse(std::string_view tsv) {
  IrregularVerbTable table;
  for (const auto& line : data_lines(tsv)) {
    auto f = tsv_fields(line);
    if (f.size() != 4) throw MorphologyError("irregular verb row needs 4 columns: " + line);
    table.entries_[f[0]] = VerbForms{f[1], f[2], f[3]};
  }
  return table;
}

const IrregularVerbTable& IrregularVerbTable::standard() {
  static const IrregularVerbTable table = parse(data::kIrregularVerbsTsv);
  return table;
}

const VerbForms* IrregularVerbTable::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string past_tense(std::string_view lemma) {
  if (const VerbForms* v = IrregularVerbTable::standard().find(lemma)) return v->past;
  std::string w(lemma);
  if (w.empty()) return w;
  if (w.back() == 'e') return w + "d";
  if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ied";
  if (cvc_doubling().count(w)) {
    if (w.back() == 'c') return w + "ked";
    return w + w.back() + "ed";
  }
  return w + "ed";
}

std::string third_person_singular(std::string_view lemma) {
  if (const VerbForms* v = IrregularVerbTable::standard().find(lemma)) return v->third_sg;
  std::string w(lemma);
  if (w.empty()) return w;
  for (std::string_view suffix : {"s", "sh", "ch", "x", "z", "o"}) {
    if (w.ends_with(suffix)) return w + "es";
  }
  if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ies";
  return w + "s";
}

std::string expand_contraction(std::string_view form) {
  static const std::map<std::string, std::string, std::less<>> kHosts = {
      {"ca", "can"},       {"wo", "will"},      {"sha", "shall"},   {"do", "do"},
      {"does", "does"},    {"did", "did"},      {"is", "is"},       {"are", "are"},
      {"was", "was"},      {"were", "were"},    {"has", "has"},     {"have", "have"},
      {"had", "had"},      {"could", "could"},  {"would", "would"}, {"should", "should"},
      {"must", "must"},    {"might", "might"},  {"need", "need"},   {"ought", "ought"},
      {"dare", "dare"},    {"may", "may"},
  };
  std::string lower = normalize_form(form);
  if (!lower.ends_with("n't") || lower.size() <= 3)
    throw MorphologyError("not a contracted auxiliary: " + std::string(form));
  auto it = kHosts.find(std::string_view(lower).substr(0, lower.size() - 3));
  if (it == kHosts.end()) throw MorphologyError("unknown contracted auxiliary: " + std::string(form));
  return match_case(it->second, form);
}

bool is_modal(std::string_view form) {
  static const std::set<std::string, std::less<>> kModals = {
      "can", "could", "will", "would", "shall", "should", "must", "may", "might", "'ll"};
  return kModals.count(normalize_form(form)) > 0;
}

std::string match_case(std::string_view word, std::string_view model) {
  std::string out(word);
  if (model.empty() || out.empty()) return out;
  auto upper = [](char c) { return c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : c; };
  bool first_upper = model[0] >= 'A' && model[0] <= 'Z';
  bool all_upper = model.size() > 1;
  for (char c : model) {
    if (c >= 'a' && c <= 'z') all_upper = false;
  }
  if (all_upper && first_upper) {
    for (char& c : out) c = upper(c);
  } else if (first_upper) {
    out[0] = upper(out[0]);
  }
  return out;
}

}  // namespace negata
