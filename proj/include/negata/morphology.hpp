// English verb inflection and auxiliary negation tables.

#ifndef NEGATA_MORPHOLOGY_HPP_
#define NEGATA_MORPHOLOGY_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "negata/cues.hpp"

namespace negata {

class MorphologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AuxNegationRow {
  std::string aux;
  std::string not_form;
  std::optional<std::string> nt_form;
  std::string never_form;
};

// Maps an auxiliary to the surface form it takes with each reversible cue.
class AuxNegationTable {
 public:
  // The 22-row core table (be, being, was, is, were, have, having, had, 've,
  // do, does, did, can, could, will, 'll, would, shall, should, must, may,
  // might).
  static const AuxNegationTable& core();
  // Auxiliaries outside the core table (are, am, has, been, 's, ...).
  static const AuxNegationTable& supplementary();
  // TSV: aux, not, n't, never; `-` for a missing cell; `#` comments.
  static AuxNegationTable parse(std::string_view tsv);

  const AuxNegationRow* find(std::string_view aux) const;
  const std::vector<AuxNegationRow>& rows() const { return rows_; }

 private:
  std::vector<AuxNegationRow> rows_;
};

// Core-table cell for (aux, cue); nullopt for a `-` cell. `aux_form` is
// matched case-insensitively. Throws MorphologyError for an auxiliary that
// is not in the core table.
std::optional<std::string> negate_aux(std::string_view aux_form, Cue cue);

struct VerbForms {
  std::string past;
  std::string past_participle;
  std::string third_sg;
};

class IrregularVerbTable {
 public:
  static const IrregularVerbTable& standard();
  // TSV: lemma, past, past participle, third person singular.
  static IrregularVerbTable parse(std::string_view tsv);

  const VerbForms* find(std::string_view lemma) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, VerbForms, std::less<>> entries_;
};

// Lowercase base form in, inflected form out. Irregular lookup first, then
// suffix rules.
std::string past_tense(std::string_view lemma);
std::string third_person_singular(std::string_view lemma);

// "can't" -> "can", "won't" -> "will", "Wasn't" -> "Was". The finite form
// is kept, not reduced to the lemma. Throws MorphologyError for anything
// that is not a known auxiliary fused with n't.
std::string expand_contraction(std::string_view form);

// Modal auxiliaries: can, could, will, would, shall, should, must, may,
// might, 'll.
bool is_modal(std::string_view form);

// Copies the capitalization pattern of `model` (Title or ALL CAPS) onto
// the lowercase word `word`.
std::string match_case(std::string_view word, std::string_view model);

}  // namespace negata

#endif  // NEGATA_MORPHOLOGY_HPP_
