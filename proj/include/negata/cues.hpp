// Negation cue detection, main-verb identification and the eligibility
// filter that decides which negated sentences the reversal rules accept.

#ifndef NEGATA_CUES_HPP_
#define NEGATA_CUES_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negata/conllu.hpp"

namespace negata {

// The three cues the reversal rules can add and remove.
enum class Cue { Not, Nt, Never };

std::string_view to_string(Cue cue);
std::optional<Cue> parse_cue(std::string_view name);  // "not", "nt", "n't", "never"

enum class CueKind { Not, Nt, Never, Lexical };

struct NegationCue {
  CueKind kind = CueKind::Lexical;
  std::string text;          // lowercased matched text, e.g. "n't" or "a lack of"
  int token_index = 0;       // first token of the match
  int length = 1;            // number of tokens covered
  std::optional<int> attached_to;  // head of a reversible cue

  bool reversible() const { return kind != CueKind::Lexical; }
  std::optional<Cue> cue() const;
};

// Inventory of cue strings. The reversible set {not, n't, never} is fixed;
// the extended list is only used to decide whether a sentence is affirmative.
class CueLexicon {
 public:
  // Built-in list: no, nobody, nothing, none, nor, neither, without,
  // nowhere, cannot.
  static CueLexicon defaults();
  // One cue per line, `#` starts a comment, multi-word cues space-separated.
  static CueLexicon parse(std::string_view text);
  static CueLexicon load(const std::filesystem::path& path);

  // Lowercases and splits on spaces; duplicates are ignored.
  void add(std::string_view cue);
  const std::vector<std::vector<std::string>>& extended() const { return extended_; }
  size_t longest() const { return longest_; }

 private:
  std::vector<std::vector<std::string>> extended_;
  size_t longest_ = 0;
};

// Normalizes a form for cue matching: ASCII lowercase, typographic
// apostrophes folded to '.
std::string normalize_form(std::string_view form);

// All cues in surface order. Matches never overlap; at each position the
// longest candidate wins, reversible cues winning ties.
std::vector<NegationCue> detect_cues(const ParsedSentence& sentence, const CueLexicon& lexicon);

// Cue detection on plain text, for checking emitted datasets where no parse
// is available. Tokenizes on whitespace, peels punctuation and splits n't.
std::vector<std::string> surface_tokens(std::string_view text);
std::vector<NegationCue> detect_cues_in_text(std::string_view text, const CueLexicon& lexicon);

// The root if it is verbal; otherwise the copula, else an auxiliary, else
// any other verbal direct dependent of the root.
std::optional<int> main_verb(const ParsedSentence& sentence);

// Head of the clause the main verb belongs to: the root when the main verb
// is its copula, the main verb otherwise.
int predicate_head(const ParsedSentence& sentence, int main);

// aux / aux:pass dependents of the main verb, plus those of the root for a
// copular main verb, in surface order. The main verb itself is excluded.
std::vector<int> aux_chain(const ParsedSentence& sentence, int main);

bool is_question(const ParsedSentence& sentence);

enum class Rejection {
  NoCue,
  MultipleCues,
  CueNotOnMainVerb,
  IsQuestion,
  UnsupportedCue,
  NoMainVerb,
  NotAffirmative,
  UnsupportedConstruction,
};

std::string_view to_string(Rejection reason);

struct EligibilityVerdict {
  std::optional<Rejection> rejection;  // empty = eligible
  std::optional<NegationCue> cue;      // the single reversible cue when eligible
  std::optional<int> main;

  bool eligible() const { return !rejection.has_value(); }
};

// Checks, in order: main verb exists; a cue exists and at least one is
// reversible; exactly one cue; the cue hangs off the main verb's predicate
// chain; the sentence is not a question.
EligibilityVerdict eligibility(const ParsedSentence& sentence, const CueLexicon& lexicon);

}  // namespace negata

#endif  // NEGATA_CUES_HPP_
