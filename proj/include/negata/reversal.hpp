// Polarity reversal: adding a negation cue to an affirmative sentence or
// removing the single cue from a negated one.

#ifndef NEGATA_REVERSAL_HPP_
#define NEGATA_REVERSAL_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "negata/conllu.hpp"
#include "negata/cues.hpp"

namespace negata {

enum class Direction { Added, Removed };
std::string_view to_string(Direction d);

enum class EditKind {
  InsertCue,
  DeleteCue,
  ReplaceVerbForm,
  InsertAux,
  DeleteAux,
  SwapNPI,
  SwapConj,
  Recase,
};
std::string_view to_string(EditKind k);

enum class EditOp { Insert, Delete, Replace };
std::string_view to_string(EditOp op);

// One step of the rewrite. `position` is 0-based in the token sequence as it
// stands when the edit is applied, so a list of edits replays in order.
struct Edit {
  EditOp op = EditOp::Replace;
  EditKind kind = EditKind::ReplaceVerbForm;
  int position = 0;
  std::string before;  // empty for Insert
  std::string after;   // empty for Delete
  bool space_after = true;  // resulting flag of the inserted/replaced token
  // New SpaceAfter flag of the token preceding `position`, if it changes.
  std::optional<bool> left_space_after;
};

struct SurfaceToken {
  std::string form;
  bool space_after = true;
  bool operator==(const SurfaceToken&) const = default;
};

std::vector<SurfaceToken> surface(const ParsedSentence& sentence);

// Applies edits to a surface sequence. Throws std::logic_error when an edit
// does not match the sequence (wrong `before` form or position).
std::vector<SurfaceToken> replay(std::vector<SurfaceToken> tokens, std::span<const Edit> edits);

struct ReversalOutcome {
  ParsedSentence output;
  std::string text;
  Direction direction = Direction::Added;
  Cue cue_used = Cue::Not;           // cue inserted, or cue removed
  std::optional<Cue> requested;      // Added only
  std::vector<Edit> edits;

  // Nt was requested but the construction has no contracted form.
  bool degraded() const { return requested && *requested != cue_used; }
};

struct ReversalError {
  Rejection reason = Rejection::UnsupportedConstruction;
  std::string detail;
};

class ReversalResult {
 public:
  ReversalResult(ReversalOutcome outcome) : value_(std::move(outcome)) {}
  ReversalResult(ReversalError error) : value_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<ReversalOutcome>(value_); }
  explicit operator bool() const { return ok(); }
  const ReversalOutcome& outcome() const { return std::get<ReversalOutcome>(value_); }
  const ReversalError& error() const { return std::get<ReversalError>(value_); }

 private:
  std::variant<ReversalOutcome, ReversalError> value_;
};

// Picks the auxiliary that receives the cue: the only one, the "have" form
// after a leading modal ("might have been" -> have), else the first.
// Returns a position in `chain_forms`, which must be non-empty.
size_t select_auxiliary(std::span<const std::string> chain_forms);
// Same, over token indices of `sentence`; returns a token index.
int select_auxiliary(const ParsedSentence& sentence, std::span<const int> chain);

// Rule cascade, first match wins:
//  - auxiliaries on the main verb: the selected one takes the cue per the
//    auxiliary table (n't falls back to not where the table has no form);
//  - never: directly before the main verb;
//  - a bare be-form, modal or other auxiliary main verb: not/n't per the
//    table, on itself;
//  - a bare gerund/present participle: not directly before it;
//  - a bare finite verb: do-support (did/do/does + cue + lemma).
// Then already -> yet and some -> any after the cue inside the predicate.
ReversalResult add_negation(const ParsedSentence& sentence, Cue cue,
                            const CueLexicon& lexicon = CueLexicon::defaults());

// Deletes the cue (de-contracting n't), drops a do-support carrier and
// re-inflects the main verb, swaps NPIs back (yet -> already, any -> some,
// at all -> somewhat) and turns a clause-coordinating "but" into "and".
ReversalResult remove_negation(const ParsedSentence& sentence,
                               const CueLexicon& lexicon = CueLexicon::defaults());

class CuePolicy {
 public:
  static CuePolicy fixed(Cue cue);
  // Weights for not, n't, never; must sum to 1 within 1e-9.
  static CuePolicy distribution(std::array<double, 3> weights);

  Cue draw(std::uint64_t seed) const;
  bool is_fixed() const { return fixed_.has_value(); }

 private:
  std::optional<Cue> fixed_;
  std::array<double, 3> weights_{1.0, 0.0, 0.0};
};

// Removes the cue of an eligible negated sentence, or adds one to a cue-free
// sentence. The cue for addition is drawn from a generator keyed by `seed`
// and the sentence position, so results do not depend on processing order.
ReversalResult reverse_polarity(const ParsedSentence& sentence, const CuePolicy& policy,
                                std::uint64_t seed,
                                const CueLexicon& lexicon = CueLexicon::defaults());

}  // namespace negata

#endif  // NEGATA_REVERSAL_HPP_
