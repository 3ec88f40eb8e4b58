// Helpers shared by the unit tests and the acceptance binary.

#ifndef NEGATA_TESTS_SUPPORT_HPP_
#define NEGATA_TESTS_SUPPORT_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "negata/conllu.hpp"
#include "negata/cues.hpp"
#include "negata/metrics.hpp"

namespace negata::test {

std::filesystem::path fixture(const std::string& name);
std::string read_file(const std::filesystem::path& path);
std::vector<ParsedSentence> load_fixture(const std::string& name);
// One-sentence parse of an inline CoNLL-U block; fails the caller's check
// by throwing if the block does not parse cleanly.
ParsedSentence parse_one(const std::string& conllu);

// The auxiliary negation table as published, one row per auxiliary:
// aux, not, n't, never; "-" for a missing cell.
const std::vector<std::array<std::string, 4>>& published_aux_table();

struct GoldenCase {
  std::string id;
  ParsedSentence sentence;
  std::optional<Cue> add;  // nullopt = remove
  std::string expect;      // output text or "reject <Reason>"
};

std::vector<GoldenCase> load_golden();
// Runs the case; returns the produced text in the same format as `expect`.
std::string run_golden(const GoldenCase& c);

struct PropertyReport {
  long affirmatives = 0;
  long eligible = 0;
  long round_trip_a = 0;  // sentences inside the round trip A domain
  long contractible = 0;
  std::vector<std::string> violations;
};

// Checks every reversal property over the sentences: single-cue and
// zero-cue postconditions, edit replay, token-count delta, both round
// trips, the affirmative verdict, and de-contraction on the table.
PropertyReport check_properties(const std::vector<ParsedSentence>& sentences,
                                const CueLexicon& lexicon = CueLexicon::defaults());

// Brute-force references for the metrics.
namespace reference {
double group_consistency(const std::vector<PredictionGroup>& groups, std::optional<Variant> pair_with);
double match_rate(const std::vector<Ranking>& rankings);
double macro_f1(const std::vector<LabelPair>& labels, const std::vector<std::string>& classes);
}  // namespace reference

// Compares an emitted manifest with the oracle's expected JSON on every
// key the oracle defines. Returns mismatch descriptions.
std::vector<std::string> compare_with_oracle(const std::filesystem::path& manifest,
                                             const std::filesystem::path& expected);

// Lists files that differ between two directory trees (by name and bytes).
std::vector<std::string> diff_trees(const std::filesystem::path& a, const std::filesystem::path& b);

// Synthetic CoNLL-U with `sections` two-sentence sections in documents of
// 50 sections; the second sentence of each section alternates between an
// eligible negated and an affirmative one.
std::string synthetic_corpus(long sections);

std::filesystem::path temp_dir(const std::string& name);

}  // namespace negata::test

#endif  // NEGATA_TESTS_SUPPORT_HPP_
