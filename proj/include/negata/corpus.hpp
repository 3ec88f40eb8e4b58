// Builds NSPP and NSP training data from parsed documents: candidate
// extraction, per-article balancing, cue-distribution matching, validation
// split and emission with a manifest.

#ifndef NEGATA_CORPUS_HPP_
#define NEGATA_CORPUS_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "negata/conllu.hpp"
#include "negata/cues.hpp"

namespace negata {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration that cannot be satisfied by the data at hand (for example
// more validation pairs than candidates).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceRef {
  std::string doc_id;
  int section_index = 0;
  int sent_index = 0;
  auto operator<=>(const SourceRef&) const = default;
};

enum class Polarity { Negated, Affirmative };
enum class SubsetMode { Both, AddOnly, RemoveOnly };
std::string_view to_string(SubsetMode m);
std::optional<SubsetMode> parse_subset_mode(std::string_view s);

struct BuildConfig {
  std::uint64_t seed = 0;
  long val_pairs = 25000;
  SubsetMode subset = SubsetMode::Both;
  bool nspp = true;
  bool nsp = true;
  bool match_cue_distribution = true;
  std::optional<std::filesystem::path> lexicon_path;
  int jobs = 1;
  bool tsv = false;

  // Throws ConfigError for values that are wrong regardless of the data.
  void validate() const;
};

// A sentence that can be reversed, with its predecessor as S1.
struct Candidate {
  SourceRef source;
  std::string s1;
  std::string s2;
  Polarity polarity = Polarity::Negated;
  // Negated: the cue that removal deletes and the reversed text.
  // Affirmative: reversed text and realized cue per requested cue, indexed
  // by Cue (not, n't, never).
  std::array<std::string, 3> reversed;
  std::array<Cue, 3> realized{Cue::Not, Cue::Nt, Cue::Never};
  Cue cue = Cue::Not;
};

struct CandidatePools {
  std::vector<Candidate> negated;
  std::vector<Candidate> affirmative;
  // Documents in input order.
  std::vector<std::string> documents;
  std::map<std::string, long> rejections;
  long sentences = 0;
};

// Negated pool: eligible sentences that are not first in their section and
// whose removal succeeds. Affirmative pool: cue-free sentences, not first in
// their section, to which every cue can be added. Documents are processed
// on `jobs` threads; the result does not depend on `jobs`.
CandidatePools extract_candidates(std::span<const ParsedSentence> sentences,
                                  const CueLexicon& lexicon, int jobs = 1);

struct ArticleSelection {
  std::string doc_id;
  long negated = 0;
  // Indices into CandidatePools::affirmative, ascending.
  std::vector<size_t> local;
  std::vector<size_t> foreign;
};

struct Balance {
  std::vector<ArticleSelection> articles;  // articles with negated candidates
  long shortfall = 0;
};

// Same-article affirmatives first; any remaining need is filled from the
// other articles' unused affirmatives, drawn uniformly with the seed.
Balance balance_affirmatives(const CandidatePools& pools, std::uint64_t seed);

struct ArticleCues {
  std::string doc_id;
  std::array<long, 3> negated{};
  std::array<long, 3> requested{};
  std::array<long, 3> realized{};
  long degraded = 0;
  long local = 0;
  long foreign = 0;
};

// Largest-remainder apportionment of `histogram` over `n` slots. Ties go to
// the larger histogram count, then to not, n't, never in that order.
std::array<long, 3> apportion(const std::array<long, 3>& histogram, long n);

struct CueAssignment {
  // (affirmative pool index, requested cue), ascending by index.
  std::vector<std::pair<size_t, Cue>> items;
  std::vector<ArticleCues> articles;
};

CueAssignment assign_cues(const CandidatePools& pools, const Balance& balance,
                          bool match_distribution, std::uint64_t seed);

struct PairRecord {
  SourceRef source;
  std::string s1;
  std::string s2;
  std::optional<std::string> s2_prime;
  Polarity s2_polarity = Polarity::Negated;
  std::optional<Cue> cue_kind;
};

// Sorted by source. The subset mode keeps only one origin if requested.
std::vector<PairRecord> build_records(const CandidatePools& pools, const CueAssignment& assignment,
                                      SubsetMode subset);

// Marks the records that go to validation. In Both mode half come from each
// polarity. Throws DataError when there are not enough records.
std::vector<bool> split_validation(const std::vector<PairRecord>& records, long val_pairs,
                                   SubsetMode subset, std::uint64_t seed);

// File name -> content, plus the manifest.
struct Datasets {
  std::map<std::string, std::string> files;
  nlohmann::ordered_json manifest;
};

struct BuildInput {
  std::vector<ParsedSentence> sentences;
  long diagnostics = 0;
  std::string digest;  // hex SHA-256 of the raw input bytes
};

BuildInput read_inputs(const std::vector<std::filesystem::path>& paths,
                       std::vector<Diagnostic>* diagnostics = nullptr);

Datasets build_datasets(const BuildInput& input, const BuildConfig& config,
                        const CueLexicon& lexicon);

// Writes every file plus manifest.json into `out`, creating it if needed.
void write_datasets(const Datasets& datasets, const std::filesystem::path& out);

// Re-checks an emitted tree against its manifest. Returns one message per
// violation; empty means the tree is consistent.
std::vector<std::string> validate_output(const std::filesystem::path& dir,
                                         const CueLexicon& lexicon = CueLexicon::defaults());

std::string sha256_hex(std::string_view bytes);

}  // namespace negata

#endif  // NEGATA_CORPUS_HPP_
