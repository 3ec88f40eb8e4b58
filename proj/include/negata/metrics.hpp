// Evaluation arithmetic: group consistency, top-1 match rates and
// macro-averaged F1.

#ifndef NEGATA_METRICS_HPP_
#define NEGATA_METRICS_HPP_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace negata {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Variant { Original, Paraphrase, Scope, Affirmation };
std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view s);

struct GroupItem {
  Variant variant = Variant::Original;
  bool correct = false;
};

struct PredictionGroup {
  std::string id;
  std::vector<GroupItem> items;
};

// Without `pair_with`: share of groups whose items are all correct. With
// it: share of groups where the Original item and the `pair_with` item are
// both correct; every group must contain both.
double group_consistency(std::span<const PredictionGroup> groups,
                         std::optional<Variant> pair_with = std::nullopt);

struct Ranking {
  std::string gold;
  std::string predicted;  // top-1 prediction
};

// Share of queries whose top prediction equals `gold`. For negated cloze
// queries `gold` is the original token, so a match is an error.
double mean_top1_error(std::span<const Ranking> rankings);
// Share of queries whose top prediction equals `gold`.
double precision_at_1(std::span<const Ranking> rankings);

struct LabelPair {
  std::string gold;
  std::string predicted;
};

// Unweighted mean of per-class F1 over `classes`. A class with no gold and
// no predicted instances scores 0.
double macro_f1(std::span<const LabelPair> labels, std::span<const std::string> classes);

}  // namespace negata

#endif  // NEGATA_METRICS_HPP_
