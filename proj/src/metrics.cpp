#include "negata/metrics.hpp"

#include <algorithm>
#include <set>

namespace negata {

namespace {

double match_rate(std::span<const Ranking> rankings) {
  if (rankings.empty()) throw MetricError("no rankings to score");
  long hits = 0;
  for (const auto& r : rankings) hits += r.predicted == r.gold;
  return static_cast<double>(hits) / static_cast<double>(rankings.size());
}

const GroupItem* find_variant(const PredictionGroup& g, Variant v) {
  for (const auto& item : g.items) {
    if (item.variant == v) return &item;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Original: return "original";
    case Variant::Paraphrase: return "paraphrase";
    case Variant::Scope: return "scope";
    case Variant::Affirmation: return "affirmation";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : {Variant::Original, Variant::Paraphrase, Variant::Scope, Variant::Affirmation}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

double group_consistency(std::span<const PredictionGroup> groups, std::optional<Variant> pair_with) {
  if (groups.empty()) throw MetricError("no groups to score");
  std::set<std::string> ids;
  long consistent = 0;
  for (const auto& g : groups) {
    if (!ids.insert(g.id).second) throw MetricError("duplicate group id '" + g.id + "'");
    if (g.items.empty()) throw MetricError("group '" + g.id + "' has no items");
    if (!pair_with) {
      consistent += std::all_of(g.items.begin(), g.items.end(), [](const GroupItem& i) { return i.correct; });
      continue;
    }
    const GroupItem* original = find_variant(g, Variant::Original);
    const GroupItem* other = find_variant(g, *pair_with);
    if (!original) throw MetricError("group '" + g.id + "' has no original item");
    if (!other) throw MetricError("group '" + g.id + "' has no " + std::string(to_string(*pair_with)) + " item");
    consistent += original->correct && other->correct;
  }
  return static_cast<double>(consistent) / static_cast<double>(groups.size());
}

double mean_top1_error(std::span<const Ranking> rankings) { return match_rate(rankings); }

double precision_at_1(std::span<const Ranking> rankings) { return match_rate(rankings); }

double macro_f1(std::span<const LabelPair> labels, std::span<const std::string> classes) {
  if (classes.empty()) throw MetricError("no classes given");
  double sum = 0;
  for (const auto& c : classes) {
    long tp = 0, fp = 0, fn = 0;
    for (const auto& l : labels) {
      const bool gold = l.gold == c;
      const bool pred = l.predicted == c;
      tp += gold && pred;
      fp += !gold && pred;
      fn += gold && !pred;
    }
    if (tp > 0) sum += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  }
  return sum / static_cast<double>(classes.size());
}

}  // namespace negata
