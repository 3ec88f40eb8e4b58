#include "negata/corpus.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "negata/reversal.hpp"
#include "negata/rng.hpp"

#ifndef NEGATA_VERSION
#define NEGATA_VERSION "dev"
#endif

namespace negata {

namespace {

using nlohmann::ordered_json;

constexpr std::array<Cue, 3> kCues = {Cue::Not, Cue::Nt, Cue::Never};
constexpr std::array<const char*, 3> kCueKeys = {"not", "nt", "never"};

size_t cue_slot(Cue c) { return static_cast<size_t>(c); }

bool has_cue_text(std::string_view text, const CueLexicon& lexicon) {
  return !detect_cues_in_text(text, lexicon).empty();
}

struct DocumentResult {
  std::vector<Candidate> negated;
  std::vector<Candidate> affirmative;
  std::map<std::string, long> rejections;
};

void examine(const ParsedSentence& s, const ParsedSentence* prev, const CueLexicon& lexicon,
             DocumentResult& out) {
  auto reject = [&](std::string_view reason) { ++out.rejections[std::string(reason)]; };
  if (s.sent_index == 0) return reject("FirstInSection");
  if (!prev) return reject("NoPrecedingSentence");

  Candidate c;
  c.source = {s.doc_id, s.section_index, s.sent_index};
  c.s1 = detokenize(*prev);
  c.s2 = detokenize(s);
  const bool negated = !detect_cues(s, lexicon).empty();

  if (negated) {
    auto verdict = eligibility(s, lexicon);
    if (!verdict.eligible()) return reject(to_string(*verdict.rejection));
    auto r = remove_negation(s, lexicon);
    if (!r) return reject(to_string(r.error().reason));
    if (has_cue_text(r.outcome().text, lexicon)) return reject("SurfacePolarityMismatch");
    c.polarity = Polarity::Negated;
    c.cue = r.outcome().cue_used;
    c.reversed[0] = r.outcome().text;
    out.negated.push_back(std::move(c));
    return;
  }
  c.polarity = Polarity::Affirmative;
  for (Cue cue : kCues) {
    auto r = add_negation(s, cue, lexicon);
    if (!r) return reject(to_string(r.error().reason));
    if (!has_cue_text(r.outcome().text, lexicon)) return reject("SurfacePolarityMismatch");
    c.reversed[cue_slot(cue)] = r.outcome().text;
    c.realized[cue_slot(cue)] = r.outcome().cue_used;
  }
  out.affirmative.push_back(std::move(c));
}

DocumentResult examine_run(std::span<const ParsedSentence> run, const CueLexicon& lexicon) {
  DocumentResult out;
  for (size_t i = 0; i < run.size(); ++i) {
    const ParsedSentence& s = run[i];
    const ParsedSentence* prev = nullptr;
    if (i > 0 && run[i - 1].section_index == s.section_index &&
        run[i - 1].sent_index == s.sent_index - 1) {
      prev = &run[i - 1];
    }
    examine(s, prev, lexicon, out);
  }
  return out;
}

ordered_json source_json(const SourceRef& s) {
  return {{"doc_id", s.doc_id}, {"section_index", s.section_index}, {"sent_index", s.sent_index}};
}

ordered_json cue_counts(const std::array<long, 3>& a) {
  ordered_json j = ordered_json::object();
  for (size_t i = 0; i < 3; ++i) j[kCueKeys[i]] = a[i];
  return j;
}

std::string tsv_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(SubsetMode m) {
  switch (m) {
    case SubsetMode::Both: return "both";
    case SubsetMode::AddOnly: return "add-only";
    case SubsetMode::RemoveOnly: return "remove-only";
  }
  return "?";
}

std::optional<SubsetMode> parse_subset_mode(std::string_view s) {
  if (s == "both") return SubsetMode::Both;
  if (s == "add-only") return SubsetMode::AddOnly;
  if (s == "remove-only") return SubsetMode::RemoveOnly;
  return std::nullopt;
}

void BuildConfig::validate() const {
  if (val_pairs < 0) throw ConfigError("val_pairs must be non-negative");
  if (val_pairs % 2 != 0) throw ConfigError("val_pairs must be even");
  if (!nspp && !nsp) throw ConfigError("at least one task is required");
  if (nspp && subset != SubsetMode::Both)
    throw ConfigError("the nspp task needs both polarities; use --subset both or --tasks nsp");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
}

CandidatePools extract_candidates(std::span<const ParsedSentence> sentences, const CueLexicon& lexicon,
                                  int jobs) {
  // Contiguous runs of one document.
  std::vector<std::span<const ParsedSentence>> runs;
  for (size_t i = 0; i < sentences.size();) {
    size_t j = i + 1;
    while (j < sentences.size() && sentences[j].doc_id == sentences[i].doc_id) ++j;
    runs.push_back(sentences.subspan(i, j - i));
    i = j;
  }

  std::vector<DocumentResult> results(runs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < runs.size(); k = next++) results[k] = examine_run(runs[k], lexicon);
  };
  const size_t threads = std::min<size_t>(std::max(jobs, 1), runs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CandidatePools pools;
  pools.sentences = static_cast<long>(sentences.size());
  std::set<std::string> seen;
  for (size_t k = 0; k < runs.size(); ++k) {
    const std::string& doc = runs[k].front().doc_id;
    if (seen.insert(doc).second) pools.documents.push_back(doc);
    auto& r = results[k];
    std::move(r.negated.begin(), r.negated.end(), std::back_inserter(pools.negated));
    std::move(r.affirmative.begin(), r.affirmative.end(), std::back_inserter(pools.affirmative));
    for (const auto& [reason, n] : r.rejections) pools.rejections[reason] += n;
  }
  return pools;
}

Balance balance_affirmatives(const CandidatePools& pools, std::uint64_t seed) {
  std::map<std::string, long> needed;
  std::map<std::string, std::vector<size_t>> available;
  for (const auto& c : pools.negated) ++needed[c.source.doc_id];
  for (size_t i = 0; i < pools.affirmative.size(); ++i)
    available[pools.affirmative[i].source.doc_id].push_back(i);

  Balance balance;
  std::vector<size_t> surplus;
  for (const auto& doc : pools.documents) {
    std::vector<size_t> avail = available[doc];
    auto it = needed.find(doc);
    if (it == needed.end()) {
      surplus.insert(surplus.end(), avail.begin(), avail.end());
      continue;
    }
    ArticleSelection sel;
    sel.doc_id = doc;
    sel.negated = it->second;
    const size_t take = std::min<size_t>(static_cast<size_t>(sel.negated), avail.size());
    if (take < avail.size()) Rng::keyed(seed, "balance", stable_hash(doc)).shuffle(avail);
    sel.local.assign(avail.begin(), avail.begin() + static_cast<long>(take));
    surplus.insert(surplus.end(), avail.begin() + static_cast<long>(take), avail.end());
    std::sort(sel.local.begin(), sel.local.end());
    balance.articles.push_back(std::move(sel));
  }

  std::sort(surplus.begin(), surplus.end());
  Rng::keyed(seed, "fill").shuffle(surplus);
  size_t cursor = 0;
  for (auto& sel : balance.articles) {
    long deficit = sel.negated - static_cast<long>(sel.local.size());
    while (deficit > 0 && cursor < surplus.size()) {
      sel.foreign.push_back(surplus[cursor++]);
      --deficit;
    }
    std::sort(sel.foreign.begin(), sel.foreign.end());
    balance.shortfall += deficit;
  }
  return balance;
}

std::array<long, 3> apportion(const std::array<long, 3>& histogram, long n) {
  std::array<long, 3> out{};
  const long total = std::accumulate(histogram.begin(), histogram.end(), 0L);
  if (n <= 0 || total <= 0) return out;
  std::array<long, 3> remainder{};
  long assigned = 0;
  for (size_t i = 0; i < 3; ++i) {
    out[i] = n * histogram[i] / total;
    remainder[i] = n * histogram[i] % total;
    assigned += out[i];
  }
  std::array<size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return histogram[a] > histogram[b];
  });
  for (size_t k = 0; assigned < n; k = (k + 1) % 3) {
    out[order[k]] += 1;
    ++assigned;
  }
  return out;
}

CueAssignment assign_cues(const CandidatePools& pools, const Balance& balance, bool match_distribution,
                          std::uint64_t seed) {
  std::map<std::string, std::array<long, 3>> histograms;
  for (const auto& c : pools.negated) ++histograms[c.source.doc_id][cue_slot(c.cue)];

  CueAssignment out;
  for (const auto& sel : balance.articles) {
    ArticleCues art;
    art.doc_id = sel.doc_id;
    art.negated = histograms[sel.doc_id];
    art.local = static_cast<long>(sel.local.size());
    art.foreign = static_cast<long>(sel.foreign.size());
    const long n = art.local + art.foreign;
    art.requested = match_distribution ? apportion(art.negated, n) : std::array<long, 3>{n, 0, 0};

    std::vector<Cue> cues;
    for (size_t i = 0; i < 3; ++i) cues.insert(cues.end(), art.requested[i], kCues[i]);
    Rng::keyed(seed, "cues", stable_hash(sel.doc_id)).shuffle(cues);

    std::vector<size_t> members = sel.local;
    members.insert(members.end(), sel.foreign.begin(), sel.foreign.end());
    std::sort(members.begin(), members.end());
    for (size_t k = 0; k < members.size(); ++k) {
      const Candidate& c = pools.affirmative[members[k]];
      Cue realized = c.realized[cue_slot(cues[k])];
      ++art.realized[cue_slot(realized)];
      if (realized != cues[k]) ++art.degraded;
      out.items.emplace_back(members[k], cues[k]);
    }
    out.articles.push_back(std::move(art));
  }
  std::sort(out.items.begin(), out.items.end());
  return out;
}

std::vector<PairRecord> build_records(const CandidatePools& pools, const CueAssignment& assignment,
                                      SubsetMode subset) {
  std::vector<PairRecord> records;
  if (subset != SubsetMode::AddOnly) {
    for (const auto& c : pools.negated) {
      records.push_back({c.source, c.s1, c.s2, c.reversed[0], Polarity::Negated, c.cue});
    }
  }
  if (subset != SubsetMode::RemoveOnly) {
    for (const auto& [index, cue] : assignment.items) {
      const Candidate& c = pools.affirmative[index];
      records.push_back({c.source, c.s1, c.s2, c.reversed[cue_slot(cue)], Polarity::Affirmative,
                         c.realized[cue_slot(cue)]});
    }
  }
  std::sort(records.begin(), records.end(),
            [](const PairRecord& a, const PairRecord& b) { return a.source < b.source; });
  return records;
}

std::vector<bool> split_validation(const std::vector<PairRecord>& records, long val_pairs,
                                   SubsetMode subset, std::uint64_t seed) {
  std::vector<bool> is_val(records.size(), false);
  auto pick = [&](std::vector<size_t> indices, long k, std::string_view label) {
    if (k > static_cast<long>(indices.size())) {
      throw DataError("cannot take " + std::to_string(k) + " validation pairs from " +
                      std::to_string(indices.size()) + " " + std::string(label) + " records");
    }
    Rng::keyed(seed, std::string("validation-") + std::string(label)).shuffle(indices);
    for (long i = 0; i < k; ++i) is_val[indices[i]] = true;
  };
  if (subset == SubsetMode::Both) {
    std::vector<size_t> neg, aff;
    for (size_t i = 0; i < records.size(); ++i)
      (records[i].s2_polarity == Polarity::Negated ? neg : aff).push_back(i);
    pick(std::move(neg), val_pairs / 2, "negated");
    pick(std::move(aff), val_pairs / 2, "affirmative");
  } else {
    std::vector<size_t> all(records.size());
    std::iota(all.begin(), all.end(), size_t{0});
    pick(std::move(all), val_pairs, "available");
  }
  return is_val;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

BuildInput read_inputs(const std::vector<std::filesystem::path>& paths, std::vector<Diagnostic>* diagnostics) {
  BuildInput input;
  std::string all;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open input " + p.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    all += text;
    all += '\0';
    auto parsed = parse_conllu(text, p.filename().string());
    input.diagnostics += static_cast<long>(parsed.diagnostics.size());
    if (diagnostics) diagnostics->insert(diagnostics->end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    std::move(parsed.sentences.begin(), parsed.sentences.end(), std::back_inserter(input.sentences));
  }
  input.digest = sha256_hex(all);
  return input;
}

Datasets build_datasets(const BuildInput& input, const BuildConfig& config, const CueLexicon& lexicon) {
  config.validate();
  CandidatePools pools = extract_candidates(input.sentences, lexicon, config.jobs);
  Balance balance = balance_affirmatives(pools, config.seed);
  CueAssignment assignment = assign_cues(pools, balance, config.match_cue_distribution, config.seed);
  std::vector<PairRecord> records = build_records(pools, assignment, config.subset);
  std::vector<bool> is_val = split_validation(records, config.val_pairs, config.subset, config.seed);

  Datasets out;
  ordered_json counts = ordered_json::object();
  for (const char* split : {"train", "val"}) {
    const bool want_val = std::string_view(split) == "val";
    std::string nspp, nsp, nspp_tsv, nsp_tsv;
    long nspp_total = 0, nspp_pos = 0, nsp_total = 0;
    for (size_t i = 0; i < records.size(); ++i) {
      if (is_val[i] != want_val) continue;
      const PairRecord& r = records[i];
      const int label = r.s2_polarity == Polarity::Negated ? 1 : 0;
      ordered_json src = source_json(r.source);
      const std::string src_tsv = tsv_field(r.source.doc_id) + "\t" + std::to_string(r.source.section_index) +
                                  "\t" + std::to_string(r.source.sent_index);
      if (config.nspp) {
        ordered_json j = {{"s1", r.s1}, {"label", label}, {"source", src}};
        nspp += j.dump() + "\n";
        nspp_tsv += tsv_field(r.s1) + "\t" + std::to_string(label) + "\t" + src_tsv + "\n";
        ++nspp_total;
        nspp_pos += label;
      }
      if (config.nsp) {
        ordered_json a = {{"s1", r.s1}, {"s2", r.s2}, {"is_next", 1}, {"origin", "original"}, {"source", src}};
        ordered_json b = {{"s1", r.s1}, {"s2", *r.s2_prime}, {"is_next", 0}, {"origin", "reversed"}, {"source", src}};
        nsp += a.dump() + "\n" + b.dump() + "\n";
        nsp_tsv += tsv_field(r.s1) + "\t" + tsv_field(r.s2) + "\t1\toriginal\t" + src_tsv + "\n";
        nsp_tsv += tsv_field(r.s1) + "\t" + tsv_field(*r.s2_prime) + "\t0\treversed\t" + src_tsv + "\n";
        nsp_total += 2;
      }
    }
    if (config.nspp) {
      out.files[std::string("nspp.") + split + ".jsonl"] = nspp;
      if (config.tsv) out.files[std::string("nspp.") + split + ".tsv"] = "s1\tlabel\tdoc_id\tsection_index\tsent_index\n" + nspp_tsv;
      counts["nspp"][split] = {{"total", nspp_total}, {"label_1", nspp_pos}, {"label_0", nspp_total - nspp_pos}};
    }
    if (config.nsp) {
      out.files[std::string("nsp.") + split + ".jsonl"] = nsp;
      if (config.tsv)
        out.files[std::string("nsp.") + split + ".tsv"] =
            "s1\ts2\tis_next\torigin\tdoc_id\tsection_index\tsent_index\n" + nsp_tsv;
      counts["nsp"][split] = {{"total", nsp_total}, {"is_next_1", nsp_total / 2}, {"is_next_0", nsp_total / 2}};
    }
  }

  long negated_records = 0, foreign = 0;
  for (const auto& r : records) negated_records += r.s2_polarity == Polarity::Negated;
  for (const auto& a : assignment.articles) foreign += a.foreign;

  ordered_json tasks = ordered_json::array();
  if (config.nspp) tasks.push_back("nspp");
  if (config.nsp) tasks.push_back("nsp");

  ordered_json& m = out.manifest;
  m["tool"] = "negata";
  m["version"] = NEGATA_VERSION;
  m["seed"] = config.seed;
  m["input_digest"] = "sha256:" + input.digest;
  m["config"] = {{"tasks", tasks},
                 {"subset", to_string(config.subset)},
                 {"val_pairs", config.val_pairs},
                 {"match_cue_distribution", config.match_cue_distribution},
                 {"lexicon_entries", lexicon.extended().size()}};
  m["input"] = {{"sentences", pools.sentences}, {"diagnostics", input.diagnostics}};
  m["pools"] = {{"negated", pools.negated.size()}, {"affirmative", pools.affirmative.size()}};
  m["selection"] = {{"affirmative_selected", assignment.items.size()},
                    {"foreign_fill", foreign},
                    {"shortfall", balance.shortfall}};
  m["records"] = {{"total", records.size()},
                  {"negated_origin", negated_records},
                  {"affirmative_origin", static_cast<long>(records.size()) - negated_records},
                  {"dropped", 0}};
  m["counts"] = counts;
  m["rejections"] = ordered_json::object();
  for (const auto& [reason, n] : pools.rejections) m["rejections"][reason] = n;
  m["articles"] = ordered_json::array();
  for (const auto& a : assignment.articles) {
    m["articles"].push_back({{"doc_id", a.doc_id},
                             {"affirmatives_local", a.local},
                             {"affirmatives_foreign", a.foreign},
                             {"negated", cue_counts(a.negated)},
                             {"requested", cue_counts(a.requested)},
                             {"realized", cue_counts(a.realized)},
                             {"degraded", a.degraded}});
  }
  ordered_json files = ordered_json::object();
  for (const auto& [name, content] : out.files) {
    files[name] = {{"lines", std::count(content.begin(), content.end(), '\n')}, {"sha256", sha256_hex(content)}};
  }
  m["files"] = files;
  return out;
}

void write_datasets(const Datasets& datasets, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(out / name, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write " + (out / name).string());
    f << content;
  };
  for (const auto& [name, content] : datasets.files) write(name, content);
  write("manifest.json", datasets.manifest.dump(2) + "\n");
}

std::vector<std::string> validate_output(const std::filesystem::path& dir, const CueLexicon& lexicon) {
  std::vector<std::string> failures;
  auto fail = [&](std::string msg) { failures.push_back(std::move(msg)); };

  ordered_json m;
  {
    std::ifstream in(dir / "manifest.json");
    if (!in) return {"missing manifest.json"};
    try {
      m = ordered_json::parse(in);
    } catch (const std::exception& e) {
      return {std::string("manifest.json does not parse: ") + e.what()};
    }
  }

  auto read_lines = [&](const std::string& name) -> std::optional<std::vector<ordered_json>> {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) {
      fail("missing " + name);
      return std::nullopt;
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (m.contains("files") && m["files"].contains(name)) {
      const auto& entry = m["files"][name];
      long lines = std::count(content.begin(), content.end(), '\n');
      if (lines != entry.value("lines", -1L))
        fail(name + ": " + std::to_string(lines) + " lines, manifest says " + entry["lines"].dump());
      if (sha256_hex(content) != entry.value("sha256", ""))
        fail(name + ": content digest differs from manifest");
    }
    std::vector<ordered_json> rows;
    std::istringstream lines(content);
    int n = 0;
    for (std::string line; std::getline(lines, line);) {
      ++n;
      try {
        rows.push_back(ordered_json::parse(line));
      } catch (const std::exception&) {
        fail(name + ":" + std::to_string(n) + ": not a JSON object");
      }
    }
    return rows;
  };
  auto source_of = [](const ordered_json& row) {
    const auto& s = row.at("source");
    return SourceRef{s.at("doc_id").get<std::string>(), s.at("section_index").get<int>(),
                     s.at("sent_index").get<int>()};
  };

  const auto& counts = m.value("counts", ordered_json::object());
  const long shortfall = m.value("/selection/shortfall"_json_pointer, 0L);
  const bool both = m.value("/config/subset"_json_pointer, std::string("both")) == "both";
  const long val_pairs = m.value("/config/val_pairs"_json_pointer, 0L);
  const long total_records = m.value("/records/total"_json_pointer, -1L);

  try {
    if (counts.contains("nspp")) {
      std::map<std::string, std::set<SourceRef>> sources;
      long total = 0;
      for (const char* split : {"train", "val"}) {
        const std::string name = std::string("nspp.") + split + ".jsonl";
        auto rows = read_lines(name);
        if (!rows) continue;
        const auto& c = counts["nspp"][split];
        long pos = 0;
        for (const auto& r : *rows) {
          int label = r.at("label").get<int>();
          if (label != 0 && label != 1) fail(name + ": label outside {0,1}");
          pos += label;
          sources[split].insert(source_of(r));
        }
        const long n = static_cast<long>(rows->size());
        total += n;
        if (n != c.value("total", -1L)) fail(name + ": count differs from manifest");
        if (pos != c.value("label_1", -1L) || n - pos != c.value("label_0", -1L))
          fail(name + ": label counts differ from manifest");
        if (both && std::abs(pos - (n - pos)) > shortfall)
          fail(name + ": label imbalance " + std::to_string(std::abs(pos - (n - pos))) + " exceeds shortfall " +
               std::to_string(shortfall));
        if (std::string_view(split) == "val" && n != val_pairs)
          fail(name + ": " + std::to_string(n) + " examples, expected " + std::to_string(val_pairs));
      }
      if (total != total_records) fail("nspp: train + val differs from record total");
      for (const auto& s : sources["val"]) {
        if (sources["train"].count(s)) {
          fail("nspp: source " + s.doc_id + "/" + std::to_string(s.section_index) + "/" +
               std::to_string(s.sent_index) + " is in both splits");
          break;
        }
      }
    }
    if (counts.contains("nsp")) {
      std::map<std::string, std::set<SourceRef>> sources;
      long total = 0;
      for (const char* split : {"train", "val"}) {
        const std::string name = std::string("nsp.") + split + ".jsonl";
        auto rows = read_lines(name);
        if (!rows) continue;
        const auto& c = counts["nsp"][split];
        long pos = 0;
        for (const auto& r : *rows) pos += r.at("is_next").get<int>();
        const long n = static_cast<long>(rows->size());
        total += n;
        if (n != c.value("total", -1L)) fail(name + ": count differs from manifest");
        if (2 * pos != n) fail(name + ": is_next ratio is not 1:1");
        if (std::string_view(split) == "val" && n != 2 * val_pairs)
          fail(name + ": " + std::to_string(n) + " examples, expected " + std::to_string(2 * val_pairs));
        for (size_t i = 0; i + 1 < rows->size(); i += 2) {
          const auto& a = (*rows)[i];
          const auto& b = (*rows)[i + 1];
          if (a.at("is_next") != 1 || b.at("is_next") != 0 || source_of(a) != source_of(b) || a.at("s1") != b.at("s1")) {
            fail(name + ":" + std::to_string(i + 1) + ": original/reversed lines are not paired");
            continue;
          }
          if (has_cue_text(a.at("s2").get<std::string>(), lexicon) ==
              has_cue_text(b.at("s2").get<std::string>(), lexicon))
            fail(name + ":" + std::to_string(i + 2) + ": reversed sentence has the same polarity");
          sources[split].insert(source_of(a));
        }
        if (rows->size() % 2) fail(name + ": odd number of lines");
      }
      if (total != 2 * total_records) fail("nsp: train + val differs from twice the record total");
      for (const auto& s : sources["val"]) {
        if (sources["train"].count(s)) {
          fail("nsp: source " + s.doc_id + "/" + std::to_string(s.section_index) + "/" +
               std::to_string(s.sent_index) + " is in both splits");
          break;
        }
      }
    }

    const long neg = m.value("/records/negated_origin"_json_pointer, -1L);
    const long aff = m.value("/records/affirmative_origin"_json_pointer, -1L);
    if (neg + aff != total_records) fail("records: origins do not sum to the total");

    for (const auto& a : m.value("articles", ordered_json::array())) {
      const std::string doc = a.value("doc_id", std::string("?"));
      std::array<long, 3> negated{}, requested{}, realized{};
      for (size_t i = 0; i < 3; ++i) {
        negated[i] = a["negated"].value(kCueKeys[i], 0L);
        requested[i] = a["requested"].value(kCueKeys[i], 0L);
        realized[i] = a["realized"].value(kCueKeys[i], 0L);
      }
      const long n = a.value("affirmatives_local", 0L) + a.value("affirmatives_foreign", 0L);
      const long h = std::accumulate(negated.begin(), negated.end(), 0L);
      const long degraded = a.value("degraded", 0L);
      if (std::accumulate(requested.begin(), requested.end(), 0L) != n)
        fail("article " + doc + ": requested cues do not cover its affirmatives");
      if (std::accumulate(realized.begin(), realized.end(), 0L) != n)
        fail("article " + doc + ": realized cues do not cover its affirmatives");
      const bool matched = m.value("/config/match_cue_distribution"_json_pointer, true);
      for (size_t i = 0; matched && h > 0 && i < 3; ++i) {
        // |requested - n * negated / h| < 1
        if (std::abs(requested[i] * h - n * negated[i]) >= h)
          fail("article " + doc + ": requested " + kCueKeys[i] + " is more than 1 away from its share");
      }
      // Only n't may degrade, and only to not.
      if (realized[1] != requested[1] - degraded || realized[0] != requested[0] + degraded ||
          realized[2] != requested[2])
        fail("article " + doc + ": realized cues differ from requested beyond recorded degradations");
    }
  } catch (const std::exception& e) {
    fail(std::string("malformed record: ") + e.what());
  }
  return failures;
}

}  // namespace negata
