#include "negata/conllu.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

namespace negata {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string field(std::string_view s) { return s == "_" ? std::string() : std::string(s); }

std::string normalize_deprel(std::string_view rel) {
  if (rel == "auxpass") return std::string(kAuxPass);
  if (rel == "nsubjpass") return "nsubj:pass";
  if (rel == "ROOT") return "root";
  return std::string(rel);
}

// Splits MISC into the SpaceAfter flag and the remaining entries.
std::pair<bool, std::string> split_misc(std::string_view misc) {
  bool space_after = true;
  std::string rest;
  if (misc == "_" || misc.empty()) return {space_after, rest};
  for (auto item : split(misc, '|')) {
    if (item == "SpaceAfter=No") {
      space_after = false;
      continue;
    }
    if (!rest.empty()) rest += '|';
    rest += item;
  }
  return {space_after, rest};
}

// Accumulates one sentence block while reading.
struct Block {
  ParsedSentence sentence;
  int first_line = 0;
  bool broken = false;
  bool has_lines = false;
};

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  void line(std::string_view raw, int lineno) {
    std::string_view text = raw;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (trim(text).empty()) {
      finish();
      return;
    }
    if (!block_.has_lines) {
      block_.has_lines = true;
      block_.first_line = lineno;
    }
    if (text.front() == '#') {
      comment(text);
      return;
    }
    if (block_.broken) return;
    token_line(text, lineno);
  }

  ParseResult done() {
    finish();
    return std::move(result_);
  }

 private:
  void comment(std::string_view text) {
    std::string_view body = trim(text.substr(1));
    std::string_view key = body;
    std::string_view value;
    if (auto eq = body.find('='); eq != std::string_view::npos) {
      key = trim(body.substr(0, eq));
      value = trim(body.substr(eq + 1));
    }
    if (key == "newdoc" || key == "newdoc id") {
      std::string id(value);
      if (id.empty()) id = "doc" + std::to_string(doc_counter_);
      ++doc_counter_;
      doc_id_ = id;
      section_ = 0;
      sent_ = 0;
      return;
    }
    if (key == "newpar" || key == "newpar id") {
      if (sent_ > 0) {
        ++section_;
        sent_ = 0;
      }
      return;
    }
    if (key == "text") {
      block_.sentence.raw_text = std::string(value);
      return;
    }
    block_.sentence.metadata.emplace_back(std::string(key), std::string(value));
  }

  void fail(int lineno, std::string message) {
    if (!block_.broken) result_.diagnostics.push_back({source_, lineno, std::move(message)});
    block_.broken = true;
  }

  void token_line(std::string_view text, int lineno) {
    auto cols = split(text, '\t');
    if (cols.size() != 10) {
      fail(lineno, "malformed token line: expected 10 tab-separated columns, got " +
                       std::to_string(cols.size()));
      return;
    }
    std::string_view id = cols[0];
    if (id.find('.') != std::string_view::npos) return;  // empty node
    if (auto dash = id.find('-'); dash != std::string_view::npos) {
      auto first = parse_int(id.substr(0, dash));
      auto last = parse_int(id.substr(dash + 1));
      if (!first || !last || *first < 1 || *last < *first) {
        fail(lineno, "malformed multiword token range '" + std::string(id) + "'");
        return;
      }
      MultiwordToken mwt{*first, *last, std::string(cols[1])};
      pending_mwt_space_.emplace_back(*last, split_misc(cols[9]).first);
      block_.sentence.multiword.push_back(std::move(mwt));
      return;
    }
    auto index = parse_int(id);
    if (!index || *index < 1) {
      fail(lineno, "malformed token id '" + std::string(id) + "'");
      return;
    }
    auto head = parse_int(cols[6]);
    if (!head || *head < 0) {
      fail(lineno, "malformed head '" + std::string(cols[6]) + "'");
      return;
    }
    Token tok;
    tok.index = *index;
    tok.form = std::string(cols[1]);
    tok.lemma = field(cols[2]);
    tok.upos = field(cols[3]);
    tok.xpos = field(cols[4]);
    if (cols[5] != "_" && !cols[5].empty()) {
      for (auto kv : split(cols[5], '|')) {
        auto eq = kv.find('=');
        if (eq == std::string_view::npos || eq == 0) {
          fail(lineno, "malformed feature '" + std::string(kv) + "'");
          return;
        }
        auto [it, inserted] =
            tok.feats.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
        if (!inserted) {
          fail(lineno, "duplicate feature '" + it->first + "'");
          return;
        }
      }
    }
    tok.head = *head;
    tok.deprel = normalize_deprel(cols[7]);
    tok.deps = field(cols[8]);
    auto [space_after, rest] = split_misc(cols[9]);
    tok.space_after = space_after;
    tok.misc = std::move(rest);
    block_.sentence.tokens.push_back(std::move(tok));
  }

  std::optional<std::string> check_structure(const ParsedSentence& s) const {
    const int n = s.size();
    for (int i = 0; i < n; ++i) {
      if (s.tokens[i].index != i + 1) return "token indices are not contiguous from 1";
    }
    int roots = 0;
    for (const auto& t : s.tokens) {
      if (t.head > n) return "head " + std::to_string(t.head) + " of token " + std::to_string(t.index) + " out of range";
      if (t.head == t.index) return "token " + std::to_string(t.index) + " is its own head";
      if ((t.head == 0) != (t.deprel == "root"))
        return "token " + std::to_string(t.index) + ": head 0 must coincide with deprel root";
      if (t.head == 0) ++roots;
    }
    if (roots == 0) return "sentence has no root";
    if (roots > 1) return "sentence has " + std::to_string(roots) + " roots";
    // Every token must reach the root without cycles.
    for (const auto& t : s.tokens) {
      int cur = t.index;
      for (int steps = 0; cur != 0; ++steps) {
        if (steps > n) return "dependency cycle through token " + std::to_string(t.index);
        cur = s.at(cur).head;
      }
    }
    for (const auto& m : s.multiword) {
      if (m.last > n) return "multiword token range exceeds sentence length";
    }
    return std::nullopt;
  }

  void finish() {
    if (!block_.has_lines) {
      pending_mwt_space_.clear();
      return;
    }
    ParsedSentence& s = block_.sentence;
    bool is_sentence = !s.tokens.empty() || block_.broken;
    if (is_sentence && !block_.broken) {
      if (auto err = check_structure(s)) {
        result_.diagnostics.push_back({source_, block_.first_line, *err});
        block_.broken = true;
      }
    }
    if (is_sentence) {
      if (!block_.broken) {
        for (const auto& m : s.multiword) {
          for (int i = m.first; i < m.last; ++i) s.at(i).space_after = false;
        }
        for (auto [last, space] : pending_mwt_space_) s.at(last).space_after = space;
        s.doc_id = doc_id_.empty() ? source_ : doc_id_;
        s.section_index = section_;
        s.sent_index = sent_;
        result_.sentences.push_back(std::move(s));
      }
      ++sent_;
    }
    block_ = Block{};
    pending_mwt_space_.clear();
  }

  std::string source_;
  ParseResult result_;
  Block block_;
  std::vector<std::pair<int, bool>> pending_mwt_space_;
  std::string doc_id_;
  int doc_counter_ = 0;
  int section_ = 0;
  int sent_ = 0;
};

}  // namespace

std::string Token::feat(const std::string& key) const {
  auto it = feats.find(key);
  return it == feats.end() ? std::string() : it->second;
}

int ParsedSentence::root() const {
  for (const auto& t : tokens) {
    if (t.head == 0) return t.index;
  }
  return 0;
}

std::vector<int> ParsedSentence::children(int head) const {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t.head == head) out.push_back(t.index);
  }
  return out;
}

bool ParsedSentence::dominates(int ancestor, int index) const {
  for (int cur = index, steps = 0; cur != 0 && steps <= size(); ++steps) {
    if (cur == ancestor) return true;
    cur = at(cur).head;
  }
  return false;
}

const MultiwordToken* ParsedSentence::multiword_containing(int index) const {
  for (const auto& m : multiword) {
    if (m.first <= index && index <= m.last) return &m;
  }
  return nullptr;
}

std::optional<std::string> ParsedSentence::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string format_diagnostic(const Diagnostic& d) {
  return d.source + ":" + std::to_string(d.line) + ": " + d.message;
}

ParseResult parse_conllu(std::string_view text, std::string_view source) {
  Reader reader(source);
  int lineno = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    reader.line(text.substr(start, end - start), ++lineno);
    start = end + 1;
  }
  return reader.done();
}

ParseResult parse_conllu(std::istream& in, std::string_view source) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_conllu(std::string_view(text), source);
}

std::string detokenize(const ParsedSentence& sentence) {
  std::string out;
  const int n = sentence.size();
  for (int i = 1; i <= n;) {
    const MultiwordToken* mwt = nullptr;
    for (const auto& m : sentence.multiword) {
      if (m.first == i) mwt = &m;
    }
    int last = mwt ? mwt->last : i;
    out += mwt ? mwt->form : sentence.at(i).form;
    if (last < n && sentence.at(last).space_after) out += ' ';
    i = last + 1;
  }
  return out;
}

std::string write_conllu(const ParsedSentence& sentence) {
  std::ostringstream out;
  for (const auto& [k, v] : sentence.metadata) {
    out << "# " << k;
    if (!v.empty()) out << " = " << v;
    out << '\n';
  }
  out << "# text = " << detokenize(sentence) << '\n';
  auto col = [](const std::string& s) { return s.empty() ? std::string("_") : s; };
  for (const auto& t : sentence.tokens) {
    const MultiwordToken* mwt = nullptr;
    for (const auto& m : sentence.multiword) {
      if (m.first == t.index) mwt = &m;
    }
    if (mwt) {
      bool space = sentence.at(mwt->last).space_after;
      out << mwt->first << '-' << mwt->last << '\t' << mwt->form << "\t_\t_\t_\t_\t_\t_\t_\t"
          << (space ? "_" : "SpaceAfter=No") << '\n';
    }
    std::string feats;
    for (const auto& [k, v] : t.feats) {
      if (!feats.empty()) feats += '|';
      feats += k + "=" + v;
    }
    std::string misc = t.misc;
    bool in_mwt = sentence.multiword_containing(t.index) != nullptr;
    if (!t.space_after && !in_mwt) misc = misc.empty() ? "SpaceAfter=No" : misc + "|SpaceAfter=No";
    out << t.index << '\t' << t.form << '\t' << col(t.lemma) << '\t' << col(t.upos) << '\t'
        << col(t.xpos) << '\t' << col(feats) << '\t' << t.head << '\t' << t.deprel << '\t'
        << col(t.deps) << '\t' << col(misc) << '\n';
  }
  out << '\n';
  return out.str();
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  });
  return out;
}

}  // namespace negata
