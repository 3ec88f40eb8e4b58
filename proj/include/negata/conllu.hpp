// CoNLL-U reader/writer and surface realization for dependency-parsed text.

#ifndef NEGATA_CONLLU_HPP_
#define NEGATA_CONLLU_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace negata {

// Dependency label used internally for passive auxiliaries. Both the
// classic `auxpass` and the UD v2 `aux:pass` spellings map onto it.
inline constexpr std::string_view kAuxPass = "aux:pass";

using Features = std::map<std::string, std::string>;

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  Features feats;
  int head = 0;  // 0 = attached to the virtual root
  std::string deprel;
  std::string deps;
  std::string misc;  // MISC column without the SpaceAfter entry
  bool space_after = true;

  std::string feat(const std::string& key) const;
  bool is_aux_relation() const { return deprel == "aux" || deprel == kAuxPass; }
};

// A surface token spanning several syntactic words, e.g. "didn't" -> did n't.
struct MultiwordToken {
  int first = 0;
  int last = 0;
  std::string form;
};

struct ParsedSentence {
  std::vector<Token> tokens;
  std::vector<MultiwordToken> multiword;
  std::string doc_id;
  int section_index = 0;
  int sent_index = 0;
  std::optional<std::string> raw_text;
  // Comment lines other than text/newdoc/newpar, in input order.
  std::vector<std::pair<std::string, std::string>> metadata;

  int size() const { return static_cast<int>(tokens.size()); }
  // 1-based access.
  const Token& at(int index) const { return tokens.at(index - 1); }
  Token& at(int index) { return tokens.at(index - 1); }
  // Index of the root token, 0 if none.
  int root() const;
  std::vector<int> children(int head) const;
  // True if `index` lies in the subtree rooted at `ancestor`.
  bool dominates(int ancestor, int index) const;
  const MultiwordToken* multiword_containing(int index) const;
  std::optional<std::string> meta(std::string_view key) const;
};

struct Diagnostic {
  std::string source;
  int line = 0;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

struct ParseResult {
  std::vector<ParsedSentence> sentences;
  std::vector<Diagnostic> diagnostics;
};

// Reads a CoNLL-U stream. `# newdoc` starts a document, `# newpar` a new
// section. Sentences with malformed lines or a broken tree are skipped and
// reported in `diagnostics`; they still consume a sentence index so that
// consecutive indices always mean adjacent sentences. Input without any
// `# newdoc id` is treated as a single document named `source`.
ParseResult parse_conllu(std::string_view text, std::string_view source = "<input>");
ParseResult parse_conllu(std::istream& in, std::string_view source = "<input>");

// Joins forms using the SpaceAfter flags; multiword tokens are emitted with
// their surface form.
std::string detokenize(const ParsedSentence& sentence);

// Serializes one sentence as a CoNLL-U block (terminated by a blank line).
std::string write_conllu(const ParsedSentence& sentence);

// Lowercases ASCII letters; other bytes pass through.
std::string ascii_lower(std::string_view s);

}  // namespace negata

#endif  // NEGATA_CONLLU_HPP_
