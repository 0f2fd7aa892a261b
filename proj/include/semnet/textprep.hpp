#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace semnet {

enum class Upos { Noun, Verb, Adj, Other };

std::string_view upos_name(Upos u);
std::optional<Upos> parse_upos(std::string_view text);

struct Token {
  std::string surface;
  std::size_t position = 0;

  bool operator==(const Token&) const = default;
};

struct LemmaItem {
  std::string lemma;
  Upos upos = Upos::Other;

  bool operator==(const LemmaItem&) const = default;
};

struct LemmaSequence {
  std::string doc_id;
  std::vector<LemmaItem> items;

  bool operator==(const LemmaSequence&) const = default;
};

struct NormalizeOptions {
  bool fold_diacritics = false;  // strip vowel accents for degraded transcripts
};

// Surface form -> (lemma, UPOS). Stands in for a statistical tagger; a
// tagger's dictionary can be exported to the same TSV layout.
class LemmaLexicon {
 public:
  /// TSV `surface<TAB>lemma<TAB>upos`; blank lines and `#` comments skipped.
  /// Surfaces are normalized on load so keys match tokenizer output.
  static LemmaLexicon load(const std::filesystem::path& path, NormalizeOptions options = {});

  void add(std::string_view surface, std::string lemma, Upos upos, NormalizeOptions options = {});
  const LemmaItem* lookup(std::string_view surface) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, LemmaItem> entries_;
};

using Stoplist = std::unordered_set<std::string>;

/// One word per line, `#` starts a comment. Entries are normalized.
Stoplist load_stoplist(const std::filesystem::path& path, NormalizeOptions options = {});

/// Lowercases, turns punctuation and digit runs into single spaces and
/// collapses whitespace. Accented letters are kept unless folding is asked for.
std::string normalize(std::string_view text, NormalizeOptions options = {});

std::vector<Token> tokenize(std::string_view normalized);

/// Drops stoplisted tokens and renumbers the survivors from 0.
std::vector<Token> remove_stopwords(std::vector<Token> tokens, const Stoplist& stoplist);

struct LemmatizeStats {
  std::size_t tokens = 0;
  std::size_t unknown = 0;

  double unknown_rate() const { return tokens == 0 ? 0.0 : static_cast<double>(unknown) / static_cast<double>(tokens); }
};

/// Unknown surfaces pass through as their own lemma tagged Other.
LemmaSequence lemmatize(std::span<const Token> tokens, const LemmaLexicon& lexicon, std::string doc_id = {},
                        LemmatizeStats* stats = nullptr);

}  // namespace semnet
