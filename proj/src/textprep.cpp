#include "semnet/textprep.hpp"

#include <fstream>

#include "semnet/error.hpp"

namespace semnet {

namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at s[i]; advances i. Malformed input yields kInvalid.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i++]);
  if (b0 < 0x80) return b0;

  int extra = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    return kInvalid;
  }
  for (int k = 0; k < extra; ++k) {
    if (i >= s.size()) return kInvalid;
    const auto b = static_cast<unsigned char>(s[i]);
    if ((b & 0xC0) != 0x80) return kInvalid;
    cp = (cp << 6) | (b & 0x3F);
    ++i;
  }
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_separator(char32_t cp) {
  if (cp == kInvalid) return true;
  if (cp < 0x80) return !((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'));
  if (cp < 0xC0) return true;  // C1 controls, Latin-1 punctuation and signs
  if (cp == 0xD7 || cp == 0xF7) return true;
  if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation
  if (cp >= 0x20A0 && cp <= 0x20CF) return true;  // currency
  if (cp == 0x3000 || cp == 0xFEFF) return true;
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) return (cp % 2 == 0) ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  return cp;
}

char32_t fold(char32_t cp) {
  if (cp >= 0xE0 && cp <= 0xE5) return 'a';
  if (cp >= 0xE8 && cp <= 0xEB) return 'e';
  if (cp >= 0xEC && cp <= 0xEF) return 'i';
  if ((cp >= 0xF2 && cp <= 0xF6) || cp == 0xF8) return 'o';
  if (cp >= 0xF9 && cp <= 0xFC) return 'u';
  if (cp == 0xFD || cp == 0xFF) return 'y';
  if (cp == 0xE7) return 'c';
  return cp;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view upos_name(Upos u) {
  switch (u) {
    case Upos::Noun: return "NOUN";
    case Upos::Verb: return "VERB";
    case Upos::Adj: return "ADJ";
    case Upos::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<Upos> parse_upos(std::string_view text) {
  if (text == "NOUN" || text == "PROPN") return Upos::Noun;
  if (text == "VERB" || text == "AUX") return Upos::Verb;
  if (text == "ADJ") return Upos::Adj;
  if (text == "OTHER" || text == "ADV" || text == "X") return Upos::Other;
  return std::nullopt;
}

std::string normalize(std::string_view text, NormalizeOptions options) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = decode_utf8(text, i);
    if (is_separator(cp)) {
      pending_space = !out.empty();
      continue;
    }
    cp = to_lower(cp);
    if (options.fold_diacritics) cp = fold(cp);
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    encode_utf8(cp, out);
  }
  return out;
}

std::vector<Token> tokenize(std::string_view normalized) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const auto start = normalized.find_first_not_of(" \t\r\n", pos);
    if (start == std::string_view::npos) break;
    auto end = normalized.find_first_of(" \t\r\n", start);
    if (end == std::string_view::npos) end = normalized.size();
    tokens.push_back(Token{std::string(normalized.substr(start, end - start)), tokens.size()});
    pos = end;
  }
  return tokens;
}

std::vector<Token> remove_stopwords(std::vector<Token> tokens, const Stoplist& stoplist) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (auto& t : tokens) {
    if (stoplist.contains(t.surface)) continue;
    t.position = kept.size();
    kept.push_back(std::move(t));
  }
  return kept;
}

LemmaSequence lemmatize(std::span<const Token> tokens, const LemmaLexicon& lexicon, std::string doc_id,
                        LemmatizeStats* stats) {
  LemmaSequence seq;
  seq.doc_id = std::move(doc_id);
  seq.items.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (const LemmaItem* hit = lexicon.lookup(t.surface)) {
      seq.items.push_back(*hit);
    } else {
      seq.items.push_back(LemmaItem{t.surface, Upos::Other});
      if (stats) ++stats->unknown;
    }
  }
  if (stats) stats->tokens += tokens.size();
  return seq;
}

void LemmaLexicon::add(std::string_view surface, std::string lemma, Upos upos, NormalizeOptions options) {
  entries_.insert_or_assign(normalize(surface, options), LemmaItem{std::move(lemma), upos});
}

const LemmaItem* LemmaLexicon::lookup(std::string_view surface) const {
  auto it = entries_.find(std::string(surface));
  return it == entries_.end() ? nullptr : &it->second;
}

LemmaLexicon LemmaLexicon::load(const std::filesystem::path& path, NormalizeOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot read lemma lexicon " + path.string());
  LemmaLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto t1 = body.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : body.find('\t', t1 + 1);
    if (t2 == std::string_view::npos)
      throw_data(path.string() + ":" + std::to_string(lineno) + ": expected surface<TAB>lemma<TAB>upos");
    const auto surface = body.substr(0, t1);
    const auto lemma = normalize(body.substr(t1 + 1, t2 - t1 - 1), options);
    const auto upos = parse_upos(trim(body.substr(t2 + 1)));
    if (!upos) throw_data(path.string() + ":" + std::to_string(lineno) + ": unknown UPOS tag");
    if (normalize(surface, options).empty() || lemma.empty())
      throw_data(path.string() + ":" + std::to_string(lineno) + ": empty surface or lemma");
    lex.add(surface, lemma, *upos, options);
  }
  return lex;
}

Stoplist load_stoplist(const std::filesystem::path& path, NormalizeOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot read stopword list " + path.string());
  Stoplist stop;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    for (const auto& tok : tokenize(normalize(body, options))) stop.insert(tok.surface);
  }
  return stop;
}

}  // namespace semnet
