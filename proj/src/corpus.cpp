#include "semnet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "semnet/error.hpp"

namespace semnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fold_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string where(const fs::path& file, std::size_t line) {
  return file.string() + ":" + std::to_string(line) + ": ";
}

void parse_file(const fs::path& file, std::vector<Document>& out, std::unordered_set<std::string>& seen) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw_io("cannot read " + file.string());

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw_data(where(file, lineno) + "malformed JSON record: " + e.what());
    }
    if (!rec.is_object()) throw_data(where(file, lineno) + "record is not a JSON object");

    Document doc;
    auto id = rec.find("id");
    if (id == rec.end() || !id->is_string() || id->get_ref<const std::string&>().empty())
      throw_data(where(file, lineno) + "missing or empty \"id\"");
    doc.id = id->get<std::string>();

    auto string_field = [&](const char* key) -> std::optional<std::string> {
      auto it = rec.find(key);
      if (it == rec.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) throw_data(where(file, lineno) + "field \"" + key + "\" must be a string or null");
      return it->get<std::string>();
    };

    doc.title = string_field("title").value_or("");
    doc.text = string_field("text").value_or("");
    doc.skipped = doc.text.empty();

    if (auto s = string_field("subcase")) {
      auto parsed = parse_subcase(*s);
      if (!parsed) throw_data(where(file, lineno) + "unknown subcase \"" + *s + "\"");
      doc.subcase = *parsed;
    }
    if (auto r = string_field("role")) {
      auto parsed = parse_role(*r);
      if (!parsed) throw_data(where(file, lineno) + "unknown role \"" + *r + "\"");
      doc.role = *parsed;
    }

    if (!seen.insert(doc.id).second) throw_data(where(file, lineno) + "duplicate document id \"" + doc.id + "\"");
    out.push_back(std::move(doc));
  }
}

}  // namespace

std::string_view subcase_name(Subcase s) {
  switch (s) {
    case Subcase::Antioquia: return "Antioquia";
    case Subcase::Casanare: return "Casanare";
    case Subcase::CostaCaribe: return "Costa Caribe";
    case Subcase::Huila: return "Huila";
    case Subcase::Meta: return "Meta";
    case Subcase::NorteDeSantander: return "Norte de Santander";
    case Subcase::Unassigned: return "Unassigned";
  }
  return "Unassigned";
}

std::optional<Subcase> parse_subcase(std::string_view text) {
  const std::string key = fold_ascii(text);
  for (Subcase s : kRegions)
    if (fold_ascii(subcase_name(s)) == key) return s;
  if (key == "unassigned") return Subcase::Unassigned;
  return std::nullopt;
}

std::string_view role_wire_name(Role r) {
  switch (r) {
    case Role::Victim: return "victima";
    case Role::Appearer: return "compareciente";
    case Role::Unknown: return "";
  }
  return "";
}

std::optional<Role> parse_role(std::string_view text) {
  if (text == "victima" || text == "víctima") return Role::Victim;
  if (text == "compareciente") return Role::Appearer;
  return std::nullopt;
}

Corpus::Corpus(std::vector<Document> documents, std::string source_path)
    : documents_(std::move(documents)), source_path_(std::move(source_path)) {
  std::unordered_set<std::string> ids;
  for (const auto& d : documents_) {
    if (d.id.empty()) throw_data("document with empty id");
    if (!ids.insert(d.id).second) throw_data("duplicate document id \"" + d.id + "\"");
  }
}

std::size_t Corpus::count(std::optional<Subcase> subcase, std::optional<Role> role) const {
  return static_cast<std::size_t>(std::count_if(documents_.begin(), documents_.end(), [&](const Document& d) {
    return (!subcase || d.subcase == *subcase) && (!role || d.role == *role);
  }));
}

const Document* Corpus::find(std::string_view id) const {
  auto it = std::find_if(documents_.begin(), documents_.end(), [&](const Document& d) { return d.id == id; });
  return it == documents_.end() ? nullptr : &*it;
}

Corpus load_corpus(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw_io("corpus path does not exist: " + path.string());

  std::vector<fs::path> files;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      const auto ext = entry.path().extension();
      if (ext == ".jsonl" || ext == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }

  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for (const auto& f : files) parse_file(f, docs, seen);
  return Corpus(std::move(docs), path.string());
}

void save_corpus(const Corpus& corpus, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_io("cannot write " + path.string());
  for (const auto& d : corpus.documents()) {
    json rec = json::object();
    rec["id"] = d.id;
    rec["title"] = d.title;
    rec["subcase"] = d.subcase == Subcase::Unassigned ? json(nullptr) : json(std::string(subcase_name(d.subcase)));
    rec["role"] = d.role == Role::Unknown ? json(nullptr) : json(std::string(role_wire_name(d.role)));
    rec["text"] = d.text;
    out << rec.dump() << '\n';
  }
  if (!out) throw_io("write failed: " + path.string());
}

Corpus filter_corpus(const Corpus& corpus, std::optional<Subcase> subcase, std::optional<Role> role) {
  std::vector<Document> kept;
  for (const auto& d : corpus.documents())
    if ((!subcase || d.subcase == *subcase) && (!role || d.role == *role)) kept.push_back(d);
  return Corpus(std::move(kept), corpus.source_path());
}

std::vector<EligibilityCell> role_analysis_eligibility(const Corpus& corpus, std::size_t min_docs) {
  if (min_docs == 0) throw_usage("min_docs must be positive");
  std::vector<std::optional<Subcase>> rows{std::nullopt};
  for (Subcase s : kRegions) rows.emplace_back(s);

  std::vector<EligibilityCell> cells;
  for (const auto& row : rows) {
    for (Role role : {Role::Appearer, Role::Victim}) {
      EligibilityCell cell;
      cell.subcase = row;
      cell.role = role;
      cell.count = corpus.count(row, role);
      cell.eligible = cell.count >= min_docs;
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace semnet
