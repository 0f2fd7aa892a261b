#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semnet {

enum class Subcase { Antioquia, Casanare, CostaCaribe, Huila, Meta, NorteDeSantander, Unassigned };
enum class Role { Victim, Appearer, Unknown };

inline constexpr std::array<Subcase, 6> kRegions = {
    Subcase::Antioquia, Subcase::Casanare,         Subcase::CostaCaribe,
    Subcase::Huila,     Subcase::Meta,             Subcase::NorteDeSantander,
};

/// Display name used in transcript files and reports ("Costa Caribe").
std::string_view subcase_name(Subcase s);
/// Accepts display names and the compact identifiers ("CostaCaribe"), case-insensitive.
std::optional<Subcase> parse_subcase(std::string_view text);

/// Wire value for the transcript format: "victima", "compareciente", or "" for Unknown.
std::string_view role_wire_name(Role r);
std::optional<Role> parse_role(std::string_view text);

struct Document {
  std::string id;
  std::string title;
  Subcase subcase = Subcase::Unassigned;
  Role role = Role::Unknown;
  std::string text;
  bool skipped = false;  // set when the transcript text is empty

  bool operator==(const Document&) const = default;
};

class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Document> documents, std::string source_path);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const std::string& source_path() const noexcept { return source_path_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }

  std::size_t count(std::optional<Subcase> subcase, std::optional<Role> role) const;
  const Document* find(std::string_view id) const;

  bool operator==(const Corpus& other) const { return documents_ == other.documents_; }

 private:
  std::vector<Document> documents_;
  std::string source_path_;
};

/// Loads a JSON-lines file, or every *.jsonl / *.json file of a directory in
/// filename order. Malformed records raise a data error naming file and line.
Corpus load_corpus(const std::filesystem::path& path);

/// Writes the corpus back in the transcript format, one record per line.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

Corpus filter_corpus(const Corpus& corpus, std::optional<Subcase> subcase, std::optional<Role> role);

struct EligibilityCell {
  std::optional<Subcase> subcase;  // nullopt is the whole corpus ("General")
  Role role = Role::Unknown;
  std::size_t count = 0;
  bool eligible = false;
};

/// One cell per (General + six regions) x {Appearer, Victim}.
std::vector<EligibilityCell> role_analysis_eligibility(const Corpus& corpus, std::size_t min_docs = 3);

}  // namespace semnet
