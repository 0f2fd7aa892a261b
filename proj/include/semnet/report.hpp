#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "semnet/corpus.hpp"
#include "semnet/pipeline.hpp"

namespace semnet {

using Json = nlohmann::json;

inline constexpr int kReportVersion = 1;

/// Rounds to 6 significant digits through the decimal text form, so the value
/// printed in the report is the value stored.
double round_sig6(double x);

Json config_to_json(const AnalysisConfig& config);
Json bundle_to_json(const ReportBundle& bundle);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string dump_report(const Json& report);
Json load_report(const std::filesystem::path& path);

struct ExportOptions {
  bool csv = true;
  bool dot = true;
  bool graphml = true;
};

/// Writes report.json plus the CSV and graph files derived from it. Returns
/// the written paths in creation order.
std::vector<std::filesystem::path> export_bundle(const Json& report, const std::filesystem::path& dir,
                                                 const ExportOptions& options = {});

/// `<scope>_<mode>_pairs.csv` for every network that kept its pair counts.
std::vector<std::filesystem::path> export_pairs(const ReportBundle& bundle, const std::filesystem::path& dir);

std::string summary_text(const Json& report);
std::string inspect_text(const Corpus& corpus, std::size_t min_docs);

}  // namespace semnet
