#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "semnet/sentiment.hpp"
#include "semnet/stats.hpp"

namespace semnet::stats {

enum class SentimentMetric { MeanMagnitude, Proportion };

std::string_view metric_name(SentimentMetric m);

// Normality-gated paired comparison of negative against positive sentiment
// per document. H1 is one-sided: the negative side exceeds the positive side.
struct CascadeDecision {
  SentimentMetric metric = SentimentMetric::MeanMagnitude;
  double alpha = 0.05;
  std::size_t n_pairs = 0;
  std::optional<TestResult> normality;  // Shapiro-Wilk on negative - positive
  // Both branches are evaluated whenever they are defined so the report can
  // show what a different gate level would have chosen.
  std::optional<TestResult> paired_t;
  std::optional<TestResult> wilcoxon;
  std::optional<TestMethod> chosen;
  bool reject_null = false;
  bool degenerate = false;
  std::string note;

  const TestResult* main() const;
};

/// MeanMagnitude pairs (mean_neg, mean_pos) over documents where both are
/// defined; Proportion pairs (prop_neg, prop_pos) over all scored documents.
/// Fewer than 3 usable documents is a data error.
CascadeDecision sentiment_cascade(std::span<const SentimentSummary> summaries, SentimentMetric metric,
                                  double alpha = 0.05);

}  // namespace semnet::stats
