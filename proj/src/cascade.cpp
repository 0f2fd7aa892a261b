#include "semnet/cascade.hpp"

#include <algorithm>
#include <vector>

#include "semnet/error.hpp"

namespace semnet::stats {

std::string_view metric_name(SentimentMetric m) {
  return m == SentimentMetric::MeanMagnitude ? "mean_magnitude" : "proportion";
}

const TestResult* CascadeDecision::main() const {
  if (!chosen) return nullptr;
  if (*chosen == TestMethod::PairedT) return paired_t ? &*paired_t : nullptr;
  return wilcoxon ? &*wilcoxon : nullptr;
}

CascadeDecision sentiment_cascade(std::span<const SentimentSummary> summaries, SentimentMetric metric, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw_usage("alpha must lie in (0, 1)");

  std::vector<double> neg, pos;
  for (const auto& s : summaries) {
    if (!s.scored()) continue;
    if (metric == SentimentMetric::MeanMagnitude) {
      if (!s.mean_neg || !s.mean_pos) continue;
      neg.push_back(*s.mean_neg);
      pos.push_back(*s.mean_pos);
    } else {
      neg.push_back(s.prop_neg);
      pos.push_back(s.prop_pos);
    }
  }

  CascadeDecision out;
  out.metric = metric;
  out.alpha = alpha;
  out.n_pairs = neg.size();
  if (neg.size() < 3)
    throw_data("sentiment cascade needs at least 3 scored documents, got " + std::to_string(neg.size()));

  std::vector<double> diff(neg.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = neg[i] - pos[i];
  if (std::all_of(diff.begin(), diff.end(), [](double d) { return d == 0.0; })) {
    out.degenerate = true;
    out.note = "all paired differences are zero";
    return out;
  }

  try {
    out.normality = shapiro_wilk(diff);
  } catch (const Error& e) {
    out.note = std::string("normality not assessable: ") + e.what();
  }
  try {
    out.paired_t = paired_t_test(neg, pos, Alternative::Greater);
  } catch (const Error&) {
  }
  out.wilcoxon = wilcoxon_signed_rank(neg, pos, Alternative::Greater);

  const bool normal = out.normality && out.normality->p_value > alpha;
  if (normal && out.paired_t) {
    out.chosen = TestMethod::PairedT;
  } else {
    out.chosen = TestMethod::WilcoxonSignedRank;
  }
  out.reject_null = out.main()->p_value < alpha;
  return out;
}

}  // namespace semnet::stats
