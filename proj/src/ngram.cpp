#include "semnet/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semnet/error.hpp"

namespace semnet {

namespace {

struct CountGroup {
  std::uint64_t value;
  std::uint64_t multiplicity;
};

// Skewness of a multiset given as (value, multiplicity) groups; same estimator
// as stats::skewness, two-pass over the groups.
double grouped_skewness(std::span<const CountGroup> groups) {
  double n = 0.0, sum = 0.0;
  for (const auto& g : groups) {
    n += static_cast<double>(g.multiplicity);
    sum += static_cast<double>(g.multiplicity) * static_cast<double>(g.value);
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto& g : groups) {
    const double d = static_cast<double>(g.value) - mean;
    ss += static_cast<double>(g.multiplicity) * d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  double cubes = 0.0;
  for (const auto& g : groups) {
    const double z = (static_cast<double>(g.value) - mean) / sd;
    cubes += static_cast<double>(g.multiplicity) * z * z * z;
  }
  return n / ((n - 1.0) * (n - 2.0)) * cubes;
}

}  // namespace

std::string_view pair_mode_name(PairMode m) { return m == PairMode::Bigram ? "bigram" : "skipgram"; }

std::string_view pair_order_name(PairOrder o) {
  return o == PairOrder::StopwordsFirst ? "stopwords-first" : "pairs-first";
}

PairCounts::PairCounts(PairMode mode, std::size_t max_skip, bool allow_self_pairs)
    : mode_(mode), max_skip_(max_skip), allow_self_pairs_(allow_self_pairs) {
  if (mode == PairMode::Bigram && max_skip != 0) throw_usage("bigram mode requires max_skip = 0");
}

void PairCounts::add(std::string_view a, std::string_view b, std::uint64_t n) {
  if (n == 0) return;
  if (a == b && !allow_self_pairs_) return;
  if (b < a) std::swap(a, b);
  counts_[Key{std::string(a), std::string(b)}] += n;
}

void PairCounts::merge(const PairCounts& other) {
  for (const auto& [key, n] : other.counts_) add(key.first, key.second, n);
}

std::uint64_t PairCounts::count(std::string_view a, std::string_view b) const {
  if (b < a) std::swap(a, b);
  auto it = counts_.find(Key{std::string(a), std::string(b)});
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t PairCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& kv : counts_) t += kv.second;
  return t;
}

std::uint64_t PairCounts::max_count() const {
  std::uint64_t m = 0;
  for (const auto& kv : counts_) m = std::max(m, kv.second);
  return m;
}

void accumulate_pairs(PairCounts& into, std::span<const std::string> lemmas) {
  const std::size_t reach = into.max_skip() + 1;
  for (std::size_t i = 0; i < lemmas.size(); ++i)
    for (std::size_t j = i + 1; j < lemmas.size() && j - i <= reach; ++j) into.add(lemmas[i], lemmas[j]);
}

void accumulate_pairs_then_drop(PairCounts& into, std::span<const std::string> lemmas,
                                std::span<const bool> is_stopword) {
  if (is_stopword.size() != lemmas.size()) throw_usage("stopword mask length does not match the sequence");
  const std::size_t reach = into.max_skip() + 1;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    if (is_stopword[i]) continue;
    for (std::size_t j = i + 1; j < lemmas.size() && j - i <= reach; ++j)
      if (!is_stopword[j]) into.add(lemmas[i], lemmas[j]);
  }
}

PairCounts extract_pairs(std::span<const std::string> lemmas, PairMode mode, std::size_t max_skip,
                         bool allow_self_pairs) {
  PairCounts pc(mode, max_skip, allow_self_pairs);
  accumulate_pairs(pc, lemmas);
  return pc;
}

ThresholdScan threshold_scan(const PairCounts& pc, double epsilon, std::size_t window) {
  if (pc.empty()) throw_usage("threshold scan needs at least one pair");
  if (!(epsilon > 0.0)) throw_usage("epsilon must be positive");
  if (window == 0) throw_usage("window must be at least 1");

  ThresholdScan scan;
  scan.epsilon = epsilon;
  scan.window = window;

  std::map<std::uint64_t, std::uint64_t> histogram;
  for (const auto& kv : pc.counts()) ++histogram[kv.second];
  std::vector<CountGroup> groups;
  for (const auto& [value, mult] : histogram) groups.push_back({value, mult});

  if (groups.size() < 3) {
    scan.degenerate = true;
    scan.chosen_v = 1;
    return scan;
  }

  // v runs up to the third-largest distinct count; beyond it fewer than three remain.
  const std::uint64_t last_v = groups[groups.size() - 3].value;
  std::size_t first_group = 0;
  std::size_t surviving = pc.size();
  double skew = grouped_skewness(groups);
  for (std::uint64_t v = 1; v <= last_v; ++v) {
    bool changed = false;
    while (groups[first_group].value < v) {
      surviving -= groups[first_group].multiplicity;
      ++first_group;
      changed = true;
    }
    if (changed) skew = grouped_skewness(std::span<const CountGroup>(groups).subspan(first_group));
    scan.points.push_back({v, skew, surviving});
  }

  const std::size_t k = scan.points.size();
  if (k < 2) {
    scan.chosen_v = scan.points.front().v;
    return scan;
  }
  std::vector<double> delta(k - 1);
  for (std::size_t u = 0; u + 1 < k; ++u) delta[u] = std::fabs(scan.points[u + 1].skew - scan.points[u].skew);

  const double tolerance = epsilon * std::fabs(scan.points.front().skew);
  auto variation = [&](std::size_t start) {
    double worst = 0.0;
    for (std::size_t u = start; u < std::min(start + window, delta.size()); ++u) worst = std::max(worst, delta[u]);
    return worst;
  };

  const bool any_full = delta.size() >= window;
  const std::size_t full_starts = any_full ? delta.size() - window + 1 : 0;
  for (std::size_t s = 0; s < full_starts; ++s) {
    if (variation(s) <= tolerance) {
      scan.chosen_v = scan.points[s].v;
      return scan;
    }
  }

  scan.stabilized = false;
  const std::size_t candidates = any_full ? full_starts : delta.size();
  std::size_t best = 0;
  double best_var = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < candidates; ++s) {
    const double var = variation(s);
    if (var < best_var) {
      best_var = var;
      best = s;
    }
  }
  scan.chosen_v = scan.points[best].v;
  return scan;
}

PairCounts apply_threshold(const PairCounts& pc, std::uint64_t v) {
  if (v == 0) throw_usage("threshold must be at least 1");
  PairCounts out(pc.mode(), pc.max_skip(), pc.allow_self_pairs());
  for (const auto& [key, n] : pc.counts())
    if (n >= v) out.add(key.first, key.second, n);
  return out;
}

void write_pairs_csv(const PairCounts& pc, std::ostream& out) {
  std::vector<const std::pair<const PairCounts::Key, std::uint64_t>*> rows;
  rows.reserve(pc.size());
  for (const auto& kv : pc.counts()) rows.push_back(&kv);
  std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->second > b->second; });
  out << "word1,word2,count\n";
  for (const auto* kv : rows) out << kv->first.first << ',' << kv->first.second << ',' << kv->second << '\n';
}

}  // namespace semnet
