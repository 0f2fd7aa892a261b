#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace semnet::stats {

enum class Alternative { Greater, Less, TwoSided };
enum class TestMethod { ShapiroWilk, PairedT, WilcoxonSignedRank };

std::string_view alternative_name(Alternative a);
std::string_view method_name(TestMethod m);

struct TestResult {
  double statistic = 0.0;  // W, t, or V
  double p_value = 1.0;
  TestMethod method = TestMethod::PairedT;
  Alternative alternative = Alternative::TwoSided;
  std::size_t n = 0;  // sample size; nonzero differences for Wilcoxon
  bool exact = false;  // Wilcoxon p from the full sign-flip distribution
};

/// Adjusted Fisher-Pearson skewness with the (n-1) standard deviation.
/// Requires n >= 3 and nonzero variance.
double skewness(std::span<const double> x);

/// Royston's approximation for W and its p-value. 3 <= n <= 5000.
TestResult shapiro_wilk(std::span<const double> x);

/// t on d = x - y with n - 1 degrees of freedom.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y, Alternative alternative);

enum class WilcoxonMode { Auto, Exact, Normal };

/// V is the rank sum of positive differences; zeros are dropped and ties get
/// average ranks. Auto uses the exact distribution up to kWilcoxonExactMax
/// nonzero differences and a tie- and continuity-corrected normal beyond.
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y, Alternative alternative,
                                WilcoxonMode mode = WilcoxonMode::Auto);

inline constexpr std::size_t kWilcoxonExactMax = 25;

// Distribution helpers.
double normal_cdf(double z);
double normal_quantile(double p);
double regularized_incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
/// Upper tail P(T > t), computed directly so small tails keep full precision.
double student_t_sf(double t, double df);

}  // namespace semnet::stats
