#include "semnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "semnet/error.hpp"

namespace semnet::stats {

namespace {

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Horner evaluation of c[0] + c[1] x + ... as in the AS R94 reference code.
double poly(std::span<const double> c, double x) {
  double result = c[0];
  if (c.size() > 1) {
    double p = x * c[c.size() - 1];
    for (std::size_t j = c.size() - 2; j > 0; --j) p = (p + c[j]) * x;
    result += p;
  }
  return result;
}

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw_numeric("incomplete beta continued fraction did not converge");
}

double clamp_p(double p) { return std::clamp(p, 0.0, 1.0); }

void require_paired(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw_usage("paired samples differ in length (" + std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
}

}  // namespace

std::string_view alternative_name(Alternative a) {
  switch (a) {
    case Alternative::Greater: return "greater";
    case Alternative::Less: return "less";
    case Alternative::TwoSided: return "two-sided";
  }
  return "two-sided";
}

std::string_view method_name(TestMethod m) {
  switch (m) {
    case TestMethod::ShapiroWilk: return "shapiro-wilk";
    case TestMethod::PairedT: return "paired-t";
    case TestMethod::WilcoxonSignedRank: return "wilcoxon-signed-rank";
  }
  return "";
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw_numeric("normal quantile needs p in (0, 1)");
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw_numeric("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw_numeric("Student t needs df > 0");
  if (std::isnan(t)) throw_numeric("Student t tail of NaN");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? tail : 1.0 - tail;
}

double student_t_cdf(double t, double df) { return student_t_sf(-t, df); }

double skewness(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) throw_numeric("skewness needs at least 3 observations");
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw_numeric("skewness undefined for zero variance");
  double cubes = 0.0;
  for (double v : x) {
    const double z = (v - m) / sd;
    cubes += z * z * z;
  }
  const double dn = static_cast<double>(n);
  return dn / ((dn - 1.0) * (dn - 2.0)) * cubes;
}

TestResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) throw_numeric("Shapiro-Wilk needs 3 <= n <= 5000, got " + std::to_string(n));
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double range = x.back() - x.front();
  if (range < 1e-19 * std::max(1.0, std::fabs(x.front())))
    throw_numeric("Shapiro-Wilk undefined for a constant sample");

  static constexpr double g[] = {-2.273, 0.459};
  static constexpr double c1[] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr double c2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  static constexpr double c3[] = {0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr double c4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr double c5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr double c6[] = {-0.4803, -0.082676, 0.0030302};

  const double an = static_cast<double>(n);
  const std::size_t half = n / 2;
  // a[1..half] are the coefficients of the lower order statistics (negated sign).
  std::vector<double> a(half + 1, 0.0);
  if (n == 3) {
    a[1] = std::sqrt(0.5);
  } else {
    std::vector<double> m(half + 1);
    double summ2 = 0.0;
    for (std::size_t i = 1; i <= half; ++i) {
      m[i] = normal_quantile((static_cast<double>(i) - 0.375) / (an + 0.25));
      summ2 += m[i] * m[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - m[1] / ssumm2;
    std::size_t first = 2;
    double fac = 0.0;
    if (n > 5) {
      first = 3;
      const double a2 = -m[2] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * m[1] * m[1] - 2.0 * m[2] * m[2]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[2] = a2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1));
    }
    a[1] = a1;
    for (std::size_t i = first; i <= half; ++i) a[i] = -m[i] / fac;
  }

  // Coefficient of the i-th order statistic (0-based), antisymmetric about the middle.
  auto coef = [&](std::size_t i) -> double {
    const std::size_t j = n - 1 - i;
    if (i == j) return 0.0;
    return i < j ? -a[1 + i] : a[1 + j];
  };

  double sa = 0.0, sx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += coef(i);
    sx += x[i] / range;
  }
  sa /= an;
  sx /= an;
  double ssa = 0.0, ssx = 0.0, sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double asa = coef(i) - sa;
    const double xsx = x[i] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }
  // 1 - W, formed to avoid cancellation when W is close to 1.
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;

  TestResult r;
  r.statistic = w;
  r.method = TestMethod::ShapiroWilk;
  r.alternative = Alternative::TwoSided;
  r.n = n;

  if (n == 3) {
    constexpr double pi6 = 1.90985931710274;   // 6 / pi
    constexpr double stqr = 1.04719755119660;  // asin(sqrt(3/4))
    r.p_value = clamp_p(pi6 * (std::asin(std::sqrt(w)) - stqr));
    return r;
  }

  double y = std::log(w1);
  const double xx = std::log(an);
  double mu = 0.0, sigma = 0.0;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) {
      r.p_value = 1e-99;
      return r;
    }
    y = -std::log(gamma - y);
    mu = poly(c3, an);
    sigma = std::exp(poly(c4, an));
  } else {
    mu = poly(c5, xx);
    sigma = std::exp(poly(c6, xx));
  }
  r.p_value = clamp_p(normal_cdf(-(y - mu) / sigma));
  return r;
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y, Alternative alternative) {
  require_paired(x, y);
  const std::size_t n = x.size();
  if (n < 2) throw_numeric("paired t-test needs at least 2 pairs");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  const double dbar = mean(d);
  double ss = 0.0;
  for (double v : d) ss += (v - dbar) * (v - dbar);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw_numeric("paired t-test undefined: differences have zero variance");

  const double df = static_cast<double>(n - 1);
  const double t = dbar / (sd / std::sqrt(static_cast<double>(n)));
  TestResult r;
  r.statistic = t;
  r.method = TestMethod::PairedT;
  r.alternative = alternative;
  r.n = n;
  switch (alternative) {
    case Alternative::Greater: r.p_value = student_t_sf(t, df); break;
    case Alternative::Less: r.p_value = student_t_sf(-t, df); break;
    case Alternative::TwoSided: r.p_value = std::min(1.0, 2.0 * student_t_sf(std::fabs(t), df)); break;
  }
  r.p_value = clamp_p(r.p_value);
  return r;
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y, Alternative alternative,
                                WilcoxonMode mode) {
  require_paired(x, y);
  std::vector<double> d;
  d.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (const double v = x[i] - y[i]; v != 0.0) d.push_back(v);
  const std::size_t m = d.size();
  if (m == 0) throw_numeric("Wilcoxon signed-rank undefined: all differences are zero");

  // Doubled average ranks of |d| keep tied ranks integral.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return std::fabs(d[a]) < std::fabs(d[b]); });
  std::vector<std::uint64_t> rank2(m);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i;
    while (j + 1 < m && std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]])) ++j;
    const std::uint64_t r2 = (i + 1) + (j + 1);
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  std::uint64_t v2 = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (d[i] > 0.0) v2 += rank2[i];

  TestResult r;
  r.statistic = static_cast<double>(v2) / 2.0;
  r.method = TestMethod::WilcoxonSignedRank;
  r.alternative = alternative;
  r.n = m;

  const bool exact = mode == WilcoxonMode::Exact || (mode == WilcoxonMode::Auto && m <= kWilcoxonExactMax);
  if (exact) {
    if (m > 62) throw_numeric("exact Wilcoxon distribution limited to 62 nonzero differences");
    // counts[s] = number of the 2^m sign assignments whose doubled positive rank sum is s.
    const std::uint64_t total2 = static_cast<std::uint64_t>(m) * (m + 1);
    std::vector<std::uint64_t> counts(total2 + 1, 0);
    counts[0] = 1;
    std::uint64_t reach = 0;
    for (std::uint64_t r2 : rank2) {
      for (std::uint64_t s = reach + 1; s-- > 0;)
        if (counts[s] != 0) counts[s + r2] += counts[s];
      reach += r2;
    }
    std::uint64_t upper = 0, lower = 0;
    for (std::uint64_t s = 0; s <= total2; ++s) {
      if (s >= v2) upper += counts[s];
      if (s <= v2) lower += counts[s];
    }
    const double denom = std::ldexp(1.0, static_cast<int>(m));
    const double p_upper = static_cast<double>(upper) / denom;
    const double p_lower = static_cast<double>(lower) / denom;
    switch (alternative) {
      case Alternative::Greater: r.p_value = p_upper; break;
      case Alternative::Less: r.p_value = p_lower; break;
      case Alternative::TwoSided: r.p_value = std::min(1.0, 2.0 * std::min(p_upper, p_lower)); break;
    }
    r.exact = true;
    return r;
  }

  const double dm = static_cast<double>(m);
  const double mu = dm * (dm + 1.0) / 4.0;
  const double var = dm * (dm + 1.0) * (2.0 * dm + 1.0) / 24.0 - tie_term / 48.0;
  const double sigma = std::sqrt(var);
  const double v = r.statistic;
  switch (alternative) {
    case Alternative::Greater: r.p_value = normal_cdf(-(v - mu - 0.5) / sigma); break;
    case Alternative::Less: r.p_value = normal_cdf((v - mu + 0.5) / sigma); break;
    case Alternative::TwoSided: {
      const double diff = v - mu;
      const double corr = diff > 0.0 ? 0.5 : (diff < 0.0 ? -0.5 : 0.0);
      const double z = (diff - corr) / sigma;
      r.p_value = std::min(1.0, 2.0 * normal_cdf(-std::fabs(z)));
      break;
    }
  }
  r.p_value = clamp_p(r.p_value);
  return r;
}

}  // namespace semnet::stats
