#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "loopsoup/rng.hpp"

namespace loopsoup {

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  uint64_t n = 0;
};

inline Estimate mean_stderr(const std::vector<double>& xs) {
  Estimate e;
  e.n = xs.size();
  if (xs.empty()) return e;
  double s = 0.0;
  for (double x : xs) s += x;
  const double m = s / xs.size();
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  e.value = m;
  e.stderr_ = xs.size() > 1 ? std::sqrt(v / (xs.size() - 1.0) / xs.size()) : 0.0;
  return e;
}

inline Estimate binomial_estimate(uint64_t successes, uint64_t n) {
  Estimate e;
  e.n = n;
  if (n == 0) return e;
  const double p = static_cast<double>(successes) / n;
  e.value = p;
  e.stderr_ = std::sqrt(p * (1.0 - p) / n);
  return e;
}

// One-sided 95% upper bound for p when zero successes were observed.
inline double zero_success_upper_ci(uint64_t n) {
  return n == 0 ? 1.0 : 1.0 - std::pow(0.05, 1.0 / static_cast<double>(n));
}

// Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2)
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::fabs(term) < 1e-14) break;
  }
  return std::min(1.0, std::max(0.0, q));
}

// One-sample KS test against a CDF; returns asymptotic p-value.
inline double ks_test(std::vector<double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs((i + 1.0) / n - f));
    d = std::max(d, std::fabs(f - i / n));
  }
  const double lam = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  return kolmogorov_q(lam);
}

// Regularized upper incomplete gamma Q(a, x), for chi-square p-values.
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad args");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // lower series
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // continued fraction (Lentz)
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

inline double chi_square_p(double stat, int dof) {
  if (dof <= 0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

// Chi-square homogeneity test on two histograms over the same bins.
// Bins with too few combined counts are pooled.
inline double chi_square_two_hist_p(const std::vector<uint64_t>& h1, const std::vector<uint64_t>& h2,
                                    uint64_t min_bin = 8) {
  if (h1.size() != h2.size()) throw std::invalid_argument("histogram size mismatch");
  double n1 = 0, n2 = 0;
  for (size_t i = 0; i < h1.size(); ++i) { n1 += h1[i]; n2 += h2[i]; }
  if (n1 == 0 || n2 == 0) return 1.0;
  double stat = 0.0;
  int dof = -1;
  uint64_t a = 0, b = 0;
  auto flush = [&](bool force) {
    if (a + b == 0) return;
    if (!force && a + b < min_bin) return;
    const double tot = static_cast<double>(a + b);
    const double e1 = tot * n1 / (n1 + n2), e2 = tot * n2 / (n1 + n2);
    const double d1 = a - e1, d2 = b - e2;
    stat += d1 * d1 / e1 + d2 * d2 / e2;
    ++dof;
    a = b = 0;
  };
  for (size_t i = 0; i < h1.size(); ++i) {
    a += h1[i];
    b += h2[i];
    flush(false);
  }
  flush(true);
  if (dof <= 0) return 1.0;
  return chi_square_p(stat, dof);
}

struct BootstrapCI {
  double lo = 0.0, hi = 0.0;
  int n_boot = 0;
};

// Percentile bootstrap of an arbitrary statistic of a sample.
inline BootstrapCI bootstrap_ci(const std::vector<double>& xs,
                                const std::function<double(const std::vector<double>&)>& stat,
                                int n_boot, RngStream rng, double level = 0.95) {
  if (xs.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
  std::vector<double> vals(n_boot);
  std::vector<double> re(xs.size());
  for (int b = 0; b < n_boot; ++b) {
    for (size_t i = 0; i < xs.size(); ++i) re[i] = xs[rng.uniform_below(xs.size())];
    vals[b] = stat(re);
  }
  std::sort(vals.begin(), vals.end());
  const double a = (1.0 - level) / 2.0;
  auto pick = [&](double q) {
    const double pos = q * (n_boot - 1);
    const size_t i = static_cast<size_t>(pos);
    const double f = pos - i;
    return i + 1 < vals.size() ? vals[i] * (1 - f) + vals[i + 1] * f : vals.back();
  };
  return {pick(a), pick(1.0 - a), n_boot};
}

}  // namespace loopsoup
