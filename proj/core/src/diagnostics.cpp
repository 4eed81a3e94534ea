// Copyright 2026 The pgas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pgas/diagnostics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas {

double mean(std::span<const double> series) {
  if (series.empty()) throw std::invalid_argument("mean: empty series");
  return std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
}

double variance(std::span<const double> series) {
  if (series.size() < 2) throw std::invalid_argument("variance: need at least 2 values");
  const double m = mean(series);
  double ss = 0.0;
  for (double v : series) ss += (v - m) * (v - m);
  return ss / static_cast<double>(series.size() - 1);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
  const std::size_t n = series.size();
  if (n <= max_lag) throw std::invalid_argument("acf: series must be longer than max_lag");
  const double m = mean(series);
  std::vector<double> centred(n);
  for (std::size_t i = 0; i < n; ++i) centred[i] = series[i] - m;
  double c0 = 0.0;
  for (double v : centred) c0 += v * v;
  if (!(c0 > 0.0)) throw ZeroVariance();
  std::vector<double> out(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) ck += centred[i] * centred[i + k];
    out[k] = ck / c0;
  }
  return out;
}

double posterior_rmse(std::span<const double> estimate, std::span<const double> reference) {
  if (estimate.size() != reference.size()) throw std::invalid_argument("posterior_rmse: length mismatch");
  if (estimate.empty()) throw std::invalid_argument("posterior_rmse: empty input");
  double ss = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) ss += (estimate[i] - reference[i]) * (estimate[i] - reference[i]);
  return std::sqrt(ss / static_cast<double>(estimate.size()));
}

std::vector<double> update_rate(const std::vector<std::vector<std::uint8_t>>& logs) {
  if (logs.empty()) throw std::invalid_argument("update_rate: empty log");
  const std::size_t horizon = logs.front().size();
  std::vector<double> rate(horizon, 0.0);
  for (const auto& sweep : logs) {
    if (sweep.size() != horizon) throw std::invalid_argument("update_rate: ragged log");
    for (std::size_t t = 0; t < horizon; ++t) rate[t] += sweep[t] ? 1.0 : 0.0;
  }
  for (double& r : rate) r /= static_cast<double>(logs.size());
  return rate;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double total = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    total += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(total, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  const double ne = std::sqrt(nx * ny / (nx + ny));
  return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

double batch_means_se(std::span<const double> series, std::size_t n_batches) {
  if (n_batches < 10) throw std::invalid_argument("batch_means_se: need at least 10 batches");
  const std::size_t size = series.size() / n_batches;
  if (size < 1) throw std::invalid_argument("batch_means_se: series too short");
  std::vector<double> means(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b) means[b] = mean(series.subspan(b * size, size));
  return std::sqrt(variance(means) / static_cast<double>(n_batches));
}

Histogram histogram(std::span<const double> series, std::vector<double> edges) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
    throw std::invalid_argument("histogram: edges must be sorted with at least 2 entries");
  }
  Histogram h{std::move(edges), {}};
  h.counts.assign(h.edges.size() - 1, 0);
  for (double v : series) {
    if (v < h.edges.front() || v > h.edges.back()) continue;
    auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
    std::size_t bin = static_cast<std::size_t>(it - h.edges.begin());
    bin = bin == 0 ? 0 : bin - 1;
    h.counts[std::min(bin, h.counts.size() - 1)] += 1;
  }
  return h;
}

Histogram histogram(std::span<const double> series) {
  if (series.empty()) throw std::invalid_argument("histogram: empty series");
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  };
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double width = 2.0 * (quantile(0.75) - quantile(0.25)) / std::cbrt(static_cast<double>(sorted.size()));
  std::size_t bins = 1;
  if (width > 0.0 && hi > lo) bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 10000);
  std::vector<double> edges(bins + 1);
  const double step = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
  for (std::size_t k = 0; k <= bins; ++k) edges[k] = hi > lo ? lo + step * static_cast<double>(k) : lo - 0.5 + static_cast<double>(k);
  edges.back() = hi > lo ? hi : lo + 0.5;
  return histogram(series, std::move(edges));
}

namespace {

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman: need equal lengths >= 2");
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (!(sxx > 0.0 && syy > 0.0)) throw ZeroVariance();
  return sxy / std::sqrt(sxx * syy);
}

double sign_test_p_value(std::size_t successes, std::size_t trials) {
  if (successes > trials) throw std::invalid_argument("sign_test_p_value: successes > trials");
  double total = 0.0;
  for (std::size_t k = successes; k <= trials; ++k) {
    total += std::exp(std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0) -
                      static_cast<double>(trials) * std::log(2.0));
  }
  return std::min(total, 1.0);
}

ChainSummary summarize_chain(const std::vector<std::vector<double>>& columns, std::size_t max_lag,
                             const std::vector<std::vector<std::uint8_t>>& ancestor_logs,
                             const std::vector<std::vector<std::uint8_t>>& kernel_logs) {
  ChainSummary s;
  for (const auto& col : columns) {
    s.means.push_back(mean(col));
    s.variances.push_back(col.size() > 1 ? variance(col) : 0.0);
    s.batch_se.push_back(col.size() >= 10 ? batch_means_se(col, std::min<std::size_t>(20, col.size())) : NAN);
    try {
      s.acf.push_back(acf(col, std::min(max_lag, col.size() - 1)));
    } catch (const ZeroVariance&) {
      s.acf.emplace_back();
    }
    s.histograms.push_back(histogram(col));
  }
  if (!ancestor_logs.empty()) s.ancestor_update_rate = update_rate(ancestor_logs);
  if (!kernel_logs.empty()) s.kernel_move_rate = update_rate(kernel_logs);
  return s;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_series_csv(std::ostream& out, const std::string& index_name, const std::string& value_name,
                      std::span<const double> values) {
  out << index_name << ',' << value_name << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) out << i << ',' << format_double(values[i]) << '\n';
}

}  // namespace pgas
