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

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace pgas {

/// Biased (divide-by-T) autocorrelations at lags 0..max_lag. Throws ZeroVariance
/// for a constant series and std::invalid_argument if the series is not longer
/// than max_lag.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

/// sqrt(mean((a - b)^2)) over all entries.
double posterior_rmse(std::span<const double> estimate, std::span<const double> reference);

/// Fraction of sweeps with a logged change at each t.
std::vector<double> update_rate(const std::vector<std::vector<std::uint8_t>>& logs);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Standard error of the mean from n_batches (>= 10) equal batches; the tail
/// that does not fill a batch is dropped.
double batch_means_se(std::span<const double> series, std::size_t n_batches = 20);

struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

/// Freedman-Diaconis bins.
Histogram histogram(std::span<const double> series);
/// Fixed edges; values outside [edges.front(), edges.back()] are not counted.
Histogram histogram(std::span<const double> series, std::vector<double> edges);

/// Spearman rank correlation; ties get average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// P(X >= successes) for X ~ Binomial(trials, 1/2).
double sign_test_p_value(std::size_t successes, std::size_t trials);

double mean(std::span<const double> series);
double variance(std::span<const double> series);
double median(std::vector<double> values);

/// Per-variable summary of a chain stored column-wise (one series per variable).
struct ChainSummary {
  std::vector<double> means;
  std::vector<double> variances;
  std::vector<double> batch_se;
  std::vector<std::vector<double>> acf;
  std::vector<Histogram> histograms;
  std::vector<double> ancestor_update_rate;
  std::vector<double> kernel_move_rate;
};

ChainSummary summarize_chain(const std::vector<std::vector<double>>& columns, std::size_t max_lag,
                             const std::vector<std::vector<std::uint8_t>>& ancestor_logs,
                             const std::vector<std::vector<std::uint8_t>>& kernel_logs);

/// Two-column CSV "index_name,value_name" with one row per entry.
void write_series_csv(std::ostream& out, const std::string& index_name, const std::string& value_name,
                      std::span<const double> values);

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

}  // namespace pgas
