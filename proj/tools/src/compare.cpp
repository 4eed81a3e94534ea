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

#include "pgas_cli/compare.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <pgas/diagnostics.hpp>

#include "pgas_cli/config.hpp"
#include "pgas_cli/csv.hpp"
#include "pgas_cli/runner.hpp"

namespace pgas::cli {

namespace fs = std::filesystem;

RunSamples load_run(const fs::path& dir) {
  if (fs::exists(dir / "PARTIAL")) throw ValidationError("run '" + dir.string() + "' is incomplete");
  const CsvTable chain = read_csv(dir / "chain.csv");
  const std::size_t c_it = chain.column("iteration");
  const std::size_t c_burn = chain.column("burn_in");
  const std::size_t c_t = chain.column("t");
  const std::size_t dim = chain.header.size() - 3;
  if (dim == 0 || c_t != 2) throw ValidationError("'" + (dir / "chain.csv").string() + "' has no state columns");

  RunSamples run;
  run.label = dir.filename().string();
  if (run.label.empty()) run.label = dir.parent_path().filename().string();
  std::vector<std::vector<double>> rows;
  double current = std::numeric_limits<double>::quiet_NaN();
  const auto flush = [&] {
    if (rows.empty()) return;
    Trajectory x(rows.size(), dim);
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (rows[t][c_t] != static_cast<double>(t)) throw ValidationError("chain.csv rows out of order");
      for (std::size_t j = 0; j < dim; ++j) x(t, j) = rows[t][3 + j];
    }
    if (!run.samples.empty() && run.samples.front().length() != x.length()) {
      throw ValidationError("chain.csv has iterations of different length");
    }
    run.samples.push_back(std::move(x));
    rows.clear();
  };
  for (const auto& row : chain.rows) {
    if (row[c_burn] != 0.0) continue;
    if (row[c_it] != current) {
      flush();
      current = row[c_it];
    }
    rows.push_back(row);
  }
  flush();
  if (run.samples.empty()) throw ValidationError("run '" + dir.string() + "' has no post-burn-in samples");

  const fs::path acf_path = dir / "acf_median.csv";
  if (fs::exists(acf_path)) {
    const CsvTable acf_table = read_csv(acf_path);
    const std::size_t c_v = acf_table.column("acf");
    for (const auto& row : acf_table.rows) run.median_acf.push_back(row[c_v]);
  }
  return run;
}

namespace {

std::vector<double> posterior_mean(const std::vector<Trajectory>& samples) {
  std::vector<double> m(samples.front().data().size(), 0.0);
  for (const auto& x : samples) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += x.data()[i];
  }
  for (double& v : m) v /= static_cast<double>(samples.size());
  return m;
}

void check_shape(const RunSamples& run, const RunSamples& reference) {
  const auto& a = run.samples.front();
  const auto& b = reference.samples.front();
  if (a.length() != b.length() || a.dim() != b.dim()) {
    throw ValidationError("run '" + run.label + "' has shape " + std::to_string(a.length()) + "x" +
                          std::to_string(a.dim()) + ", reference '" + reference.label + "' has " +
                          std::to_string(b.length()) + "x" + std::to_string(b.dim()));
  }
}

std::vector<std::string> unique_labels(std::vector<std::string> labels) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() == labels.size()) return labels;
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = "run" + std::to_string(k);
  return labels;
}

}  // namespace

void compare_runs(const CompareOptions& options) {
  if (options.runs.empty()) throw ValidationError("compare needs at least one run directory");
  std::vector<RunSamples> runs;
  for (const auto& dir : options.runs) runs.push_back(load_run(dir));
  const RunSamples reference = options.reference.empty() ? runs.front() : load_run(options.reference);
  for (const auto& r : runs) check_shape(r, reference);

  std::vector<std::string> labels;
  for (const auto& r : runs) labels.push_back(r.label);
  labels = unique_labels(std::move(labels));

  ensure_directory(options.out);
  const std::vector<double> ref_mean = posterior_mean(reference.samples);
  const std::size_t horizon = reference.samples.front().length();
  const std::size_t dim = reference.samples.front().dim();

  std::ofstream rmse(options.out / "rmse.csv", std::ios::binary);
  rmse << "run,rmse\n";
  std::ofstream curve(options.out / "rmse_curve.csv", std::ios::binary);
  curve << "run,sample,rmse\n";
  std::ofstream ks(options.out / "ks.csv", std::ios::binary);
  ks << "run,t,component,statistic,p_value\n";
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& samples = runs[k].samples;
    rmse << labels[k] << ',' << format_double(posterior_rmse(posterior_mean(samples), ref_mean)) << '\n';
    std::vector<double> running(ref_mean.size(), 0.0), avg(ref_mean.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
      for (std::size_t i = 0; i < running.size(); ++i) {
        running[i] += samples[s].data()[i];
        avg[i] = running[i] / static_cast<double>(s + 1);
      }
      curve << labels[k] << ',' << s << ',' << format_double(posterior_rmse(avg, ref_mean)) << '\n';
    }
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> a, b;
        for (const auto& x : samples) a.push_back(x(t, j));
        for (const auto& x : reference.samples) b.push_back(x(t, j));
        const KsResult r = ks_two_sample(a, b);
        ks << labels[k] << ',' << t << ',' << j << ',' << format_double(r.statistic) << ','
           << format_double(r.p_value) << '\n';
      }
    }
  }

  std::ofstream overlay(options.out / "acf_overlay.csv", std::ios::binary);
  overlay << "lag";
  std::size_t lags = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    overlay << ',' << labels[k];
    lags = std::max(lags, runs[k].median_acf.size());
  }
  overlay << '\n';
  for (std::size_t lag = 0; lag < lags; ++lag) {
    overlay << lag;
    for (const auto& r : runs) {
      overlay << ',' << format_double(lag < r.median_acf.size() ? r.median_acf[lag] : std::nan(""));
    }
    overlay << '\n';
  }

  std::string run_list;
  for (const auto& dir : options.runs) {
    run_list += (run_list.empty() ? "" : ",") + fs::absolute(dir).lexically_normal().string();
  }
  const fs::path ref_dir = options.reference.empty() ? options.runs.front() : options.reference;
  write_manifest(options.out / "manifest.txt",
                 {{"format", "pgas-compare-1"},
                  {"command", "compare"},
                  {"runs", run_list},
                  {"labels", [&] {
                     std::string s;
                     for (const auto& l : labels) s += (s.empty() ? "" : ",") + l;
                     return s;
                   }()},
                  {"reference", fs::absolute(ref_dir).lexically_normal().string()},
                  {"status", "complete"},
                  {"files", "acf_overlay.csv,ks.csv,rmse.csv,rmse_curve.csv,manifest.txt"}});
}

}  // namespace pgas::cli
