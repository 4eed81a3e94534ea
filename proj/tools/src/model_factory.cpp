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

#include "pgas_cli/model_factory.hpp"

#include <cmath>
#include <set>

#include <pgas/kalman.hpp>

namespace pgas::cli {

namespace {

using nlohmann::json;

class Params {
 public:
  Params(const json& params, std::string model, std::set<std::string> allowed)
      : params_(params), model_(std::move(model)) {
    for (const auto& item : params_.items()) {
      if (!allowed.contains(item.key())) {
        throw ValidationError("unknown key '" + item.key() + "' for model '" + model_ + "'");
      }
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!params_.contains(key)) return fallback;
    const json& v = params_.at(key);
    if (!v.is_number()) throw ValidationError(where(key) + " must be a number");
    return v.get<double>();
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!params_.contains(key)) return fallback;
    const json& v = params_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ValidationError(where(key) + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  bool flag(const std::string& key) const {
    if (!params_.contains(key)) return false;
    if (!params_.at(key).is_boolean()) throw ValidationError(where(key) + " must be true or false");
    return params_.at(key).get<bool>();
  }

  std::vector<double> vector(const std::string& key, std::vector<double> fallback) const {
    if (!params_.contains(key)) return fallback;
    const json& v = params_.at(key);
    if (!v.is_array()) throw ValidationError(where(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) throw ValidationError(where(key) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::vector<double>> matrix(const std::string& key, std::vector<std::vector<double>> fallback) const {
    if (!params_.contains(key)) return fallback;
    const json& v = params_.at(key);
    if (!v.is_array()) throw ValidationError(where(key) + " must be an array of rows");
    std::vector<std::vector<double>> out;
    for (const json& row : v) {
      if (!row.is_array()) throw ValidationError(where(key) + " must be an array of rows");
      std::vector<double> r;
      for (const json& e : row) {
        if (!e.is_number()) throw ValidationError(where(key) + " must contain numbers");
        r.push_back(e.get<double>());
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  bool has(const std::string& key) const { return params_.contains(key); }
  std::string where(const std::string& key) const { return "model." + key; }

 private:
  const json& params_;
  std::string model_;
};

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

ModelBundle::ModelBundle(const ModelConfig& config) : name_(config.name) {
  bool black_box = false;
  try {
    if (name_ == "lgssm") {
      const Params p(config.params, name_, {"a", "q", "r", "m0", "p0", "black_box"});
      const double q = p.number("q", 1.0);
      const double r = p.number("r", 1.0);
      const double p0 = p.number("p0", 1.0);
      if (!(q > 0.0) || !(r > 0.0) || !(p0 > 0.0)) throw ValidationError("lgssm: q, r and p0 must be > 0");
      auto model = std::make_unique<LinearGaussianModel>(
          scalar_lgssm(p.number("a", 0.9), q, r, p.number("m0", 0.0), p0));
      lgssm_ = model.get();
      base_ = std::move(model);
      black_box = p.flag("black_box");
    } else if (name_ == "ar") {
      const Params p(config.params, name_, {"alpha", "sigma_v", "beta", "sigma_e", "nu", "black_box"});
      ArSsmSpec spec;
      spec.alpha = p.vector("alpha", spec.alpha);
      spec.sigma_v = p.number("sigma_v", spec.sigma_v);
      spec.beta = p.number("beta", spec.beta);
      spec.sigma_e = p.number("sigma_e", spec.sigma_e);
      spec.nu = p.number("nu", spec.nu);
      auto model = std::make_unique<ArModel>(spec);
      ar_ = model.get();
      base_ = std::move(model);
      black_box = p.flag("black_box");
    } else if (name_ == "tracking") {
      const Params p(config.params, name_,
                     {"dt", "theta", "bearing_sd", "elevation_sd", "range_sd", "prior_shape", "prior_scale",
                      "initial_mean", "initial_sd", "black_box"});
      TrackingSpec spec;
      spec.dt = p.number("dt", spec.dt);
      spec.theta = p.number("theta", spec.theta);
      spec.bearing_sd = p.number("bearing_sd", spec.bearing_sd);
      spec.elevation_sd = p.number("elevation_sd", spec.elevation_sd);
      spec.range_sd = p.number("range_sd", spec.range_sd);
      spec.prior_shape = p.number("prior_shape", spec.prior_shape);
      spec.prior_scale = p.number("prior_scale", spec.prior_scale);
      spec.initial_mean = to_eigen(p.vector("initial_mean", to_std(spec.initial_mean)));
      spec.initial_sd = to_eigen(p.vector("initial_sd", to_std(spec.initial_sd)));
      auto model = std::make_unique<TrackingModel>(spec);
      tracking_ = model.get();
      base_ = std::move(model);
      black_box = p.flag("black_box");
    } else if (name_ == "lorenz63") {
      const Params p(config.params, name_, {"sigma", "rho", "beta", "noise_sd", "obs_sd", "dt", "substeps"});
      Lorenz63Spec spec;
      spec.sigma = p.number("sigma", spec.sigma);
      spec.rho = p.number("rho", spec.rho);
      spec.beta = p.number("beta", spec.beta);
      if (p.has("noise_sd")) {
        if (config.params.at("noise_sd").is_number()) {
          spec.noise_sd.fill(p.number("noise_sd", 0.0));
        } else {
          const auto sd = p.vector("noise_sd", {});
          if (sd.size() != 3) throw ValidationError("model.noise_sd must be a number or 3 numbers");
          std::copy(sd.begin(), sd.end(), spec.noise_sd.begin());
        }
      }
      spec.obs_sd = p.number("obs_sd", spec.obs_sd);
      spec.dt = p.number("dt", spec.dt);
      spec.substeps = p.count("substeps", spec.substeps);
      base_ = std::make_unique<Lorenz63Model>(spec);
    } else if (name_ == "finite") {
      const Params p(config.params, name_, {"initial", "transition", "emission"});
      FiniteStateSpec spec = two_state_toy();
      spec.initial = p.vector("initial", spec.initial);
      spec.transition = p.matrix("transition", spec.transition);
      spec.emission = p.matrix("emission", spec.emission);
      base_ = std::make_unique<FiniteStateModel>(spec);
    } else {
      throw ValidationError("unknown model '" + name_ + "' (expected lgssm, ar, tracking, lorenz63 or finite)");
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  if (black_box) black_box_ = std::make_unique<BlackBoxModel>(*base_);
}

const LinearGaussianDynamics& ModelBundle::dynamics() const {
  if (lgssm_) return lgssm_->dynamics();
  if (ar_) return ar_->dynamics();
  if (tracking_) return tracking_->dynamics();
  throw ValidationError("model '" + name_ + "' has no linear-Gaussian dynamics");
}

Eigen::VectorXd ModelBundle::initial_mean() const {
  if (lgssm_) return lgssm_->spec().initial_mean;
  if (ar_) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ar_->state_dim()));
  if (tracking_) return tracking_->spec().initial_mean;
  throw ValidationError("model '" + name_ + "' has no linear-Gaussian dynamics");
}

Eigen::MatrixXd ModelBundle::initial_covariance() const {
  if (lgssm_) return lgssm_->spec().initial_cov;
  if (ar_) return ar_->initial_covariance();
  if (tracking_) return tracking_->initial_covariance();
  throw ValidationError("model '" + name_ + "' has no linear-Gaussian dynamics");
}

}  // namespace pgas::cli
