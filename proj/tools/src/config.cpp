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

#include "pgas_cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace pgas::cli {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) throw ValidationError("unknown key '" + item.key() + "' in " + where);
  }
}

std::size_t count(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string word(const json& j, const std::string& key, const std::string& where,
                 const std::set<std::string>& choices) {
  const json& v = j.at(key);
  if (!v.is_string() || !choices.contains(v.get<std::string>())) {
    std::string list;
    for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
    throw ValidationError(where + "." + key + " must be one of: " + list);
  }
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const json& e : v) {
      if (!e.is_number()) throw ValidationError(what + " must contain numbers");
      out.push_back(e.get<double>());
    }
  } else {
    throw ValidationError(what + " must be a number or an array of numbers");
  }
  return out;
}

ModelConfig parse_model(const json& j) {
  require_object(j, "model");
  ModelConfig m;
  if (!j.contains("name") || !j.at("name").is_string()) throw ValidationError("model.name is required");
  if (!j.contains("horizon")) throw ValidationError("model.horizon is required");
  m.name = j.at("name").get<std::string>();
  m.horizon = count(j, "horizon", "model");
  if (m.horizon == 0) throw ValidationError("model.horizon must be >= 1");
  for (const auto& item : j.items()) {
    if (item.key() != "name" && item.key() != "horizon") m.params[item.key()] = item.value();
  }
  return m;
}

SamplerConfig parse_sampler(const json& j) {
  const std::string where = "sampler";
  require_object(j, where);
  SamplerConfig s;
  for (const char* key : {"variant", "particles", "iterations"}) {
    if (!j.contains(key)) throw ValidationError(where + "." + key + " is required");
  }
  s.variant = word(j, "variant", where, {"pg", "pimh", "pgas", "pgas-rejuv", "pgas-abc"});
  std::set<std::string> allowed{"variant", "particles", "iterations", "burn_in", "thinning", "max_lag", "gibbs_theta"};
  if (s.variant == "pgas-rejuv") {
    allowed.insert({"window", "kernel", "proposal", "ancestor_proposal", "inner", "mh_iterations", "step"});
  }
  if (s.variant == "pgas-abc") allowed.insert({"epsilon", "abc_scale"});
  reject_unknown(j, allowed, where + " (variant " + s.variant + ")");

  s.particles = count(j, "particles", where);
  s.iterations = count(j, "iterations", where);
  if (j.contains("burn_in")) s.burn_in = count(j, "burn_in", where);
  if (j.contains("thinning")) s.thinning = count(j, "thinning", where);
  if (j.contains("max_lag")) s.max_lag = count(j, "max_lag", where);
  if (j.contains("gibbs_theta")) {
    if (!j.at("gibbs_theta").is_boolean()) throw ValidationError("sampler.gibbs_theta must be true or false");
    s.gibbs_theta = j.at("gibbs_theta").get<bool>();
  }
  if (s.particles < 2) throw ValidationError("sampler.particles must be >= 2");
  if (s.iterations == 0) throw ValidationError("sampler.iterations must be >= 1");
  if (s.burn_in >= s.iterations) throw ValidationError("sampler.burn_in must be below sampler.iterations");
  if (s.thinning == 0) throw ValidationError("sampler.thinning must be >= 1");

  if (s.variant == "pgas-rejuv") {
    if (!j.contains("window")) throw ValidationError("sampler.window is required for pgas-rejuv");
    s.window = count(j, "window", where);
    if (s.window == 0) throw ValidationError("sampler.window must be >= 1");
    if (j.contains("kernel")) s.kernel = word(j, "kernel", where, {"cis", "mh", "identity"});
    if (j.contains("proposal")) s.proposal = word(j, "proposal", where, {"prior", "bridge", "random-walk"});
    if (j.contains("ancestor_proposal")) {
      s.ancestor_proposal = word(j, "ancestor_proposal", where, {"filter", "uniform"});
    }
    if (j.contains("inner")) s.inner = count(j, "inner", where);
    if (j.contains("mh_iterations")) s.mh_iterations = count(j, "mh_iterations", where);
    if (j.contains("step")) {
      if (!j.at("step").is_number()) throw ValidationError("sampler.step must be a number");
      s.step = j.at("step").get<double>();
    }
    if (s.proposal == "random-walk") {
      if (s.kernel != "mh") throw ValidationError("the random-walk proposal needs kernel 'mh'");
      if (!(s.step > 0.0)) throw ValidationError("sampler.step must be > 0 for the random-walk proposal");
    } else if (j.contains("step")) {
      throw ValidationError("sampler.step only applies to the random-walk proposal");
    }
    if (j.contains("inner") && s.kernel != "cis") throw ValidationError("sampler.inner only applies to kernel 'cis'");
    if (j.contains("mh_iterations") && s.kernel != "mh") {
      throw ValidationError("sampler.mh_iterations only applies to kernel 'mh'");
    }
  }
  if (s.variant == "pgas-abc") {
    if (!j.contains("epsilon")) throw ValidationError("sampler.epsilon is required for pgas-abc");
    s.epsilon = numbers(j.at("epsilon"), "sampler.epsilon");
    if (s.epsilon.empty()) throw ValidationError("sampler.epsilon is empty");
    for (double e : s.epsilon) {
      if (!(e >= 0.0)) throw ValidationError("sampler.epsilon values must be >= 0");
    }
    if (j.contains("abc_scale")) s.abc_scale = numbers(j.at("abc_scale"), "sampler.abc_scale");
  }
  return s;
}

}  // namespace

nlohmann::json ExperimentConfig::to_json() const {
  json model_json = model.params;
  model_json["name"] = model.name;
  model_json["horizon"] = model.horizon;
  json out;
  out["model"] = model_json;
  out["seed"] = seed;
  if (!output.empty()) out["output"] = output;
  if (sampler.variant.empty()) return out;
  json s;
  s["variant"] = sampler.variant;
  s["particles"] = sampler.particles;
  s["iterations"] = sampler.iterations;
  s["burn_in"] = sampler.burn_in;
  s["thinning"] = sampler.thinning;
  s["max_lag"] = sampler.max_lag;
  s["gibbs_theta"] = sampler.gibbs_theta;
  if (sampler.variant == "pgas-rejuv") {
    s["window"] = sampler.window;
    s["kernel"] = sampler.kernel;
    s["proposal"] = sampler.proposal;
    s["ancestor_proposal"] = sampler.ancestor_proposal;
    if (sampler.kernel == "cis") s["inner"] = sampler.inner;
    if (sampler.kernel == "mh") s["mh_iterations"] = sampler.mh_iterations;
    if (sampler.proposal == "random-walk") s["step"] = sampler.step;
  }
  if (sampler.variant == "pgas-abc") {
    s["epsilon"] = sampler.epsilon.size() == 1 ? json(sampler.epsilon.front()) : json(sampler.epsilon);
    if (!sampler.abc_scale.empty()) s["abc_scale"] = sampler.abc_scale;
  }
  out["sampler"] = s;
  return out;
}

ExperimentConfig parse_config(const nlohmann::json& doc, bool need_sampler) {
  require_object(doc, "config");
  reject_unknown(doc, {"model", "sampler", "seed", "output"}, "config");
  ExperimentConfig cfg;
  if (!doc.contains("model")) throw ValidationError("config.model is required");
  cfg.model = parse_model(doc.at("model"));
  if (doc.contains("seed")) {
    const json& v = doc.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw ValidationError("config.seed must be a non-negative integer");
    }
    cfg.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ValidationError("config.output must be a string");
    cfg.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("sampler")) {
    cfg.sampler = parse_sampler(doc.at("sampler"));
  } else if (need_sampler) {
    throw ValidationError("config.sampler is required");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, bool need_sampler) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc, need_sampler);
}

}  // namespace pgas::cli
