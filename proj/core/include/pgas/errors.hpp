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

#include <stdexcept>
#include <string>

namespace pgas {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every log-weight in a normalisation was -inf.
class AllWeightsDegenerate : public Error {
 public:
  AllWeightsDegenerate() : Error("all log-weights are -inf") {}
  explicit AllWeightsDegenerate(const std::string& where)
      : Error("all log-weights are -inf (" + where + ")") {}
};

/// The model exposes a transition sampler only; its density cannot be evaluated.
class IntractableTransition : public Error {
 public:
  explicit IntractableTransition(const std::string& model)
      : Error("transition density of '" + model + "' is not available") {}
};

class NotControllable : public Error {
 public:
  using Error::Error;
};

/// A degenerate Gaussian was asked to condition on a value outside its support.
class NumericalRankFailure : public Error {
 public:
  using Error::Error;
};

/// Rejuvenation window bookkeeping left the horizon.
class PlanOutOfRange : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  ZeroVariance() : Error("series has zero variance") {}
};

}  // namespace pgas
