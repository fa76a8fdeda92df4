// Copyright 2026 The itemfair Authors
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

#include <cmath>
#include <cstddef>
#include <string>

#include "itemfair/error.hpp"

namespace itemfair {

enum class Examination { kUniform, kDcg, kRbp };

// Probability that a user inspects a given rank. Every variant gives rank 1
// weight 1 and is non-increasing in rank.
class ExaminationFunction {
 public:
  static constexpr double kDefaultPatience = 0.8;

  static ExaminationFunction uniform() { return ExaminationFunction(Examination::kUniform, 0.0); }
  static ExaminationFunction dcg() { return ExaminationFunction(Examination::kDcg, 0.0); }
  static ExaminationFunction rbp(double gamma = kDefaultPatience) {
    check_patience(gamma);
    return ExaminationFunction(Examination::kRbp, gamma);
  }

  Examination kind() const { return kind_; }
  double gamma() const { return gamma_; }

  // rank is 1-based.
  double weight(std::size_t rank) const {
    if (rank == 0) throw ValidationError("rank must be positive (ranks are 1-based)");
    switch (kind_) {
      case Examination::kUniform:
        return 1.0;
      case Examination::kDcg:
        return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
      case Examination::kRbp:
        return std::pow(gamma_, static_cast<double>(rank - 1));
    }
    return 1.0;
  }

  static void check_patience(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
      throw ValidationError("RBP patience gamma must lie in (0, 1), got " +
                            std::to_string(gamma));
    }
  }

 private:
  ExaminationFunction(Examination kind, double gamma) : kind_(kind), gamma_(gamma) {}

  Examination kind_;
  double gamma_;
};

inline double examination_weight(const ExaminationFunction& fn, std::size_t rank) {
  return fn.weight(rank);
}

}  // namespace itemfair
