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

#include <stdexcept>
#include <string>

namespace itemfair {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad ids, duplicate items in a list, wrong list length,
// out-of-range parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Min-max normalization with most-fair == most-unfair (e.g. k == n).
class NormalizationDegenerate : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration would exceed the configured evaluation cap.
class SpaceTooLarge : public Error {
 public:
  using Error::Error;
};

// VoCD is undefined when no pair of recommended items is similar.
class NoSimilarPairs : public Error {
 public:
  using Error::Error;
};

}  // namespace itemfair
