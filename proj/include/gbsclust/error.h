// Copyright 2026 The gbsclust Authors.
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

#ifndef GBSCLUST_ERROR_H_
#define GBSCLUST_ERROR_H_

#include <stdexcept>
#include <string>

namespace gbsclust {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments violating a documented precondition.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Problem size beyond what the exact sampler can enumerate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Sampling distribution with zero total weight.
class DegenerateGraphError : public Error {
 public:
  using Error::Error;
};

// Scaling calibration without a root (e.g. a graph with no edges).
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

// Floating point result that violates a structural guarantee.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Metric requested on a clustering where it is not defined.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gbsclust

#endif  // GBSCLUST_ERROR_H_
