// Copyright 2026 The dastable Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DASTABLE_ERRORS_HPP_
#define DASTABLE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace dastable {

// Invalid argument values (probabilities outside [0,1], unknown route labels,
// malformed measure specs).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the support of a law or function (Sibuya pmf at 0,
// factorization outside the prime basis).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation would exceed a configured size or depth cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested sampling route does not support the given spectral measure.
class UnsupportedRouteError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A statistical test cannot be carried out validly on the supplied data.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric quadrature could not meet the requested precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dastable

#endif  // DASTABLE_ERRORS_HPP_
