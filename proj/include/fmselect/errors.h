/*
 * Copyright 2026 The fmselect Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FMSELECT_ERRORS_H_
#define FMSELECT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fmselect {

// Base of every error thrown by the library. Diagnostics that are part of a
// normal result (well-formedness reports, verdicts, check reports) are
// returned as values instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constraint compared an attribute that has no value.
class MissingAttribute : public Error {
 public:
  explicit MissingAttribute(std::string attribute)
      : Error("attribute '" + attribute + "' has no value"),
        attribute_(std::move(attribute)) {}
  const std::string& attribute() const { return attribute_; }

 private:
  std::string attribute_;
};

// Brute-force analysis refused a model above its feature guard.
class TooLarge : public Error {
 public:
  TooLarge(std::size_t features, std::size_t limit)
      : Error("model has " + std::to_string(features) +
              " features; brute-force limit is " + std::to_string(limit)) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace fmselect

#endif  // FMSELECT_ERRORS_H_
