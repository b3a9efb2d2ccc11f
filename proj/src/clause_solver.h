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

#ifndef FMSELECT_SRC_CLAUSE_SOLVER_H_
#define FMSELECT_SRC_CLAUSE_SOLVER_H_

#include <cstdint>
#include <vector>

#include "fmselect/feature_model.h"

namespace fmselect::internal {

// Literal of variable v: 2v for positive, 2v+1 for negated.
using Literal = std::uint32_t;

inline Literal positive(std::uint32_t var) { return var * 2; }
inline Literal negative(std::uint32_t var) { return var * 2 + 1; }
inline Literal complement(Literal lit) { return lit ^ 1u; }
inline std::uint32_t variable(Literal lit) { return lit >> 1; }

// Clausal encoding of a feature model under a fixed attribute valuation.
// Variables [0, features) are the features; the rest are Tseitin
// definitions of constraint subformulas.
struct ClauseModel {
  ClauseModel(const FeatureModel& model, const AttributeValuation& attributes);

  std::uint32_t features = 0;
  std::uint32_t variables = 0;
  std::vector<std::vector<Literal>> clauses;
  // Occurrence lists: clauses containing each literal.
  std::vector<std::vector<std::uint32_t>> occurrences;
  bool trivially_unsat = false;
};

// Values: -1 unknown, 0 false, 1 true.
using Valuation = std::vector<std::int8_t>;

// DPLL with unit propagation and chronological backtracking. Decisions take
// the lowest unassigned variable and try false first, so the first model
// found is the lexicographically smallest one over the feature variables.
class Solver {
 public:
  explicit Solver(const ClauseModel& cnf);

  // `fixed` has one entry per feature (-1, 0 or 1). Returns the full model
  // on success.
  bool solve(const std::vector<std::int8_t>& fixed, Valuation& model);

 private:
  bool assign(Literal lit);
  bool propagate();
  bool search();
  void undo(std::size_t trail_size);
  bool is_true(Literal lit) const;
  bool is_false(Literal lit) const;

  const ClauseModel& cnf_;
  Valuation value_;
  std::vector<Literal> trail_;
  std::size_t queue_head_ = 0;
};

}  // namespace fmselect::internal

#endif  // FMSELECT_SRC_CLAUSE_SOLVER_H_
