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

#include "clause_solver.h"

#include <optional>
#include <variant>

#include "fmselect/errors.h"

namespace fmselect::internal {

namespace {

// A subformula after constant folding: either a constant or a literal.
using Encoded = std::variant<bool, Literal>;

class Encoder {
 public:
  Encoder(const FeatureModel& model, const AttributeValuation& attributes,
          ClauseModel& out)
      : model_(model), attributes_(attributes), out_(out) {}

  Encoded encode(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::kFeature: {
        auto id = model_.find(f.symbol());
        if (!id) return false;
        return positive(*id);
      }
      case Formula::Kind::kCompare: {
        auto it = attributes_.find(f.symbol());
        if (it == attributes_.end()) throw MissingAttribute(f.symbol());
        return compare(it->second, f.op(), f.value());
      }
      case Formula::Kind::kNot:
        return negate(encode(f.lhs()));
      case Formula::Kind::kAnd:
        return conj(encode(f.lhs()), encode(f.rhs()));
      case Formula::Kind::kOr:
        return negate(conj(negate(encode(f.lhs())), negate(encode(f.rhs()))));
      case Formula::Kind::kImplies:
        return negate(conj(encode(f.lhs()), negate(encode(f.rhs()))));
      case Formula::Kind::kIff:
        return iff(encode(f.lhs()), encode(f.rhs()));
    }
    return false;
  }

 private:
  static Encoded negate(Encoded e) {
    if (auto* b = std::get_if<bool>(&e)) return !*b;
    return complement(std::get<Literal>(e));
  }

  Literal fresh() { return positive(out_.variables++); }

  Encoded conj(Encoded a, Encoded b) {
    if (auto* ba = std::get_if<bool>(&a)) return *ba ? b : Encoded{false};
    if (auto* bb = std::get_if<bool>(&b)) return *bb ? a : Encoded{false};
    const Literal la = std::get<Literal>(a);
    const Literal lb = std::get<Literal>(b);
    const Literal x = fresh();
    out_.clauses.push_back({complement(x), la});
    out_.clauses.push_back({complement(x), lb});
    out_.clauses.push_back({x, complement(la), complement(lb)});
    return x;
  }

  Encoded iff(Encoded a, Encoded b) {
    if (auto* ba = std::get_if<bool>(&a)) return *ba ? b : negate(b);
    if (auto* bb = std::get_if<bool>(&b)) return *bb ? a : negate(a);
    const Literal la = std::get<Literal>(a);
    const Literal lb = std::get<Literal>(b);
    const Literal x = fresh();
    out_.clauses.push_back({complement(x), complement(la), lb});
    out_.clauses.push_back({complement(x), la, complement(lb)});
    out_.clauses.push_back({x, la, lb});
    out_.clauses.push_back({x, complement(la), complement(lb)});
    return x;
  }

  const FeatureModel& model_;
  const AttributeValuation& attributes_;
  ClauseModel& out_;
};

}  // namespace

ClauseModel::ClauseModel(const FeatureModel& model,
                         const AttributeValuation& attributes) {
  features = static_cast<std::uint32_t>(model.size());
  variables = features;
  if (auto root = model.root()) {
    clauses.push_back({positive(*root)});
  } else {
    trivially_unsat = true;
  }
  for (FeatureId id = 0; id < features; ++id) {
    const auto& f = model.features[id];
    if (!f.parent) continue;
    clauses.push_back({negative(id), positive(*f.parent)});
    if (!f.group && f.variation == Variation::kMandatory) {
      clauses.push_back({negative(*f.parent), positive(id)});
    }
  }
  for (const auto& g : model.groups) {
    std::vector<Literal> at_least_one{negative(g.parent)};
    for (FeatureId m : g.members) at_least_one.push_back(positive(m));
    clauses.push_back(std::move(at_least_one));
    if (g.kind == GroupKind::kXor) {
      for (std::size_t i = 0; i < g.members.size(); ++i) {
        for (std::size_t j = i + 1; j < g.members.size(); ++j) {
          clauses.push_back({negative(g.members[i]), negative(g.members[j])});
        }
      }
    }
  }
  Encoder encoder(model, attributes, *this);
  for (const auto& c : model.constraints) {
    const Encoded top = encoder.encode(c.formula);
    if (auto* b = std::get_if<bool>(&top)) {
      if (!*b) trivially_unsat = true;
    } else {
      clauses.push_back({std::get<Literal>(top)});
    }
  }
  occurrences.assign(std::size_t{variables} * 2, {});
  for (std::uint32_t i = 0; i < clauses.size(); ++i) {
    for (Literal lit : clauses[i]) occurrences[lit].push_back(i);
  }
}

Solver::Solver(const ClauseModel& cnf) : cnf_(cnf) {}

bool Solver::is_true(Literal lit) const {
  const std::int8_t v = value_[variable(lit)];
  return v >= 0 && (v == 1) == ((lit & 1u) == 0);
}

bool Solver::is_false(Literal lit) const {
  const std::int8_t v = value_[variable(lit)];
  return v >= 0 && (v == 1) != ((lit & 1u) == 0);
}

bool Solver::assign(Literal lit) {
  if (is_true(lit)) return true;
  if (is_false(lit)) return false;
  value_[variable(lit)] = (lit & 1u) ? 0 : 1;
  trail_.push_back(lit);
  return true;
}

void Solver::undo(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    value_[variable(trail_.back())] = -1;
    trail_.pop_back();
  }
  queue_head_ = trail_size;
}

bool Solver::propagate() {
  while (queue_head_ < trail_.size()) {
    const Literal became_false = complement(trail_[queue_head_++]);
    for (std::uint32_t ci : cnf_.occurrences[became_false]) {
      const auto& clause = cnf_.clauses[ci];
      std::optional<Literal> unassigned;
      bool satisfied = false;
      bool several = false;
      for (Literal lit : clause) {
        if (is_true(lit)) {
          satisfied = true;
          break;
        }
        if (!is_false(lit)) {
          if (unassigned) several = true;
          unassigned = lit;
        }
      }
      if (satisfied || several) continue;
      if (!unassigned) return false;
      assign(*unassigned);
    }
  }
  return true;
}

bool Solver::search() {
  if (!propagate()) return false;
  std::uint32_t var = 0;
  while (var < cnf_.variables && value_[var] >= 0) ++var;
  if (var == cnf_.variables) return true;
  const std::size_t mark = trail_.size();
  assign(negative(var));
  if (search()) return true;
  undo(mark);
  assign(positive(var));
  if (search()) return true;
  undo(mark);
  return false;
}

bool Solver::solve(const std::vector<std::int8_t>& fixed, Valuation& model) {
  if (cnf_.trivially_unsat) return false;
  value_.assign(cnf_.variables, -1);
  trail_.clear();
  queue_head_ = 0;
  // Unit clauses and fixed features seed the propagation queue.
  for (const auto& clause : cnf_.clauses) {
    if (clause.empty()) return false;
    if (clause.size() == 1 && !assign(clause[0])) return false;
  }
  for (std::uint32_t v = 0; v < fixed.size() && v < cnf_.features; ++v) {
    if (fixed[v] < 0) continue;
    if (!assign(fixed[v] ? positive(v) : negative(v))) return false;
  }
  if (!search()) return false;
  model = value_;
  return true;
}

}  // namespace fmselect::internal
