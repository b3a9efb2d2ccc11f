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

#include "fmselect/analysis.h"

#include <omp.h>

#include <algorithm>

#include "clause_solver.h"
#include "fmselect/errors.h"
#include "mask_model.h"

namespace fmselect {

using internal::ClauseModel;
using internal::Mask;
using internal::MaskModel;
using internal::Solver;
using internal::Valuation;

PartialConfiguration PartialConfiguration::unknown(const FeatureModel& model,
                                                   AttributeValuation attributes) {
  return {std::vector<Assignment>(model.size(), Assignment::kUnknown),
          std::move(attributes)};
}

PartialConfiguration& PartialConfiguration::set(const FeatureModel& model,
                                                std::string_view name,
                                                Assignment value) {
  auto id = model.find(name);
  if (!id) throw InvalidArgument("unknown feature '" + std::string(name) + "'");
  if (assignments.size() < model.size()) {
    assignments.resize(model.size(), Assignment::kUnknown);
  }
  assignments[*id] = value;
  return *this;
}

namespace {

std::vector<std::int8_t> fixed_values(const FeatureModel& model,
                                      const PartialConfiguration& partial) {
  if (partial.assignments.size() > model.size()) {
    throw InvalidArgument("partial configuration assigns more features than the model has");
  }
  std::vector<std::int8_t> fixed(model.size(), -1);
  for (std::size_t i = 0; i < partial.assignments.size(); ++i) {
    if (partial.assignments[i] == Assignment::kSelected) fixed[i] = 1;
    if (partial.assignments[i] == Assignment::kExcluded) fixed[i] = 0;
  }
  return fixed;
}

Configuration to_configuration(const Valuation& values, std::size_t features,
                               const AttributeValuation& attributes) {
  Configuration config;
  for (FeatureId id = 0; id < features; ++id) {
    if (values[id] == 1) config.selected.insert(id);
  }
  config.attributes = attributes;
  return config;
}

std::vector<Mask> valid_masks_serial(const MaskModel& kernel) {
  std::vector<Mask> out;
  const std::uint64_t total = std::uint64_t{1} << kernel.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (kernel.accepts(static_cast<Mask>(mask))) out.push_back(static_cast<Mask>(mask));
  }
  return out;
}

// Each thread scans one contiguous slice of the mask range; concatenating
// the slices in thread order keeps the result sorted.
std::vector<Mask> valid_masks_parallel(const MaskModel& kernel) {
  const std::uint64_t total = std::uint64_t{1} << kernel.size();
  std::vector<std::vector<Mask>> slices(omp_get_max_threads());
#pragma omp parallel
  {
    const auto threads = static_cast<std::uint64_t>(omp_get_num_threads());
    const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
    const std::uint64_t begin = total * t / threads;
    const std::uint64_t end = total * (t + 1) / threads;
    auto& slice = slices[t];
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      if (kernel.accepts(static_cast<Mask>(mask))) slice.push_back(static_cast<Mask>(mask));
    }
  }
  std::vector<Mask> out;
  for (auto& slice : slices) out.insert(out.end(), slice.begin(), slice.end());
  return out;
}

std::vector<Configuration> to_configurations(const std::vector<Mask>& masks,
                                             std::size_t size,
                                             const AttributeValuation& attributes,
                                             std::size_t limit) {
  std::vector<Configuration> out;
  const std::size_t n = std::min(limit, masks.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(internal::to_configuration(masks[i], size, attributes));
  }
  return out;
}

}  // namespace

std::vector<Configuration> enumerate_configurations(
    const FeatureModel& model, const AttributeValuation& attributes,
    std::size_t limit, Execution execution) {
  const MaskModel kernel(model, attributes);
  const auto masks = execution == Execution::kParallel
                         ? valid_masks_parallel(kernel)
                         : valid_masks_serial(kernel);
  return to_configurations(masks, model.size(), attributes, limit);
}

std::uint64_t count_configurations(const FeatureModel& model,
                                   const AttributeValuation& attributes,
                                   Execution execution) {
  const MaskModel kernel(model, attributes);
  const std::int64_t total = std::int64_t{1} << kernel.size();
  std::uint64_t count = 0;
  if (execution == Execution::kParallel) {
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (std::int64_t mask = 0; mask < total; ++mask) {
      if (kernel.accepts(static_cast<Mask>(mask))) ++count;
    }
  } else {
    for (std::int64_t mask = 0; mask < total; ++mask) {
      if (kernel.accepts(static_cast<Mask>(mask))) ++count;
    }
  }
  return count;
}

bool is_satisfiable(const FeatureModel& model,
                    const PartialConfiguration& partial) {
  const ClauseModel cnf(model, partial.attributes);
  Solver solver(cnf);
  Valuation values;
  return solver.solve(fixed_values(model, partial), values);
}

std::optional<Configuration> complete(const FeatureModel& model,
                                      const PartialConfiguration& partial) {
  const ClauseModel cnf(model, partial.attributes);
  Solver solver(cnf);
  Valuation values;
  if (!solver.solve(fixed_values(model, partial), values)) return std::nullopt;
  return to_configuration(values, model.size(), partial.attributes);
}

PropagationResult propagate(const FeatureModel& model,
                            const PartialConfiguration& partial,
                            Execution execution) {
  const ClauseModel cnf(model, partial.attributes);
  const auto fixed = fixed_values(model, partial);
  Valuation witness;
  {
    Solver solver(cnf);
    if (!solver.solve(fixed, witness)) {
      PropagationResult conflict;
      conflict.conflict = true;
      return conflict;
    }
  }
  // A feature is forced iff flipping its value in the witness is
  // unsatisfiable. Every probe is independent.
  const auto n = static_cast<std::int64_t>(model.size());
  std::vector<std::uint8_t> forced(model.size(), 0);
  auto probe = [&](std::int64_t v, Solver& solver) {
    if (fixed[v] >= 0) {
      forced[v] = 1;
      return;
    }
    auto flipped = fixed;
    flipped[v] = witness[v] == 1 ? 0 : 1;
    Valuation scratch;
    forced[v] = solver.solve(flipped, scratch) ? 0 : 1;
  };
  if (execution == Execution::kParallel) {
#pragma omp parallel
    {
      Solver solver(cnf);
#pragma omp for schedule(dynamic)
      for (std::int64_t v = 0; v < n; ++v) probe(v, solver);
    }
  } else {
    Solver solver(cnf);
    for (std::int64_t v = 0; v < n; ++v) probe(v, solver);
  }
  PropagationResult result;
  for (FeatureId v = 0; v < model.size(); ++v) {
    if (!forced[v]) continue;
    (witness[v] == 1 ? result.forced_selected : result.forced_excluded).insert(v);
  }
  return result;
}

namespace reference {

std::vector<Configuration> enumerate_configurations(
    const FeatureModel& model, const AttributeValuation& attributes,
    std::size_t limit) {
  const MaskModel kernel(model, attributes);
  return to_configurations(valid_masks_serial(kernel), model.size(), attributes,
                           limit);
}

PropagationResult propagate(const FeatureModel& model,
                            const PartialConfiguration& partial) {
  const MaskModel kernel(model, partial.attributes);
  const auto fixed = fixed_values(model, partial);
  Mask care = 0;
  Mask want = 0;
  for (FeatureId v = 0; v < model.size(); ++v) {
    if (fixed[v] < 0) continue;
    care |= Mask{1} << v;
    if (fixed[v] == 1) want |= Mask{1} << v;
  }
  const Mask all = model.size() == 32 ? ~Mask{0} : (Mask{1} << model.size()) - 1;
  Mask always = all;
  Mask ever = 0;
  bool any = false;
  const std::uint64_t total = std::uint64_t{1} << model.size();
  for (std::uint64_t m = 0; m < total; ++m) {
    const auto mask = static_cast<Mask>(m);
    if ((mask & care) != want || !kernel.accepts(mask)) continue;
    any = true;
    always &= mask;
    ever |= mask;
  }
  PropagationResult result;
  if (!any) {
    result.conflict = true;
    return result;
  }
  for (FeatureId v = 0; v < model.size(); ++v) {
    if ((always >> v) & 1u) result.forced_selected.insert(v);
    if (!((ever >> v) & 1u)) result.forced_excluded.insert(v);
  }
  return result;
}

}  // namespace reference

}  // namespace fmselect
