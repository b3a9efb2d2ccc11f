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

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fmselect/dsl.h"

namespace fmselect {

bool label_less(std::string_view a, std::string_view b) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && is_digit(a[ie])) ++ie;
      while (je < b.size() && is_digit(b[je])) ++je;
      // Compare digit runs numerically: strip leading zeros, then length.
      std::string_view ra = a.substr(i, ie - i);
      std::string_view rb = b.substr(j, je - j);
      const auto trim = [](std::string_view r) {
        const auto nz = r.find_first_not_of('0');
        return nz == std::string_view::npos ? std::string_view{} : r.substr(nz);
      };
      const std::string_view ta = trim(ra);
      const std::string_view tb = trim(rb);
      if (ta.size() != tb.size()) return ta.size() < tb.size();
      if (ta != tb) return ta < tb;
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

namespace {

class Writer {
 public:
  explicit Writer(const FeatureModel& model) : model_(model) {}

  std::string run() {
    out_ << "model " << model_.name << "\n";
    if (auto root = model_.root()) {
      out_ << "\n";
      feature(*root, 0, "root");
    }
    if (!model_.attributes.empty()) {
      out_ << "\n";
      for (const auto& a : model_.attributes) out_ << "attribute " << a.name << " : int\n";
    }
    if (!model_.constraints.empty()) {
      std::vector<const NamedConstraint*> sorted;
      for (const auto& c : model_.constraints) sorted.push_back(&c);
      std::stable_sort(sorted.begin(), sorted.end(),
                       [](const NamedConstraint* x, const NamedConstraint* y) {
                         return label_less(x->label, y->label);
                       });
      out_ << "\n";
      for (const auto* c : sorted) {
        out_ << "constraint " << c->label << ": " << to_string(c->formula) << "\n";
      }
    }
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void feature(FeatureId id, int depth, std::string_view keyword) {
    indent(depth);
    out_ << keyword << " " << model_.name_of(id);
    const auto kids = model_.children(id);
    if (kids.empty()) {
      out_ << "\n";
      return;
    }
    out_ << " {\n";
    std::vector<bool> emitted_group(model_.groups.size(), false);
    for (FeatureId kid : kids) {
      const auto& f = model_.features[kid];
      if (!f.group) {
        feature(kid, depth + 1, to_string(f.variation));
        continue;
      }
      if (emitted_group[*f.group]) continue;
      emitted_group[*f.group] = true;
      const auto& g = model_.groups[*f.group];
      indent(depth + 1);
      out_ << to_string(g.kind) << " {\n";
      for (FeatureId m : g.members) {
        feature(m, depth + 2, to_string(model_.features[m].variation));
      }
      indent(depth + 1);
      out_ << "}\n";
    }
    indent(depth);
    out_ << "}\n";
  }

  const FeatureModel& model_;
  std::ostringstream out_;
};

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string serialize_model(const FeatureModel& model) {
  return Writer(model).run();
}

std::string export_dot(const FeatureModel& model,
                       const std::optional<Configuration>& highlight) {
  if (highlight) {
    Verdict verdict;
    try {
      verdict = is_valid_configuration(model, *highlight);
    } catch (const MissingAttribute& e) {
      throw InvalidHighlight("highlight configuration is incomplete: " +
                             std::string(e.what()));
    }
    if (!verdict.valid()) {
      std::string message = "highlight is not a valid configuration:";
      for (const auto& v : verdict.violations) {
        message += " " + std::string(to_string(v.kind)) + "(" + v.subject + ")";
      }
      throw InvalidHighlight(message);
    }
  }

  std::ostringstream out;
  out << "digraph " << quoted(model.name) << " {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box, style=rounded, fontname=\"Helvetica\"];\n";
  for (FeatureId id = 0; id < model.size(); ++id) {
    out << "  " << quoted(model.name_of(id));
    if (highlight && highlight->is_selected(id)) {
      out << " [style=\"rounded,filled\", fillcolor=\"#a6cee3\"]";
    }
    out << ";\n";
  }
  for (FeatureId id = 0; id < model.size(); ++id) {
    const auto& f = model.features[id];
    if (!f.parent || f.group) continue;
    out << "  " << quoted(model.name_of(*f.parent)) << " -> " << quoted(f.name)
        << " [arrowhead="
        << (f.variation == Variation::kMandatory ? "dot" : "odot") << "];\n";
  }
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    const auto& group = model.groups[g];
    const std::string_view kind = to_string(group.kind);
    out << "  subgraph cluster_g" << g << " {\n";
    out << "    label=\"" << kind << "\";\n";
    out << "    style=dashed;\n";
    for (FeatureId m : group.members) out << "    " << quoted(model.name_of(m)) << ";\n";
    out << "  }\n";
    for (FeatureId m : group.members) {
      out << "  " << quoted(model.name_of(group.parent)) << " -> "
          << quoted(model.name_of(m)) << " [arrowhead=none, label=\"" << kind
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace fmselect
