// Copyright 2026 The privdiff Authors
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

#include "tools/config.h"

#include <fstream>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "boost/property_tree/ini_parser.hpp"
#include "boost/property_tree/ptree.hpp"
#include "privdiff/status_macros.h"

namespace privdiff::tools {
namespace {

using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& AllowedKeys() {
  static const auto* keys = new std::map<std::string, std::set<std::string>>{
      {"graph", {"source", "n", "p", "path", "seed"}},
      {"params", {"beta1", "delta1", "beta2", "delta2"}},
      {"scheme", {"type", "r11", "r12", "r21", "r22", "gamma1", "gamma2"}},
      {"seeding", {"mode", "c1", "c2", "k1", "k2"}},
      {"run", {"t_end", "dt", "seed", "runs", "grid_points", "window_start"}},
      {"phase", {"axes", "steps", "lo1", "hi1", "lo2", "hi2"}},
  };
  return *keys;
}

// Typed access to one section, remembering which keys were present.
class Section {
 public:
  Section(const ptree* tree, std::string name)
      : tree_(tree), name_(std::move(name)) {}

  bool Has(const std::string& key) const {
    return tree_ != nullptr && tree_->find(key) != tree_->not_found();
  }

  absl::StatusOr<std::string> String(const std::string& key) const {
    if (!Has(key)) return Missing(key);
    return tree_->get<std::string>(key);
  }

  absl::StatusOr<double> Double(const std::string& key) const {
    PRIVDIFF_ASSIGN_OR_RETURN(std::string text, String(key));
    double value = 0.0;
    if (!absl::SimpleAtod(text, &value)) return Bad(key, text, "a number");
    return value;
  }
  absl::StatusOr<double> Double(const std::string& key, double fallback) const {
    return Has(key) ? Double(key) : fallback;
  }

  absl::StatusOr<uint64_t> Unsigned(const std::string& key) const {
    PRIVDIFF_ASSIGN_OR_RETURN(std::string text, String(key));
    uint64_t value = 0;
    if (!absl::SimpleAtoi(text, &value)) {
      return Bad(key, text, "a non-negative integer");
    }
    return value;
  }
  absl::StatusOr<uint64_t> Unsigned(const std::string& key,
                                    uint64_t fallback) const {
    return Has(key) ? Unsigned(key) : fallback;
  }

 private:
  absl::Status Missing(const std::string& key) const {
    return absl::InvalidArgumentError(
        absl::StrCat("config: [", name_, "] ", key, " is required"));
  }
  absl::Status Bad(const std::string& key, const std::string& text,
                   const char* what) const {
    return absl::InvalidArgumentError(absl::StrCat(
        "config: [", name_, "] ", key, " = '", text, "' is not ", what));
  }

  const ptree* tree_;
  std::string name_;
};

absl::Status CheckKeys(const ptree& root) {
  for (const auto& [section, body] : root) {
    auto it = AllowedKeys().find(section);
    if (it == AllowedKeys().end()) {
      if (body.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("config: key '", section, "' outside any section"));
      }
      return absl::InvalidArgumentError(
          absl::StrCat("config: unknown section [", section, "]"));
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "config: unknown key '", key, "' in [", section, "] (expected one of ",
            absl::StrJoin(it->second, ", "), ")"));
      }
    }
  }
  return absl::OkStatus();
}

Section Get(const ptree& root, const std::string& name) {
  auto it = root.find(name);
  return Section(it == root.not_found() ? nullptr : &it->second, name);
}

absl::StatusOr<GraphSource> ParseGraph(const Section& s) {
  GraphSource source;
  std::string kind = "complete";
  if (s.Has("source")) {
    PRIVDIFF_ASSIGN_OR_RETURN(kind, s.String("source"));
  }
  if (kind == "edge_list") {
    source.kind = GraphSource::Kind::kEdgeList;
    PRIVDIFF_ASSIGN_OR_RETURN(source.path, s.String("path"));
    return source;
  }
  using K = GeneratorSpec::Kind;
  if (kind == "complete") {
    source.generator.kind = K::kComplete;
  } else if (kind == "ring") {
    source.generator.kind = K::kRing;
  } else if (kind == "star") {
    source.generator.kind = K::kStar;
  } else if (kind == "erdos_renyi") {
    source.generator.kind = K::kErdosRenyi;
    PRIVDIFF_ASSIGN_OR_RETURN(source.generator.p, s.Double("p"));
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "config: [graph] source '", kind,
        "' is not one of complete, ring, star, erdos_renyi, edge_list"));
  }
  PRIVDIFF_ASSIGN_OR_RETURN(source.generator.n, s.Unsigned("n"));
  PRIVDIFF_ASSIGN_OR_RETURN(source.seed, s.Unsigned("seed", 1));
  return source;
}

absl::StatusOr<SchemeSpec> ParseSchemeSpec(const Section& s,
                                           std::optional<PrivacyScheme>& built) {
  SchemeSpec spec;
  std::string type = "oblivious";
  if (s.Has("type")) {
    PRIVDIFF_ASSIGN_OR_RETURN(type, s.String("type"));
  }
  if (type == "oblivious") {
    spec.type = SchemeSpec::Type::kOblivious;
  } else if (type == "perfect") {
    spec.type = SchemeSpec::Type::kPerfect;
    PRIVDIFF_ASSIGN_OR_RETURN(spec.gamma1, s.Double("gamma1"));
    PRIVDIFF_ASSIGN_OR_RETURN(spec.gamma2, s.Double("gamma2"));
    PRIVDIFF_ASSIGN_OR_RETURN(auto scheme,
                              PrivacyScheme::Perfect(spec.gamma1, spec.gamma2));
    built = scheme;
  } else if (type == "general") {
    spec.type = SchemeSpec::Type::kGeneral;
    PRIVDIFF_ASSIGN_OR_RETURN(double r11, s.Double("r11"));
    PRIVDIFF_ASSIGN_OR_RETURN(double r12, s.Double("r12"));
    PRIVDIFF_ASSIGN_OR_RETURN(double r21, s.Double("r21"));
    PRIVDIFF_ASSIGN_OR_RETURN(double r22, s.Double("r22"));
    PRIVDIFF_ASSIGN_OR_RETURN(auto scheme, PrivacyScheme::Create(r11, r12, r21, r22));
    built = scheme;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "config: [scheme] type '", type, "' is not one of general, perfect, oblivious"));
  }
  return spec;
}

absl::StatusOr<SeedingSpec> ParseSeeding(const Section& s) {
  SeedingSpec spec;
  std::string mode = "uniform";
  if (s.Has("mode")) {
    PRIVDIFF_ASSIGN_OR_RETURN(mode, s.String("mode"));
  }
  if (mode == "uniform") {
    spec.mode = SeedingSpec::Mode::kUniform;
  } else if (mode == "random_subset") {
    spec.mode = SeedingSpec::Mode::kRandomSubset;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "config: [seeding] mode '", mode, "' is not one of uniform, random_subset"));
  }
  PRIVDIFF_ASSIGN_OR_RETURN(spec.c1, s.Double("c1", spec.c1));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.c2, s.Double("c2", spec.c2));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.k1, s.Unsigned("k1", spec.k1));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.k2, s.Unsigned("k2", spec.k2));
  return spec;
}

absl::StatusOr<RunSpec> ParseRun(const Section& s) {
  RunSpec spec;
  PRIVDIFF_ASSIGN_OR_RETURN(spec.t_end, s.Double("t_end", spec.t_end));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.dt, s.Double("dt", spec.dt));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.seed, s.Unsigned("seed", spec.seed));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.runs, s.Unsigned("runs", spec.runs));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.grid_points,
                            s.Unsigned("grid_points", spec.grid_points));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.window_start,
                            s.Double("window_start", spec.window_start));
  if (!(spec.t_end > 0.0)) {
    return absl::InvalidArgumentError("config: [run] t_end must be positive");
  }
  if (spec.dt < 0.0) {
    return absl::InvalidArgumentError("config: [run] dt must be non-negative");
  }
  if (spec.runs < 1) {
    return absl::InvalidArgumentError("config: [run] runs must be at least 1");
  }
  return spec;
}

absl::StatusOr<PhaseSpec> ParsePhase(const Section& s) {
  PhaseSpec spec;
  std::string axes = "gamma";
  if (s.Has("axes")) {
    PRIVDIFF_ASSIGN_OR_RETURN(axes, s.String("axes"));
  }
  if (axes == "gamma") {
    spec.axes = PhaseSpec::Axes::kGamma;
  } else if (axes == "sigma") {
    spec.axes = PhaseSpec::Axes::kSigma;
    spec.hi1 = spec.hi2 = 2.0;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("config: [phase] axes '", axes, "' is not one of gamma, sigma"));
  }
  PRIVDIFF_ASSIGN_OR_RETURN(spec.steps, s.Unsigned("steps", spec.steps));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.lo1, s.Double("lo1", spec.lo1));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.hi1, s.Double("hi1", spec.hi1));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.lo2, s.Double("lo2", spec.lo2));
  PRIVDIFF_ASSIGN_OR_RETURN(spec.hi2, s.Double("hi2", spec.hi2));
  if (spec.steps < 1 || !(spec.lo1 < spec.hi1) || !(spec.lo2 < spec.hi2)) {
    return absl::InvalidArgumentError(
        "config: [phase] needs steps >= 1 and lo < hi on both axes");
  }
  return spec;
}

}  // namespace

absl::StatusOr<ExperimentConfig> ParseConfig(std::istream& in,
                                             const std::string& name) {
  ptree root;
  try {
    boost::property_tree::ini_parser::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config ", name, ": line ", e.line(), ": ", e.message()));
  }
  PRIVDIFF_RETURN_IF_ERROR(CheckKeys(root));

  PRIVDIFF_ASSIGN_OR_RETURN(GraphSource graph, ParseGraph(Get(root, "graph")));
  const Section p = Get(root, "params");
  PRIVDIFF_ASSIGN_OR_RETURN(double beta1, p.Double("beta1"));
  PRIVDIFF_ASSIGN_OR_RETURN(double delta1, p.Double("delta1"));
  PRIVDIFF_ASSIGN_OR_RETURN(double beta2, p.Double("beta2"));
  PRIVDIFF_ASSIGN_OR_RETURN(double delta2, p.Double("delta2"));
  PRIVDIFF_ASSIGN_OR_RETURN(DiffusionParams params,
                            DiffusionParams::Create(beta1, delta1, beta2, delta2));
  std::optional<PrivacyScheme> built;
  PRIVDIFF_ASSIGN_OR_RETURN(SchemeSpec scheme_spec,
                            ParseSchemeSpec(Get(root, "scheme"), built));
  AnyScheme scheme = built.has_value() ? AnyScheme(*built)
                                       : AnyScheme(MakeObliviousScheme());
  PRIVDIFF_ASSIGN_OR_RETURN(SeedingSpec seeding, ParseSeeding(Get(root, "seeding")));
  PRIVDIFF_ASSIGN_OR_RETURN(RunSpec run, ParseRun(Get(root, "run")));
  PRIVDIFF_ASSIGN_OR_RETURN(PhaseSpec phase, ParsePhase(Get(root, "phase")));
  return ExperimentConfig{name,    std::move(graph), params, scheme_spec, scheme,
                          seeding, run,              phase};
}

absl::StatusOr<ExperimentConfig> LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open config ", path));
  return ParseConfig(in, path);
}

absl::StatusOr<Graph> BuildGraph(const GraphSource& source) {
  if (source.kind == GraphSource::Kind::kEdgeList) {
    PRIVDIFF_ASSIGN_OR_RETURN(EdgeListLoad load, LoadEdgeListFile(source.path));
    return std::move(load.graph);
  }
  return GenerateGraph(source.generator, source.seed);
}

}  // namespace privdiff::tools
