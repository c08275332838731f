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

#ifndef PRIVDIFF_TOOLS_PRESETS_H_
#define PRIVDIFF_TOOLS_PRESETS_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "tools/config.h"

namespace privdiff::tools {

struct Preset {
  std::string_view name;
  std::string_view summary;
  std::string_view config;  // same text format as --config files
};

const std::vector<Preset>& Presets();

// Parses the named preset and checks that its parameters sit in the regime
// the preset demonstrates. A failed check is an Internal error.
absl::StatusOr<ExperimentConfig> LoadPreset(std::string_view name);

}  // namespace privdiff::tools

#endif  // PRIVDIFF_TOOLS_PRESETS_H_
