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

#ifndef PRIVDIFF_STATUS_MACROS_H_
#define PRIVDIFF_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define PRIVDIFF_STATUS_CONCAT_INNER_(x, y) x##y
#define PRIVDIFF_STATUS_CONCAT_(x, y) PRIVDIFF_STATUS_CONCAT_INNER_(x, y)

#define PRIVDIFF_RETURN_IF_ERROR(expr)             \
  do {                                             \
    const absl::Status _privdiff_status = (expr);  \
    if (!_privdiff_status.ok()) {                  \
      return _privdiff_status;                     \
    }                                              \
  } while (0)

#define PRIVDIFF_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                    \
  if (!statusor.ok()) {                                       \
    return statusor.status();                                 \
  }                                                           \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr) and either assigns the value to
// `lhs` or returns the error status from the enclosing function.
#define PRIVDIFF_ASSIGN_OR_RETURN(lhs, rexpr) \
  PRIVDIFF_ASSIGN_OR_RETURN_IMPL_(            \
      PRIVDIFF_STATUS_CONCAT_(_privdiff_statusor_, __LINE__), lhs, rexpr)

#endif  // PRIVDIFF_STATUS_MACROS_H_
