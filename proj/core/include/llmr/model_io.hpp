// Copyright 2026 The llmr Authors.
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

#pragma once

#include <string>

#include "llmr/policy.hpp"

namespace llmr {

// Model document: {"vocab": [...], "order": k, "default_logits": [...],
// "table": {"tok\x1ftok...": [...]}}. Context keys join token strings with
// U+001F. Round trips are value-exact.

std::string model_to_json(const TabularPolicy& policy);
TabularPolicy model_from_json(const std::string& text);

void save_model(const TabularPolicy& policy, const std::string& path);
TabularPolicy load_model(const std::string& path);

}  // namespace llmr
