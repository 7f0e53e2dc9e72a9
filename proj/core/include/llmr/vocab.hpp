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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace llmr {

using TokenId = std::int32_t;
using TokenSeq = std::vector<TokenId>;

/// Closed token inventory shared by teacher and student. BOS and EOS are
/// ordinary vocabulary entries with reserved surface forms; BOS pads context
/// windows and EOS terminates sampled sequences.
class Vocab {
 public:
  static constexpr std::string_view kBosToken = "<s>";
  static constexpr std::string_view kEosToken = "</s>";

  /// Builds a vocab from the full id -> string table. The table must list
  /// every token exactly once and contain both reserved forms.
  explicit Vocab(std::vector<std::string> tokens);

  /// A synthetic vocab of `size` tokens: t0, t1, ... followed by BOS and EOS.
  static Vocab generic(int size);

  int size() const { return static_cast<int>(tokens_.size()); }
  TokenId bos() const { return bos_; }
  TokenId eos() const { return eos_; }

  const std::string& token_string(TokenId id) const;
  std::optional<TokenId> id_of(std::string_view token) const;

  bool contains(TokenId id) const { return id >= 0 && id < size(); }

  /// Throws ConfigError when `id` is outside [0, size).
  void require_valid(TokenId id) const;
  void require_valid(const TokenSeq& tokens) const;

  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocab& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId bos_ = -1;
  TokenId eos_ = -1;
};

}  // namespace llmr
