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

#include "llmr/vocab.hpp"

#include "llmr/errors.hpp"

namespace llmr {

Vocab::Vocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.size() < 2) {
    throw ConfigError("vocab must contain at least BOS and EOS");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    auto [it, inserted] = index_.emplace(tokens_[i], static_cast<TokenId>(i));
    if (!inserted) {
      throw ConfigError("duplicate vocab token: " + tokens_[i]);
    }
  }
  auto bos = index_.find(std::string(kBosToken));
  auto eos = index_.find(std::string(kEosToken));
  if (bos == index_.end() || eos == index_.end()) {
    throw ConfigError("vocab must contain the reserved tokens <s> and </s>");
  }
  bos_ = bos->second;
  eos_ = eos->second;
}

Vocab Vocab::generic(int size) {
  if (size < 2) throw ConfigError("generic vocab needs size >= 2");
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size - 2; ++i) tokens.push_back("t" + std::to_string(i));
  tokens.emplace_back(kBosToken);
  tokens.emplace_back(kEosToken);
  return Vocab(std::move(tokens));
}

const std::string& Vocab::token_string(TokenId id) const {
  require_valid(id);
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> Vocab::id_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocab::require_valid(TokenId id) const {
  if (!contains(id)) {
    throw ConfigError("invalid token id " + std::to_string(id) + " for vocab of size " +
                      std::to_string(size()));
  }
}

void Vocab::require_valid(const TokenSeq& tokens) const {
  for (TokenId id : tokens) require_valid(id);
}

}  // namespace llmr
