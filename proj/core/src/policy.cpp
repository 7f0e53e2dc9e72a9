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

#include "llmr/policy.hpp"

#include <algorithm>
#include <cmath>

#include "llmr/errors.hpp"

namespace llmr {

ContextKey make_context_key(const TokenSeq& conditioning, const TokenSeq& prefix,
                            int order, TokenId bos) {
  ContextKey key(static_cast<std::size_t>(order), bos);
  int slot = order - 1;
  for (auto it = prefix.rbegin(); it != prefix.rend() && slot >= 0; ++it) {
    key[static_cast<std::size_t>(slot--)] = *it;
  }
  for (auto it = conditioning.rbegin(); it != conditioning.rend() && slot >= 0; ++it) {
    key[static_cast<std::size_t>(slot--)] = *it;
  }
  return key;
}

std::vector<double>& ParamGrad::row(const ContextKey& key, int vocab_size) {
  auto it = rows.find(key);
  if (it == rows.end()) {
    it = rows.emplace(key, std::vector<double>(static_cast<std::size_t>(vocab_size), 0.0)).first;
  }
  return it->second;
}

void ParamGrad::add_scaled(const ParamGrad& other, double factor) {
  for (const auto& [key, src] : other.rows) {
    auto& dst = row(key, static_cast<int>(src.size()));
    for (std::size_t v = 0; v < src.size(); ++v) dst[v] += factor * src[v];
  }
}

void ParamGrad::scale(double factor) {
  for (auto& [key, r] : rows) {
    for (double& x : r) x *= factor;
  }
}

bool ParamGrad::all_finite() const {
  for (const auto& [key, r] : rows) {
    if (!llmr::all_finite(r)) return false;
  }
  return true;
}

TabularPolicy::TabularPolicy(std::shared_ptr<const Vocab> vocab, int order, bool trainable)
    : vocab_(std::move(vocab)), order_(order), trainable_(trainable) {
  if (!vocab_) throw ConfigError("policy requires a vocab");
  if (order_ < 0) throw ConfigError("policy order must be >= 0");
  default_logits_.assign(static_cast<std::size_t>(vocab_->size()), 0.0);
}

ContextKey TabularPolicy::context_key(const GenerationState& state) const {
  return make_context_key(state.conditioning, state.prefix, order_, vocab_->bos());
}

std::vector<double> TabularPolicy::logits(const GenerationState& state) const {
  vocab_->require_valid(state.conditioning);
  vocab_->require_valid(state.prefix);
  return logits_for_key(context_key(state));
}

std::vector<double> TabularPolicy::next_token_log_probs(const GenerationState& state) const {
  return log_softmax(logits(state));
}

std::vector<double> TabularPolicy::next_token_distribution(const GenerationState& state) const {
  return softmax(logits(state));
}

const std::vector<double>& TabularPolicy::logits_for_key(const ContextKey& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? default_logits_ : it->second;
}

void TabularPolicy::set_logits(ContextKey key, std::vector<double> row) {
  if (static_cast<int>(key.size()) != order_) {
    throw ConfigError("context key length does not match policy order");
  }
  vocab_->require_valid(key);
  if (static_cast<int>(row.size()) != vocab_->size()) {
    throw ConfigError("logit row length does not match vocab size");
  }
  if (!all_finite(row)) throw NumericError("logit row contains non-finite values");
  table_[std::move(key)] = std::move(row);
}

void TabularPolicy::set_default_logits(std::vector<double> row) {
  if (static_cast<int>(row.size()) != vocab_->size()) {
    throw ConfigError("default logit row length does not match vocab size");
  }
  if (!all_finite(row)) throw NumericError("default logit row contains non-finite values");
  default_logits_ = std::move(row);
}

void TabularPolicy::apply_gradient(const ParamGrad& grad, double learning_rate) {
  if (!trainable_) throw ConfigError("policy is not trainable");
  if (!std::isfinite(learning_rate)) throw NumericError("learning rate must be finite");
  if (!grad.all_finite()) throw NumericError("gradient contains non-finite entries");
  for (const auto& [key, g] : grad.rows) {
    if (static_cast<int>(g.size()) != vocab_->size()) {
      throw ConfigError("gradient row length does not match vocab size");
    }
    auto it = table_.find(key);
    if (it == table_.end()) {
      it = table_.emplace(key, default_logits_).first;
    }
    auto& row = it->second;
    for (std::size_t v = 0; v < g.size(); ++v) row[v] += learning_rate * g[v];
  }
}

TabularPolicy TabularPolicy::trainable_copy() const {
  TabularPolicy copy = *this;
  copy.trainable_ = true;
  return copy;
}

TabularPolicy TabularPolicy::frozen_copy() const {
  TabularPolicy copy = *this;
  copy.trainable_ = false;
  return copy;
}

bool same_vocab(const TabularPolicy& a, const TabularPolicy& b) {
  return a.vocab_ptr() == b.vocab_ptr() || a.vocab() == b.vocab();
}

TokenSeq sample_sequence(const TabularPolicy& policy, const TokenSeq& conditioning,
                         int max_len, Rng& rng) {
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  policy.vocab().require_valid(conditioning);
  GenerationState state{conditioning, {}};
  TokenSeq out;
  out.reserve(static_cast<std::size_t>(max_len));
  for (int t = 0; t < max_len; ++t) {
    auto probs = policy.next_token_distribution(state);
    auto token = static_cast<TokenId>(rng.categorical(probs));
    out.push_back(token);
    if (token == policy.vocab().eos()) break;
    state.prefix.push_back(token);
  }
  return out;
}

double sequence_log_prob(const TabularPolicy& policy, const TokenSeq& conditioning,
                         const TokenSeq& y) {
  if (y.empty()) throw ConfigError("cannot score an empty sequence");
  policy.vocab().require_valid(y);
  GenerationState state{conditioning, {}};
  double total = 0.0;
  for (TokenId token : y) {
    auto log_probs = policy.next_token_log_probs(state);
    total += log_probs[static_cast<std::size_t>(token)];
    state.prefix.push_back(token);
  }
  return total;
}

namespace {

struct BeamHyp {
  TokenSeq tokens;
  double log_prob = 0.0;
  bool done = false;
};

// Higher log probability first; exact ties prefer the lexicographically
// smaller token sequence.
bool beam_better(const BeamHyp& a, const BeamHyp& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.tokens < b.tokens;
}

}  // namespace

TokenSeq beam_search(const TabularPolicy& policy, const TokenSeq& conditioning,
                     int beam_width, int max_len) {
  if (beam_width < 1) throw ConfigError("beam_width must be >= 1");
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  policy.vocab().require_valid(conditioning);

  const int vocab_size = policy.vocab().size();
  const TokenId eos = policy.vocab().eos();
  std::vector<BeamHyp> beam{BeamHyp{}};

  for (int t = 0; t < max_len; ++t) {
    std::vector<BeamHyp> candidates;
    bool any_open = false;
    for (const auto& hyp : beam) {
      if (hyp.done) {
        candidates.push_back(hyp);
        continue;
      }
      any_open = true;
      GenerationState state{conditioning, hyp.tokens};
      auto log_probs = policy.next_token_log_probs(state);
      for (TokenId v = 0; v < vocab_size; ++v) {
        BeamHyp next{hyp.tokens, hyp.log_prob + log_probs[static_cast<std::size_t>(v)],
                     v == eos || t + 1 == max_len};
        next.tokens.push_back(v);
        candidates.push_back(std::move(next));
      }
    }
    if (!any_open) break;
    std::sort(candidates.begin(), candidates.end(), beam_better);
    if (static_cast<int>(candidates.size()) > beam_width) {
      candidates.resize(static_cast<std::size_t>(beam_width));
    }
    beam = std::move(candidates);
  }

  return std::min_element(beam.begin(), beam.end(),
                          [](const BeamHyp& a, const BeamHyp& b) { return beam_better(a, b); })
      ->tokens;
}

ParamGrad log_prob_gradient(const TabularPolicy& policy, const TokenSeq& conditioning,
                            const TokenSeq& y) {
  if (!policy.trainable()) throw ConfigError("policy is not trainable");
  if (y.empty()) throw ConfigError("cannot differentiate an empty sequence");
  policy.vocab().require_valid(y);

  ParamGrad grad;
  GenerationState state{conditioning, {}};
  for (TokenId token : y) {
    auto key = policy.context_key(state);
    auto probs = softmax(policy.logits_for_key(key));
    auto& row = grad.row(key, policy.vocab().size());
    for (std::size_t v = 0; v < probs.size(); ++v) row[v] -= probs[v];
    row[static_cast<std::size_t>(token)] += 1.0;
    state.prefix.push_back(token);
  }
  return grad;
}

TabularPolicy fit_mle(std::shared_ptr<const Vocab> vocab, int order,
                      const std::vector<TokenSeq>& corpus, double smoothing) {
  if (!vocab) throw ConfigError("fit_mle requires a vocab");
  if (corpus.empty()) throw ConfigError("fit_mle requires a non-empty corpus");
  if (smoothing < 0.0 || !std::isfinite(smoothing)) {
    throw ConfigError("smoothing must be finite and >= 0");
  }

  const int vocab_size = vocab->size();
  std::map<ContextKey, std::vector<double>> counts;
  for (const auto& seq : corpus) {
    vocab->require_valid(seq);
    TokenSeq extended = seq;
    extended.push_back(vocab->eos());
    TokenSeq prefix;
    for (TokenId token : extended) {
      auto key = make_context_key({}, prefix, order, vocab->bos());
      auto it = counts.find(key);
      if (it == counts.end()) {
        it = counts.emplace(key, std::vector<double>(static_cast<std::size_t>(vocab_size), 0.0))
                 .first;
      }
      it->second[static_cast<std::size_t>(token)] += 1.0;
      prefix.push_back(token);
    }
  }

  constexpr double kLogZeroFloor = -1e9;
  TabularPolicy model(vocab, order, /*trainable=*/false);
  for (auto& [key, count_row] : counts) {
    double total = 0.0;
    for (double c : count_row) total += c;
    std::vector<double> row(static_cast<std::size_t>(vocab_size));
    double log_denom = std::log(total + vocab_size * smoothing);
    for (std::size_t v = 0; v < row.size(); ++v) {
      double c = count_row[v] + smoothing;
      row[v] = c > 0.0 ? std::log(c) - log_denom : kLogZeroFloor;
    }
    model.set_logits(key, std::move(row));
  }
  return model;
}

}  // namespace llmr
