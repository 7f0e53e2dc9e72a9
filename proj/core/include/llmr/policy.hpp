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

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "llmr/numeric.hpp"
#include "llmr/vocab.hpp"

namespace llmr {

/// Conditioning prefix plus generated tokens. Appending a token is the only
/// state transition.
struct GenerationState {
  TokenSeq conditioning;
  TokenSeq prefix;

  GenerationState advanced(TokenId next) const {
    GenerationState s{conditioning, prefix};
    s.prefix.push_back(next);
    return s;
  }
};

/// The last `order` tokens of conditioning ++ prefix, left-padded with BOS.
using ContextKey = TokenSeq;

ContextKey make_context_key(const TokenSeq& conditioning, const TokenSeq& prefix,
                            int order, TokenId bos);

/// Sparse gradient over policy logits: one dense vocab-length row per visited
/// context.
struct ParamGrad {
  std::map<ContextKey, std::vector<double>> rows;

  std::vector<double>& row(const ContextKey& key, int vocab_size);
  void add_scaled(const ParamGrad& other, double factor);
  void scale(double factor);
  bool all_finite() const;
  bool empty() const { return rows.empty(); }
};

/// Order-k categorical sequence model with a context-indexed logit table.
/// Unseen contexts fall back to a shared default logit row, so the policy is
/// total over all states. Plays both teacher and student.
class TabularPolicy {
 public:
  TabularPolicy(std::shared_ptr<const Vocab> vocab, int order, bool trainable = true);

  const Vocab& vocab() const { return *vocab_; }
  const std::shared_ptr<const Vocab>& vocab_ptr() const { return vocab_; }
  int order() const { return order_; }
  bool trainable() const { return trainable_; }

  ContextKey context_key(const GenerationState& state) const;

  /// Logit vector for the state's context; validates every token id.
  std::vector<double> logits(const GenerationState& state) const;

  std::vector<double> next_token_log_probs(const GenerationState& state) const;
  std::vector<double> next_token_distribution(const GenerationState& state) const;

  /// Table row for a context key, or the default row when unseen.
  const std::vector<double>& logits_for_key(const ContextKey& key) const;

  void set_logits(ContextKey key, std::vector<double> row);
  void set_default_logits(std::vector<double> row);
  const std::vector<double>& default_logits() const { return default_logits_; }
  const std::map<ContextKey, std::vector<double>>& table() const { return table_; }

  /// Gradient ascent step: logit[c][v] += learning_rate * grad[c][v].
  /// Rows absent from the table are materialized from the default row first.
  void apply_gradient(const ParamGrad& grad, double learning_rate);

  TabularPolicy trainable_copy() const;
  TabularPolicy frozen_copy() const;

 private:
  std::shared_ptr<const Vocab> vocab_;
  int order_;
  bool trainable_;
  std::vector<double> default_logits_;
  std::map<ContextKey, std::vector<double>> table_;
};

/// True when both policies index the same token inventory.
bool same_vocab(const TabularPolicy& a, const TabularPolicy& b);

/// Ancestral sampling; stops after EOS or max_len tokens. EOS, when emitted,
/// is the final token of the result.
TokenSeq sample_sequence(const TabularPolicy& policy, const TokenSeq& conditioning,
                         int max_len, Rng& rng);

/// Sum over positions of the log probability of each emitted token.
double sequence_log_prob(const TabularPolicy& policy, const TokenSeq& conditioning,
                         const TokenSeq& y);

/// Length-synchronous beam search over sequence log probability. A hypothesis
/// is complete once it emits EOS or reaches max_len. Ties break toward the
/// lexicographically smaller token sequence, so width 1 is greedy decoding
/// with lowest-id tie breaks.
TokenSeq beam_search(const TabularPolicy& policy, const TokenSeq& conditioning,
                     int beam_width, int max_len);

/// Exact gradient of sequence_log_prob with respect to every table logit:
/// grad[c][v] = count(v emitted at c) - sum over visits of softmax(c)[v].
ParamGrad log_prob_gradient(const TabularPolicy& policy, const TokenSeq& conditioning,
                            const TokenSeq& y);

/// Maximum-likelihood fit with add-epsilon smoothing. Each corpus sequence is
/// counted with an implicit EOS appended. With smoothing == 0, pairs never
/// observed at an observed context get a -1e9 logit floor instead of -inf.
TabularPolicy fit_mle(std::shared_ptr<const Vocab> vocab, int order,
                      const std::vector<TokenSeq>& corpus, double smoothing);

}  // namespace llmr
