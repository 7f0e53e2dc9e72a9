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

#include "llmr/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "llmr/errors.hpp"

namespace llmr {

namespace {

constexpr char kKeySeparator = '\x1f';

std::string key_to_string(const ContextKey& key, const Vocab& vocab) {
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i > 0) out.push_back(kKeySeparator);
    out += vocab.token_string(key[i]);
  }
  return out;
}

ContextKey key_from_string(const std::string& text, const Vocab& vocab, int order) {
  ContextKey key;
  if (order == 0) {
    if (!text.empty()) throw ConfigError("order-0 model has a non-empty context key");
    return key;
  }
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, kKeySeparator)) {
    auto id = vocab.id_of(part);
    if (!id) throw ConfigError("context key token not in vocab: " + part);
    key.push_back(*id);
  }
  if (static_cast<int>(key.size()) != order) {
    throw ConfigError("context key length does not match model order");
  }
  return key;
}

}  // namespace

std::string model_to_json(const TabularPolicy& policy) {
  nlohmann::ordered_json doc;
  doc["vocab"] = policy.vocab().tokens();
  doc["order"] = policy.order();
  doc["default_logits"] = policy.default_logits();
  nlohmann::ordered_json table = nlohmann::ordered_json::object();
  for (const auto& [key, row] : policy.table()) {
    table[key_to_string(key, policy.vocab())] = row;
  }
  doc["table"] = std::move(table);
  return doc.dump(2) + "\n";
}

TabularPolicy model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("model document is not valid JSON: ") + e.what());
  }
  try {
    auto vocab = std::make_shared<const Vocab>(doc.at("vocab").get<std::vector<std::string>>());
    int order = doc.at("order").get<int>();
    TabularPolicy policy(vocab, order);
    policy.set_default_logits(doc.at("default_logits").get<std::vector<double>>());
    for (const auto& [key_text, row] : doc.at("table").items()) {
      policy.set_logits(key_from_string(key_text, *vocab, order),
                        row.get<std::vector<double>>());
    }
    return policy;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed model document: ") + e.what());
  }
}

void save_model(const TabularPolicy& policy, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open model file for writing: " + path);
  out << model_to_json(policy);
  if (!out) throw IoError("failed to write model file: " + path);
}

TabularPolicy load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace llmr
