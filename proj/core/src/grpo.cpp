// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace temporalex {

void ShapingConfig::validate() const {
  if (!(kappa > 1.0)) throw std::invalid_argument("kappa must be > 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(sigma_floor > 0.0)) throw std::invalid_argument("sigma_floor must be > 0");
}

void RolloutGroup::validate() const {
  if (rewards.size() < 2) throw std::invalid_argument("group needs at least two rollouts");
  if (rollouts.size() != rewards.size()) {
    throw std::invalid_argument("rewards and rollouts differ in count");
  }
  for (std::size_t i = 0; i < rollouts.size(); ++i) {
    const auto& r = rollouts[i];
    const std::size_t n = r.mask.size();
    const std::string where = "rollout " + std::to_string(i);
    if (r.new_logprobs.size() != n || r.old_logprobs.size() != n || r.entropies.size() != n ||
        (r.ref_logprobs && r.ref_logprobs->size() != n) ||
        (r.shaping_mask && r.shaping_mask->size() != n)) {
      throw std::invalid_argument(where + ": token arrays differ in length");
    }
    if (std::none_of(r.mask.begin(), r.mask.end(), [](bool b) { return b; })) {
      throw std::invalid_argument(where + ": mask has no agent tokens");
    }
  }
}

std::vector<double> group_advantages(std::span<const double> rewards, double sigma_floor) {
  if (rewards.size() < 2) throw std::invalid_argument("group advantages need G >= 2");
  const double g = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= g;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double std = std::sqrt(var / g);

  std::vector<double> out(rewards.size(), 0.0);
  if (std < sigma_floor) return out;
  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / std;
  return out;
}

double shaping_bonus(double advantage, double entropy, double alpha, double kappa) {
  return std::min(alpha * entropy, std::abs(advantage) / kappa);
}

std::vector<double> shape_advantages(std::span<const double> advantages,
                                     std::span<const double> entropies,
                                     const ShapingConfig& config,
                                     const std::vector<bool>* apply) {
  if (advantages.size() != entropies.size() || (apply && apply->size() != advantages.size())) {
    throw std::invalid_argument("advantages and entropies differ in length");
  }
  std::vector<double> out(advantages.begin(), advantages.end());
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (entropies[t] < 0.0) throw std::invalid_argument("entropy must be >= 0");
    if (apply && !(*apply)[t]) continue;
    out[t] += shaping_bonus(advantages[t], entropies[t], config.alpha, config.kappa);
  }
  return out;
}

std::vector<std::vector<double>> broadcast_advantage(std::span<const double> advantages,
                                                     const std::vector<std::vector<bool>>& masks) {
  if (advantages.size() != masks.size()) {
    throw std::invalid_argument("one advantage per rollout is required");
  }
  std::vector<std::vector<double>> out(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) {
    out[i].resize(masks[i].size(), 0.0);
    for (std::size_t t = 0; t < masks[i].size(); ++t) {
      if (masks[i][t]) out[i][t] = advantages[i];
    }
  }
  return out;
}

double kl_k3(double new_logprob, double ref_logprob) {
  const double d = ref_logprob - new_logprob;
  return std::exp(d) - d - 1.0;
}

double grpo_objective(const RolloutGroup& group,
                      const std::vector<std::vector<double>>& advantages,
                      const ShapingConfig& config) {
  if (advantages.size() != group.rollouts.size()) {
    throw std::invalid_argument("advantages do not match the group");
  }
  double total = 0.0;
  std::size_t tokens = 0;
  for (std::size_t i = 0; i < group.rollouts.size(); ++i) {
    const auto& r = group.rollouts[i];
    const auto& a = advantages[i];
    if (a.size() != r.mask.size() || r.new_logprobs.size() != r.mask.size() ||
        r.old_logprobs.size() != r.mask.size()) {
      throw std::invalid_argument("rollout " + std::to_string(i) + ": misaligned token arrays");
    }
    if (config.beta > 0.0 && (!r.ref_logprobs || r.ref_logprobs->size() != r.mask.size())) {
      throw std::invalid_argument("rollout " + std::to_string(i) +
                                  ": beta > 0 needs reference log-probs");
    }
    for (std::size_t t = 0; t < r.mask.size(); ++t) {
      if (!r.mask[t]) continue;
      const double ratio = std::exp(r.new_logprobs[t] - r.old_logprobs[t]);
      const double clipped = std::clamp(ratio, 1.0 - config.epsilon, 1.0 + config.epsilon);
      double term = std::min(ratio * a[t], clipped * a[t]);
      if (config.beta > 0.0) term -= config.beta * kl_k3(r.new_logprobs[t], (*r.ref_logprobs)[t]);
      total += term;
      ++tokens;
    }
  }
  if (tokens == 0) throw std::invalid_argument("group has no agent tokens");
  return total / static_cast<double>(tokens);
}

GroupAnalysis analyze_group(const RolloutGroup& group, const ShapingConfig& config) {
  config.validate();
  group.validate();
  GroupAnalysis out;
  out.advantages = group_advantages(group.rewards, config.sigma_floor);
  std::vector<std::vector<bool>> masks;
  for (const auto& r : group.rollouts) masks.push_back(r.mask);
  out.token_advantages = broadcast_advantage(out.advantages, masks);
  for (std::size_t i = 0; i < group.rollouts.size(); ++i) {
    const auto& r = group.rollouts[i];
    // Tool-response tokens stay at zero.
    std::vector<bool> apply = r.mask;
    if (r.shaping_mask) {
      for (std::size_t t = 0; t < apply.size(); ++t) apply[t] = apply[t] && (*r.shaping_mask)[t];
    }
    out.shaped_advantages.push_back(
        shape_advantages(out.token_advantages[i], r.entropies, config, &apply));
  }
  out.objective = grpo_objective(group, out.shaped_advantages, config);
  return out;
}

RolloutGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rewards") || !j.contains("rollouts")) {
    throw std::invalid_argument("group file needs 'rewards' and 'rollouts'");
  }
  RolloutGroup g;
  g.rewards = j["rewards"].get<std::vector<double>>();
  for (const auto& r : j["rollouts"]) {
    RolloutTokens t;
    t.new_logprobs = r.at("new_logprobs").get<std::vector<double>>();
    t.old_logprobs = r.at("old_logprobs").get<std::vector<double>>();
    if (r.contains("ref_logprobs") && !r["ref_logprobs"].is_null()) {
      t.ref_logprobs = r["ref_logprobs"].get<std::vector<double>>();
    }
    t.entropies = r.at("entropies").get<std::vector<double>>();
    for (const auto& b : r.at("mask")) t.mask.push_back(b.is_boolean() ? b.get<bool>() : b.get<int>() != 0);
    if (r.contains("shaping_mask") && !r["shaping_mask"].is_null()) {
      std::vector<bool> m;
      for (const auto& b : r["shaping_mask"]) m.push_back(b.is_boolean() ? b.get<bool>() : b.get<int>() != 0);
      t.shaping_mask = std::move(m);
    }
    g.rollouts.push_back(std::move(t));
  }
  return g;
}

nlohmann::json to_json(const GroupAnalysis& analysis) {
  return {{"advantages", analysis.advantages},
          {"token_advantages", analysis.token_advantages},
          {"shaped_advantages", analysis.shaped_advantages},
          {"objective", analysis.objective}};
}

}  // namespace temporalex
