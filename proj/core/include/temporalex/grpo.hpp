// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace temporalex {

struct ShapingConfig {
  double alpha = 0.1;
  double kappa = 2.0;
  double epsilon = 0.2;
  double beta = 0.0;
  double sigma_floor = 1e-8;

  /// Throws std::invalid_argument unless kappa > 1, 0 < epsilon < 1,
  /// alpha >= 0, beta >= 0 and sigma_floor > 0.
  void validate() const;
};

/// Per-token arrays of one rollout. All arrays share a length; `mask` is
/// true for tokens the agent generated and false for tool-response tokens.
struct RolloutTokens {
  std::vector<double> new_logprobs;
  std::vector<double> old_logprobs;
  std::optional<std::vector<double>> ref_logprobs;
  std::vector<double> entropies;
  std::vector<bool> mask;
  /// Restricts shaping to these tokens when present (e.g. plan tokens).
  std::optional<std::vector<bool>> shaping_mask;

  std::size_t size() const { return mask.size(); }
};

struct RolloutGroup {
  std::vector<double> rewards;
  std::vector<RolloutTokens> rollouts;

  std::size_t size() const { return rewards.size(); }
  /// Throws std::invalid_argument on G < 2, a reward/rollout count
  /// mismatch, ragged token arrays, or a rollout with no agent tokens.
  void validate() const;
};

/// (R_i - mean) / max(population std, sigma_floor); all zeros when the
/// std is below the floor. Throws when fewer than two rewards are given.
std::vector<double> group_advantages(std::span<const double> rewards, double sigma_floor = 1e-8);

/// psi = min(alpha * H, |A| / kappa).
double shaping_bonus(double advantage, double entropy, double alpha, double kappa);

/// A + psi(H) per token. Entropies are treated as constants. Tokens with a
/// false entry in `apply` (when given) are left unchanged.
std::vector<double> shape_advantages(std::span<const double> advantages,
                                     std::span<const double> entropies,
                                     const ShapingConfig& config,
                                     const std::vector<bool>* apply = nullptr);

/// Every masked token of rollout i carries A_i; unmasked tokens carry 0.
std::vector<std::vector<double>> broadcast_advantage(std::span<const double> advantages,
                                                     const std::vector<std::vector<bool>>& masks);

/// exp(ref - new) - (ref - new) - 1, always >= 0.
double kl_k3(double new_logprob, double ref_logprob);

/// Token-level clipped surrogate summed over masked tokens of every
/// rollout, minus beta * KL, divided by the number of masked tokens.
double grpo_objective(const RolloutGroup& group,
                      const std::vector<std::vector<double>>& advantages,
                      const ShapingConfig& config);

struct GroupAnalysis {
  std::vector<double> advantages;
  std::vector<std::vector<double>> token_advantages;
  std::vector<std::vector<double>> shaped_advantages;
  double objective = 0.0;
};

/// Advantages, broadcast, shaping and the objective in one pass.
GroupAnalysis analyze_group(const RolloutGroup& group, const ShapingConfig& config);

/// {"rewards": [...], "rollouts": [{"new_logprobs", "old_logprobs",
///  "ref_logprobs"?, "entropies", "mask", "shaping_mask"?}]}
RolloutGroup group_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GroupAnalysis& analysis);

}  // namespace temporalex
