#pragma once

#include <cstdint>
#include <vector>

#include "poag/solvers.hpp"

namespace poag::detail {

/// Mixed-radix index over per-node action choices; nodes not listed keep the
/// values already present in the output vector.
struct EnumSpace {
  std::vector<int> nodes;
  std::vector<std::vector<int>> choices;  // allowed actions per listed node
  uint64_t count = 1;
  bool overflow = false;

  void push(int node, std::vector<int> allowed) {
    nodes.push_back(node);
    if (allowed.empty()) {
      count = 0;
    } else if (count > (uint64_t(1) << 62) / allowed.size()) {
      overflow = true;
    } else {
      count *= allowed.size();
    }
    choices.push_back(std::move(allowed));
  }

  void assign(uint64_t index, std::vector<int>& actions) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& c = choices[i];
      actions[nodes[i]] = c[index % c.size()];
      index /= c.size();
    }
  }
};

/// Enumeration space over one player's relevant nodes; irrelevant nodes are
/// pre-filled with `canonical`.
EnumSpace relevant_space(const DecisionTrees::Side& side, int n_actions);

/// Lexicographically-first action outside the flagged set (0 if all flagged).
int canonical_unflagged_action(int n_actions,
                               const std::vector<InterferingAction>& flagged);

/// Forward joint sweep to time `t`, then one expansion step recording the
/// joint law of (s_{t+1}, human obs at t+1). `override_at_t` optionally
/// replaces the assistant's actions at time-t nodes.
struct PushforwardFamily {
  std::vector<int> state_index;             // states with positive mass
  std::vector<std::vector<double>> rows;    // conditional P(oH | s_{t+1})
};

PushforwardFamily human_obs_pushforward(
    const Poag& game, const DecisionTrees& trees,
    const std::vector<int>& det_h, const std::vector<int>& det_a, int t,
    const std::vector<int>* override_at_t);

/// Maps a (deterministic-on-tree) policy onto tree-node actions; throws
/// DimensionMismatch when a reachable node gets a non-point distribution and
/// UndefinedHistory propagates when the policy is not total on the tree.
std::vector<int> det_actions_on_tree(const Poag& game,
                                     const DecisionTrees::Side& side,
                                     const Policy& policy);

/// True when both the transition kernel and the joint observation kernel are
/// independent of the human action everywhere; then human-policy choice
/// cannot influence observation pushforwards.
bool human_action_inert(const Poag& game);

}  // namespace poag::detail
