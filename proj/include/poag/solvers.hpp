#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "poag/blackwell.hpp"
#include "poag/game.hpp"

namespace poag {

/// Enumeration guard. `units` caps policy-space and alternative-space sizes,
/// `max_pairs` caps listed optimal pairs, `threads` sizes the worker pool
/// (0 = hardware concurrency). POAG_BUDGET overrides `units`.
struct Budget {
  uint64_t units = 3'000'000;
  uint64_t max_pairs = 200'000;
  int threads = 0;
};

Budget default_budget();

/// Per-player decision-node trees over own observation prefixes, built by
/// joint forward reachability (any actions). A node issues the player's
/// action at time t after observing the obs sequence along its path.
struct DecisionTrees {
  struct Node {
    int t = 0;
    int parent = -1;
    int obs_from_parent = -1;
  };
  struct Side {
    Player player;
    std::vector<Node> nodes;  // index 0 = root, grouped by increasing t
    std::vector<std::vector<std::pair<int, int>>> children;  // (obs, node)
    std::vector<std::vector<int>> by_time;
    /// Per time step: whether this player's action can affect transitions,
    /// rewards, or either player's observations from any reachable state.
    std::vector<bool> time_relevant;

    int child(int node, int obs) const;
    bool relevant(int node) const { return time_relevant[nodes[node].t]; }
    std::vector<Step> history_steps(int node,
                                    const std::vector<int>& actions) const;
  };
  Side human;
  Side assistant;
  std::vector<std::vector<bool>> reachable_states;  // [t][s]

  const Side& side(Player p) const {
    return p == Player::Human ? human : assistant;
  }
};

DecisionTrees build_trees(const Poag& game);

/// Deterministic policy as an action per tree node.
struct DetPolicy {
  Player player;
  std::vector<int> actions;
};

std::shared_ptr<TabularPolicy> to_policy(const Poag& game,
                                         const DecisionTrees& trees,
                                         const DetPolicy& det);

/// Exact best response against a fixed opponent policy by backward induction
/// over the responder's belief-weighted history tree.
struct BestResponse {
  std::shared_ptr<TabularPolicy> policy;
  double value = 0.0;
};

BestResponse best_response(const Poag& game, const Policy& fixed,
                           const Budget& budget = default_budget());

/// Hot-path variant: opponent given as a DetPolicy over its tree. Returns the
/// optimal value only.
double best_response_value(const Poag& game, const DecisionTrees& trees,
                           const DetPolicy& opponent);

struct PairFlags {
  bool action_level_interference = false;
  bool policy_level_interference = false;
  bool observes_naively = false;
  bool acts_naively = false;
};

struct SolvedPair {
  std::shared_ptr<Policy> human;
  std::shared_ptr<Policy> assistant;
  PairFlags flags;
};

struct SolveReport {
  double value = 0.0;
  std::vector<SolvedPair> pairs;
  uint64_t assistant_policies_enumerated = 0;
  uint64_t optimal_assistant_policies = 0;
};

/// Enumerates deterministic policy pairs up to canonical choices at decision
/// nodes whose action provably affects nothing, returns the optimal value and
/// all maximizing pairs with flags.
SolveReport optimal_pairs(const Poag& game,
                          const Budget& budget = default_budget());

/// Boltzmann-rational response to pi_a: at every positive-probability human
/// history, pi(a|h) proportional to exp(beta Q(h,a)) with Q solved by exact
/// backward induction under the Boltzmann policy itself. Discount exponents
/// are anchored at episode start.
std::shared_ptr<TabularPolicy> boltzmann_response(const Poag& game,
                                                  const Policy& pi_a,
                                                  double beta);

struct NaivetyResult {
  bool naive = false;
  std::shared_ptr<Policy> witness;  // non-interfering piA (observes_naively)
};

/// True iff pi_h is a best response to some deterministic assistant policy
/// that never plays a flagged interfering action.
NaivetyResult observes_naively(const Poag& game, const Policy& pi_h,
                               const Budget& budget = default_budget());

/// True iff at every positive-probability history where the human's action
/// cannot affect state transitions, pi_h randomizes only over actions that
/// myopically maximize immediate reward under some belief alpha over
/// assistant actions (decided per history by an LP), for some deterministic
/// assistant policy consistent with the history. `hint` policies are tried
/// first as belief candidates.
bool acts_naively(const Poag& game, const Policy& pi_h,
                  const std::vector<const Policy*>& hints = {},
                  const Budget& budget = default_budget());

struct PolicyLevelResult {
  bool interferes = false;
  /// Witness alternative as (assistant history, action) overrides at time t.
  std::vector<std::pair<History, int>> witness;
};

/// Def-4.6 check at time t: exists an effect-equivalent alternative partial
/// policy whose induced human-observation family over reachable states at
/// t+1 is strictly more informative for every enumerated deterministic human
/// policy.
PolicyLevelResult policy_interferes_policy_level(
    const Poag& game, const Policy& pi_a, int t,
    const Budget& budget = default_budget());

enum class ChannelDirection { AtoH, HtoA, Both };

struct ChannelResult {
  Poag game;
  int n_msg_a = 0;  // message alphabet A -> H (0 if absent)
  int n_msg_h = 0;  // message alphabet H -> A
  // Index maps into the channeled game; empty when that channel is absent.
  std::vector<std::vector<int>> assistant_action_index;  // [base][msg]
  std::vector<std::vector<int>> human_action_index;
  std::vector<std::vector<int>> human_obs_index;      // [base][msgA]
  std::vector<std::vector<int>> assistant_obs_index;  // [base][msgH]
};

/// Message spaces default to the sender's observation set (identity
/// injection); messages are transition- and reward-inert. Both directions of
/// `Both` are added simultaneously with respect to the original spaces.
ChannelResult add_channel(const Poag& game, ChannelDirection direction);

/// Tabular policy with an internal memory state.
struct VirtualStatePolicy {
  Player player = Player::Human;
  int n_actions = 0;
  int n_virtual = 1;
  int initial_virtual = 0;
  /// Distribution over (action, next virtual state), flattened
  /// action * n_virtual + v'.
  std::function<std::vector<double>(int v, const History& h)> rule;
};

/// History policy inducing the same distribution over (state, observation,
/// action) histories: pi-bar(A|h) = sum_v P(v|h) pi(A|v,h).
std::shared_ptr<Policy> flatten_virtual_policy(const Poag& game,
                                               const VirtualStatePolicy& vp);

/// Value of the cooperative full-information MDP relaxation; an upper bound
/// on the value of any policy pair.
double full_information_upper_bound(const Poag& game);

/// Existence check used by the theorem suite: is some non-interfering
/// assistant policy part of an optimal pair? V* comes from quotient
/// enumeration within budget, else the full-information bound certifies the
/// candidate when they coincide.
struct NonInterferingOptimalCheck {
  bool decided = false;
  bool exists = false;
  double optimal_value = 0.0;
  bool value_from_bound = false;
  std::shared_ptr<Policy> assistant;
  std::shared_ptr<Policy> human;
  bool human_acts_naively = false;
  bool honest_messaging = true;
};

NonInterferingOptimalCheck check_non_interfering_optimal(
    const Poag& game, const Budget& budget = default_budget(),
    const ChannelResult* channel = nullptr, bool want_naive_human = false);

}  // namespace poag
