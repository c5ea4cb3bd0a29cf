#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "poag/game.hpp"

namespace poag {

/// State of the human-side POMDP embedding: the full state history, the
/// assistant's observation history, its last action, and theta.
struct AugmentedState {
  std::vector<int> state_history;          // s_0..s_t
  std::vector<int> assistant_obs_history;  // oA_1..oA_t
  int last_assistant_action = -1;          // -1 at t = 0
  int theta = 0;

  int t() const { return static_cast<int>(state_history.size()) - 1; }
  int current_state() const { return state_history.back(); }
  auto operator<=>(const AugmentedState&) const = default;
};

struct Belief {
  std::vector<std::pair<AugmentedState, double>> support;
};

/// Marginal of a belief over current world states.
std::vector<double> state_marginal(const Poag& game, const Belief& belief);
std::vector<double> theta_marginal(const Poag& game, const Belief& belief);

/// -sum p log p in nats, with 0 log 0 = 0.
double posterior_entropy(const std::vector<double>& dist);

/// Exact Bayes posterior over augmented states given the human's
/// action-observation history. Raises ZeroProbabilityHistory when the history
/// has no mass under (pi_a, the history's own actions).
Belief filter(const Poag& game, const Policy& pi_a,
              const History& human_history);

struct PolicyPriorPosterior {
  std::vector<double> candidate_posterior;
  Belief belief;  // joint over augmented states, marginalized over candidates
};

/// Joint Bayes posterior over (candidate assistant policy, augmented state).
PolicyPriorPosterior filter_with_policy_prior(
    const Poag& game, const std::vector<const Policy*>& candidates,
    const std::vector<double>& prior, const History& human_history);

/// Iterated-game helper: applies a pure update rule between iterations and
/// filters each iteration's history against the current candidate set.
using PolicyUpdateRule = std::function<std::vector<const Policy*>(
    const std::vector<const Policy*>& candidates, int iteration)>;

std::vector<PolicyPriorPosterior> filter_iterated(
    const Poag& game, std::vector<const Policy*> candidates,
    std::vector<double> prior, const PolicyUpdateRule& update,
    const std::vector<History>& per_iteration_histories);

/// Single-agent POMDP for the human with pi_a folded into the dynamics.
/// step(level, i, aH) is the exact joint law over (next augmented state,
/// human observation); transition_factored reports the Appendix-A style
/// pi_a * T * O^A factor (the marginal over human observations).
struct EmbeddedPomdp {
  const Poag* game = nullptr;
  std::vector<std::vector<AugmentedState>> levels;  // t = 0..horizon
  std::vector<std::pair<int, double>> initial;      // level-0 indices

  struct StepEntry {
    int next;  // index into levels[t+1]
    int human_obs;
    double p;
  };
  // step[t][i][aH] -> joint entries
  std::vector<std::vector<std::vector<std::vector<StepEntry>>>> step;

  std::vector<std::pair<int, double>> transition_factored(int t, int i,
                                                          int ah) const;
  /// Expected immediate reward with the assistant action averaged out.
  double expected_reward(int t, int i, int ah) const;
};

EmbeddedPomdp embed_pomdp(const Poag& game, const Policy& pi_a);

}  // namespace poag
