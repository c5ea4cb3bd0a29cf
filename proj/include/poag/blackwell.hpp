#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poag/game.hpp"

namespace poag {

/// For a fixed context, one distribution over a shared observation set per
/// state in `state_index`.
struct ObservationFamily {
  std::vector<std::string> state_index;
  std::vector<std::string> obs_ids;
  std::vector<std::vector<double>> dists;  // [state][obs]

  int n_states() const { return static_cast<int>(state_index.size()); }
  int n_obs() const { return static_cast<int>(obs_ids.size()); }
};

/// Column-stochastic garbling: entries[out][in] = P(emit `out` | input `in`).
struct GarblingMatrix {
  std::vector<std::string> obs_ids;
  std::vector<std::vector<double>> entries;
};

struct InformativenessResult {
  bool holds = false;
  std::optional<GarblingMatrix> witness;
};

/// True iff {F >= 0, columns sum to 1, F * P(.|s) = Phat(.|s) for all s} is
/// feasible: Phat is at most as informative as P. Families over different
/// observation alphabets are embedded in the disjoint union. `exact` switches
/// to rational arithmetic.
InformativenessResult at_most_as_informative(const ObservationFamily& phat,
                                             const ObservationFamily& p,
                                             bool exact = false);

/// at_most(phat, p) and not at_most(p, phat).
bool strictly_more_informative(const ObservationFamily& p,
                               const ObservationFamily& phat,
                               bool exact = false);

/// Human-observation family of assistant action aa: s' -> O^H(.|s', ah, aa),
/// indexed over all states.
ObservationFamily human_obs_family(const Poag& game, int ah, int aa);

struct InterferingAction {
  int action;
  int witness;  // equal-effect action whose family is strictly more informative
};

/// Def-3.2 effect equality: identical transition rows and rewards for every
/// (s, aH, theta), exact within 1e-12.
bool same_effect(const Poag& game, int aa1, int aa2);

/// All observation-interfering assistant actions with witnesses
/// (lexicographically first witness per action).
std::vector<InterferingAction> interfering_actions(const Poag& game,
                                                   bool exact = false);

struct ActionLevelResult {
  bool interferes = false;
  std::optional<History> offending_history;
  std::optional<int> offending_action;
};

/// True iff any history up to the horizon (reachable or not) maps to positive
/// probability on a flagged action. `max_histories` guards the scan.
ActionLevelResult policy_interferes_action_level(
    const Poag& game, const Policy& pi_a,
    const std::vector<InterferingAction>& flagged,
    uint64_t max_histories = 4'000'000);

ActionLevelResult policy_interferes_action_level(const Poag& game,
                                                 const Policy& pi_a);

}  // namespace poag
