#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poag/errors.hpp"

namespace poag {

enum class Player { Human, Assistant };

inline Player other(Player p) {
  return p == Player::Human ? Player::Assistant : Player::Human;
}

/// Finite two-player common-payoff game with joint observations, a static
/// reward parameter theta observed only through the observation kernel, and
/// an episodic truncation horizon. All tables are indexed by position in the
/// id vectors; rows are sparse (missing mass is zero).
struct Poag {
  std::vector<std::string> states;
  std::vector<std::string> human_actions;
  std::vector<std::string> assistant_actions;
  std::vector<std::string> thetas;
  std::vector<std::string> human_obs;
  std::vector<std::string> assistant_obs;

  struct ObsEntry {
    int oh = 0, oa = 0;
    double p = 0.0;
  };

  // transition[ctx(s, aH, aA)] -> sorted sparse distribution over next states
  std::vector<std::vector<std::pair<int, double>>> transition;
  // reward[ctx(s, aH, aA) * |thetas| + th]
  std::vector<double> reward;
  // obs_kernel[ctx(s', aH, aA)] -> joint distribution over (oH, oA)
  std::vector<std::vector<ObsEntry>> obs_kernel;
  // initial distribution over (s0, theta)
  std::vector<std::tuple<int, int, double>> initial;

  double gamma = 1.0;
  int horizon = 1;

  int n_states() const { return static_cast<int>(states.size()); }
  int n_human_actions() const { return static_cast<int>(human_actions.size()); }
  int n_assistant_actions() const {
    return static_cast<int>(assistant_actions.size());
  }
  int n_thetas() const { return static_cast<int>(thetas.size()); }
  int n_obs(Player p) const {
    return static_cast<int>(p == Player::Human ? human_obs.size()
                                               : assistant_obs.size());
  }
  int n_actions(Player p) const {
    return p == Player::Human ? n_human_actions() : n_assistant_actions();
  }
  const std::vector<std::string>& action_ids(Player p) const {
    return p == Player::Human ? human_actions : assistant_actions;
  }
  const std::vector<std::string>& obs_ids(Player p) const {
    return p == Player::Human ? human_obs : assistant_obs;
  }

  std::size_t ctx(int s, int ah, int aa) const {
    return (static_cast<std::size_t>(s) * human_actions.size() + ah) *
               assistant_actions.size() +
           aa;
  }
  std::size_t n_ctx() const {
    return states.size() * human_actions.size() * assistant_actions.size();
  }

  const std::vector<std::pair<int, double>>& transition_row(int s, int ah,
                                                            int aa) const {
    return transition[ctx(s, ah, aa)];
  }
  const std::vector<ObsEntry>& obs_row(int sp, int ah, int aa) const {
    return obs_kernel[ctx(sp, ah, aa)];
  }
  double reward_at(int s, int ah, int aa, int th) const {
    return reward[ctx(s, ah, aa) * thetas.size() + th];
  }
  void set_reward(int s, int ah, int aa, int th, double r) {
    reward[ctx(s, ah, aa) * thetas.size() + th] = r;
  }

  /// Allocates empty transition/obs/reward tables for the current id sets.
  void allocate_tables();

  int state_index(const std::string& id) const;
  int action_index(Player p, const std::string& id) const;
  int obs_index(Player p, const std::string& id) const;
  int theta_index(const std::string& id) const;
};

struct Violation {
  std::string where;
  std::string message;
};

/// Empty iff every Poag invariant holds: distributions sum to 1 within 1e-9
/// with no negative mass, transition and obs_kernel rows present for every
/// context, gamma in [0,1], horizon >= 1.
std::vector<Violation> validate(const Poag& game);

/// One completed step as seen by one player: the action it took at time t and
/// the observation it received entering time t+1.
struct Step {
  int action = 0;
  int observation = 0;
  auto operator<=>(const Step&) const = default;
};

struct History {
  Player player = Player::Human;
  std::vector<Step> steps;

  int length() const { return static_cast<int>(steps.size()); }
  History extended(int action, int observation) const {
    History h = *this;
    h.steps.push_back(Step{action, observation});
    return h;
  }
  auto operator<=>(const History&) const = default;
};

/// History-conditioned action rule for one player. Implementations must be
/// total over histories reachable within the horizon; querying outside the
/// defined domain raises UndefinedHistory.
class Policy {
 public:
  explicit Policy(Player player) : player_(player) {}
  virtual ~Policy() = default;

  Player player() const { return player_; }
  /// Distribution over the player's actions (dense, sums to 1).
  virtual std::vector<double> action_dist(const History& h) const = 0;
  virtual bool deterministic() const = 0;

 private:
  Player player_;
};

class ConstantPolicy : public Policy {
 public:
  ConstantPolicy(Player player, std::vector<double> dist);
  /// Point mass on one action out of n_actions.
  ConstantPolicy(Player player, int action, int n_actions);

  std::vector<double> action_dist(const History&) const override {
    return dist_;
  }
  bool deterministic() const override { return deterministic_; }

 private:
  std::vector<double> dist_;
  bool deterministic_;
};

class TabularPolicy : public Policy {
 public:
  TabularPolicy(Player player, std::map<std::vector<Step>, std::vector<double>> rule,
                std::optional<std::vector<double>> fallback = std::nullopt);

  std::vector<double> action_dist(const History& h) const override;
  bool deterministic() const override { return deterministic_; }

  const std::map<std::vector<Step>, std::vector<double>>& rule() const {
    return rule_;
  }
  const std::optional<std::vector<double>>& fallback() const {
    return fallback_;
  }

 private:
  std::map<std::vector<Step>, std::vector<double>> rule_;
  std::optional<std::vector<double>> fallback_;
  bool deterministic_;
};

struct Trajectory {
  int theta = 0;
  struct StepRecord {
    int state;
    int human_action;
    int assistant_action;
    int human_obs;
    int assistant_obs;
    double reward;
  };
  std::vector<StepRecord> steps;
};

/// Exact E[sum_t gamma^t R] under the pair by forward dynamic programming
/// over (state, theta, joint history) within the horizon. No sampling.
double evaluate_pair(const Poag& game, const Policy& pi_h, const Policy& pi_a);

/// One trajectory of the induced process; identical seed and inputs give an
/// identical trajectory.
Trajectory sample_trajectory(const Poag& game, const Policy& pi_h,
                             const Policy& pi_a, uint64_t seed);

/// Marginal observation distribution for one player in context (s', aH, aA).
std::vector<double> marginal_obs(const Poag& game, Player player, int sp,
                                 int ah, int aa);

struct PrivateInfoResult {
  bool no_private_info = false;
  /// Witness f with f(other player's obs) = player's obs on every joint
  /// support; -1 where unconstrained.
  std::vector<int> witness;
  /// When false: an observed obs of the other player paired with two distinct
  /// observations of the checked player.
  struct Conflict {
    int other_obs;
    int obs1;
    int obs2;
  };
  std::optional<Conflict> conflict;
};

/// True iff a function f determining `player`'s observations from the other
/// player's observations exists on the support of every obs_kernel entry.
PrivateInfoResult has_no_private_info(const Poag& game,
                                      Player player = Player::Assistant);

}  // namespace poag
