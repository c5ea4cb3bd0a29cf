#include "poag/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace poag {

std::vector<double> state_marginal(const Poag& game, const Belief& belief) {
  std::vector<double> out(game.n_states(), 0.0);
  for (const auto& [aug, p] : belief.support) out[aug.current_state()] += p;
  return out;
}

std::vector<double> theta_marginal(const Poag& game, const Belief& belief) {
  std::vector<double> out(game.n_thetas(), 0.0);
  for (const auto& [aug, p] : belief.support) out[aug.theta] += p;
  return out;
}

double posterior_entropy(const std::vector<double>& dist) {
  double h = 0.0;
  for (double p : dist)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

namespace {

History assistant_history(const AugmentedState& aug,
                          const std::vector<int>& assistant_actions) {
  History h{Player::Assistant, {}};
  for (std::size_t i = 0; i < aug.assistant_obs_history.size(); ++i)
    h.steps.push_back(
        Step{assistant_actions[i], aug.assistant_obs_history[i]});
  return h;
}

/// One exact filtering sweep. Weights stay unnormalized until the end.
std::map<std::pair<int, AugmentedState>, double> run_filter(
    const Poag& game, const std::vector<const Policy*>& candidates,
    const std::vector<double>& prior, const History& human_history) {
  require(human_history.player == Player::Human, ErrorCode::DimensionMismatch,
          "filter expects a human history");
  // Assistant action sequences are tracked inside the augmented state via
  // last_assistant_action plus the recursion; we also need the full action
  // sequence to query the candidate policy, so carry it alongside.
  struct Item {
    int cand;
    AugmentedState aug;
    std::vector<int> assistant_actions;
  };
  std::vector<std::pair<Item, double>> cur;
  for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
    if (prior[c] <= 0) continue;
    for (auto [s, th, p] : game.initial) {
      if (p <= 0) continue;
      AugmentedState a;
      a.state_history = {s};
      a.theta = th;
      cur.push_back({Item{c, std::move(a), {}}, prior[c] * p});
    }
  }

  for (const Step& st : human_history.steps) {
    std::vector<std::pair<Item, double>> next;
    for (auto& [item, w] : cur) {
      History ha = assistant_history(item.aug, item.assistant_actions);
      std::vector<double> da = candidates[item.cand]->action_dist(ha);
      int s = item.aug.current_state();
      for (int aa = 0; aa < game.n_assistant_actions(); ++aa) {
        if (da[aa] <= 0) continue;
        for (auto [sp, pt] : game.transition_row(s, st.action, aa)) {
          if (pt <= 0) continue;
          for (const auto& e : game.obs_row(sp, st.action, aa)) {
            if (e.p <= 0 || e.oh != st.observation) continue;
            Item it = item;
            it.aug.state_history.push_back(sp);
            it.aug.assistant_obs_history.push_back(e.oa);
            it.aug.last_assistant_action = aa;
            it.assistant_actions.push_back(aa);
            next.push_back({std::move(it), w * da[aa] * pt * e.p});
          }
        }
      }
    }
    cur = std::move(next);
  }

  std::map<std::pair<int, AugmentedState>, double> joint;
  for (auto& [item, w] : cur) joint[{item.cand, item.aug}] += w;
  return joint;
}

}  // namespace

Belief filter(const Poag& game, const Policy& pi_a,
              const History& human_history) {
  auto joint = run_filter(game, {&pi_a}, {1.0}, human_history);
  double total = 0.0;
  for (const auto& [k, w] : joint) total += w;
  require(total > 0.0, ErrorCode::ZeroProbabilityHistory,
          "history has zero probability under the assistant policy");
  Belief b;
  for (const auto& [k, w] : joint) b.support.push_back({k.second, w / total});
  return b;
}

PolicyPriorPosterior filter_with_policy_prior(
    const Poag& game, const std::vector<const Policy*>& candidates,
    const std::vector<double>& prior, const History& human_history) {
  require(candidates.size() == prior.size(), ErrorCode::DimensionMismatch,
          "candidate/prior size mismatch");
  auto joint = run_filter(game, candidates, prior, human_history);
  double total = 0.0;
  for (const auto& [k, w] : joint) total += w;
  require(total > 0.0, ErrorCode::InconsistentHistory,
          "history is inconsistent with every candidate policy");
  PolicyPriorPosterior out;
  out.candidate_posterior.assign(candidates.size(), 0.0);
  std::map<AugmentedState, double> marg;
  for (const auto& [k, w] : joint) {
    out.candidate_posterior[k.first] += w / total;
    marg[k.second] += w / total;
  }
  for (auto& [aug, p] : marg) out.belief.support.push_back({aug, p});
  return out;
}

std::vector<PolicyPriorPosterior> filter_iterated(
    const Poag& game, std::vector<const Policy*> candidates,
    std::vector<double> prior, const PolicyUpdateRule& update,
    const std::vector<History>& per_iteration_histories) {
  std::vector<PolicyPriorPosterior> out;
  for (int it = 0; it < static_cast<int>(per_iteration_histories.size());
       ++it) {
    if (it > 0 && update) candidates = update(candidates, it);
    out.push_back(filter_with_policy_prior(game, candidates, prior,
                                           per_iteration_histories[it]));
    prior = out.back().candidate_posterior;
  }
  return out;
}

EmbeddedPomdp embed_pomdp(const Poag& game, const Policy& pi_a) {
  EmbeddedPomdp pomdp;
  pomdp.game = &game;
  pomdp.levels.resize(game.horizon + 1);
  pomdp.step.resize(game.horizon);

  struct Extra {
    std::vector<int> assistant_actions;
  };
  std::vector<std::vector<Extra>> extras(game.horizon + 1);

  std::map<AugmentedState, int> index0;
  for (auto [s, th, p] : game.initial) {
    if (p <= 0) continue;
    AugmentedState a;
    a.state_history = {s};
    a.theta = th;
    auto [it, fresh] = index0.try_emplace(a, pomdp.levels[0].size());
    if (fresh) {
      pomdp.levels[0].push_back(a);
      extras[0].push_back(Extra{});
      pomdp.initial.push_back({it->second, p});
    } else {
      pomdp.initial[it->second].second += p;
    }
  }

  for (int t = 0; t < game.horizon; ++t) {
    auto& level = pomdp.levels[t];
    pomdp.step[t].resize(level.size());
    std::map<AugmentedState, int> index_next;
    for (int i = 0; i < static_cast<int>(level.size()); ++i) {
      const AugmentedState& aug = level[i];
      History ha = assistant_history(aug, extras[t][i].assistant_actions);
      std::vector<double> da = pi_a.action_dist(ha);
      pomdp.step[t][i].resize(game.n_human_actions());
      for (int ah = 0; ah < game.n_human_actions(); ++ah) {
        std::map<std::pair<int, int>, double> acc;  // (next index, oH) -> p
        for (int aa = 0; aa < game.n_assistant_actions(); ++aa) {
          if (da[aa] <= 0) continue;
          for (auto [sp, pt] : game.transition_row(aug.current_state(), ah,
                                                   aa)) {
            if (pt <= 0) continue;
            for (const auto& e : game.obs_row(sp, ah, aa)) {
              if (e.p <= 0) continue;
              AugmentedState nxt = aug;
              nxt.state_history.push_back(sp);
              nxt.assistant_obs_history.push_back(e.oa);
              nxt.last_assistant_action = aa;
              auto [it, fresh] =
                  index_next.try_emplace(nxt, pomdp.levels[t + 1].size());
              if (fresh) {
                pomdp.levels[t + 1].push_back(nxt);
                Extra ex = extras[t][i];
                ex.assistant_actions.push_back(aa);
                extras[t + 1].push_back(std::move(ex));
              }
              acc[{it->second, e.oh}] += da[aa] * pt * e.p;
            }
          }
        }
        auto& entries = pomdp.step[t][i][ah];
        entries.reserve(acc.size());
        for (const auto& [key, p] : acc)
          entries.push_back(
              EmbeddedPomdp::StepEntry{key.first, key.second, p});
      }
    }
  }
  return pomdp;
}

std::vector<std::pair<int, double>> EmbeddedPomdp::transition_factored(
    int t, int i, int ah) const {
  std::map<int, double> acc;
  for (const auto& e : step[t][i][ah]) acc[e.next] += e.p;
  return {acc.begin(), acc.end()};
}

double EmbeddedPomdp::expected_reward(int t, int i, int ah) const {
  const AugmentedState& aug = levels[t][i];
  // Recover pi_a's mixture from the stored joint: the assistant action is
  // identified by the successor's last_assistant_action.
  std::map<int, double> aa_weight;
  double total = 0.0;
  for (const auto& e : step[t][i][ah]) {
    aa_weight[levels[t + 1][e.next].last_assistant_action] += e.p;
    total += e.p;
  }
  double r = 0.0;
  for (auto [aa, w] : aa_weight)
    r += (w / total) * game->reward_at(aug.current_state(), ah, aa, aug.theta);
  return r;
}

}  // namespace poag
