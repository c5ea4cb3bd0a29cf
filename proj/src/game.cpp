#include "poag/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "poag/rng.hpp"

namespace poag {

namespace {

constexpr double kProbTol = 1e-9;

int index_of(const std::vector<std::string>& ids, const std::string& id,
             const char* what) {
  auto it = std::find(ids.begin(), ids.end(), id);
  require(it != ids.end(), ErrorCode::InvalidGame,
          std::string("unknown ") + what + " id: " + id);
  return static_cast<int>(it - ids.begin());
}

}  // namespace

void Poag::allocate_tables() {
  transition.assign(n_ctx(), {});
  obs_kernel.assign(n_ctx(), {});
  reward.assign(n_ctx() * thetas.size(), 0.0);
}

int Poag::state_index(const std::string& id) const {
  return index_of(states, id, "state");
}
int Poag::action_index(Player p, const std::string& id) const {
  return index_of(action_ids(p), id, "action");
}
int Poag::obs_index(Player p, const std::string& id) const {
  return index_of(obs_ids(p), id, "observation");
}
int Poag::theta_index(const std::string& id) const {
  return index_of(thetas, id, "theta");
}

std::vector<Violation> validate(const Poag& game) {
  std::vector<Violation> out;
  auto add = [&](const std::string& where, const std::string& msg) {
    out.push_back(Violation{where, msg});
  };

  auto check_unique_nonempty = [&](const std::vector<std::string>& ids,
                                   const std::string& name) {
    if (ids.empty()) add(name, "set is empty");
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      add(name, "duplicate ids");
  };
  check_unique_nonempty(game.states, "states");
  check_unique_nonempty(game.human_actions, "human_actions");
  check_unique_nonempty(game.assistant_actions, "assistant_actions");
  check_unique_nonempty(game.thetas, "thetas");
  check_unique_nonempty(game.human_obs, "human_obs");
  check_unique_nonempty(game.assistant_obs, "assistant_obs");
  if (!out.empty()) return out;  // index-based checks need sane id sets

  if (!(game.gamma >= 0.0 && game.gamma <= 1.0))
    add("gamma", "gamma must lie in [0, 1]");
  if (game.horizon < 1) add("horizon", "horizon must be >= 1");

  if (game.transition.size() != game.n_ctx() ||
      game.obs_kernel.size() != game.n_ctx() ||
      game.reward.size() != game.n_ctx() * game.thetas.size()) {
    add("tables", "table sizes do not match id sets");
    return out;
  }

  auto ctx_name = [&](int s, int ah, int aa) {
    std::ostringstream os;
    os << "(" << game.states[s] << ", " << game.human_actions[ah] << ", "
       << game.assistant_actions[aa] << ")";
    return os.str();
  };

  for (int s = 0; s < game.n_states(); ++s)
    for (int ah = 0; ah < game.n_human_actions(); ++ah)
      for (int aa = 0; aa < game.n_assistant_actions(); ++aa) {
        const auto& row = game.transition_row(s, ah, aa);
        if (row.empty()) {
          add("transition " + ctx_name(s, ah, aa), "missing row (not total)");
        } else {
          double sum = 0.0;
          for (auto [sp, p] : row) {
            if (sp < 0 || sp >= game.n_states())
              add("transition " + ctx_name(s, ah, aa), "state index range");
            if (p < 0)
              add("transition " + ctx_name(s, ah, aa), "negative mass");
            sum += p;
          }
          if (std::abs(sum - 1.0) > kProbTol) {
            std::ostringstream os;
            os << "row sums to " << sum;
            add("transition " + ctx_name(s, ah, aa), os.str());
          }
        }
        const auto& orow = game.obs_row(s, ah, aa);
        if (orow.empty()) {
          add("obs_kernel " + ctx_name(s, ah, aa), "missing row (not total)");
        } else {
          double sum = 0.0;
          for (const auto& e : orow) {
            if (e.oh < 0 || e.oh >= game.n_obs(Player::Human) || e.oa < 0 ||
                e.oa >= game.n_obs(Player::Assistant))
              add("obs_kernel " + ctx_name(s, ah, aa), "obs index range");
            if (e.p < 0)
              add("obs_kernel " + ctx_name(s, ah, aa), "negative mass");
            sum += e.p;
          }
          if (std::abs(sum - 1.0) > kProbTol) {
            std::ostringstream os;
            os << "row sums to " << sum;
            add("obs_kernel " + ctx_name(s, ah, aa), os.str());
          }
        }
        for (int th = 0; th < game.n_thetas(); ++th)
          if (!std::isfinite(game.reward_at(s, ah, aa, th)))
            add("reward " + ctx_name(s, ah, aa), "non-finite value");
      }

  if (game.initial.empty()) {
    add("initial", "missing distribution");
  } else {
    double sum = 0.0;
    for (auto [s, th, p] : game.initial) {
      if (s < 0 || s >= game.n_states() || th < 0 || th >= game.n_thetas())
        add("initial", "index range");
      if (p < 0) add("initial", "negative mass");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTol) {
      std::ostringstream os;
      os << "distribution sums to " << sum;
      add("initial", os.str());
    }
  }
  return out;
}

ConstantPolicy::ConstantPolicy(Player player, std::vector<double> dist)
    : Policy(player), dist_(std::move(dist)) {
  int point = 0;
  for (double p : dist_) point += (p > 1.0 - 1e-12);
  deterministic_ = (point == 1);
}

ConstantPolicy::ConstantPolicy(Player player, int action, int n_actions)
    : Policy(player), dist_(n_actions, 0.0), deterministic_(true) {
  dist_.at(action) = 1.0;
}

TabularPolicy::TabularPolicy(
    Player player, std::map<std::vector<Step>, std::vector<double>> rule,
    std::optional<std::vector<double>> fallback)
    : Policy(player), rule_(std::move(rule)), fallback_(std::move(fallback)) {
  deterministic_ = true;
  auto is_point = [](const std::vector<double>& d) {
    int point = 0;
    for (double p : d) point += (p > 1.0 - 1e-12);
    return point == 1;
  };
  for (const auto& [h, d] : rule_)
    if (!is_point(d)) deterministic_ = false;
  if (fallback_ && !is_point(*fallback_)) deterministic_ = false;
}

std::vector<double> TabularPolicy::action_dist(const History& h) const {
  auto it = rule_.find(h.steps);
  if (it != rule_.end()) return it->second;
  if (fallback_) return *fallback_;
  std::ostringstream os;
  os << "policy has no rule for a history of length " << h.length();
  throw PoagError(ErrorCode::UndefinedHistory, os.str());
}

double evaluate_pair(const Poag& game, const Policy& pi_h,
                     const Policy& pi_a) {
  require(pi_h.player() == Player::Human &&
              pi_a.player() == Player::Assistant,
          ErrorCode::DimensionMismatch, "evaluate_pair: wrong player roles");

  struct Key {
    int s, th;
    std::vector<Step> hh, ha;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, double> cur;
  for (auto [s, th, p] : game.initial)
    if (p > 0) cur[Key{s, th, {}, {}}] += p;

  double total = 0.0;
  double disc = 1.0;
  for (int t = 0; t < game.horizon; ++t) {
    std::map<Key, double> next;
    for (const auto& [key, prob] : cur) {
      std::vector<double> dh =
          pi_h.action_dist(History{Player::Human, key.hh});
      std::vector<double> da =
          pi_a.action_dist(History{Player::Assistant, key.ha});
      for (int ah = 0; ah < game.n_human_actions(); ++ah) {
        if (dh[ah] <= 0) continue;
        for (int aa = 0; aa < game.n_assistant_actions(); ++aa) {
          if (da[aa] <= 0) continue;
          double pa = prob * dh[ah] * da[aa];
          total += disc * pa * game.reward_at(key.s, ah, aa, key.th);
          if (t + 1 == game.horizon) continue;  // no further decisions
          for (auto [sp, pt] : game.transition_row(key.s, ah, aa)) {
            if (pt <= 0) continue;
            for (const auto& e : game.obs_row(sp, ah, aa)) {
              if (e.p <= 0) continue;
              Key k{sp, key.th, key.hh, key.ha};
              k.hh.push_back(Step{ah, e.oh});
              k.ha.push_back(Step{aa, e.oa});
              next[std::move(k)] += pa * pt * e.p;
            }
          }
        }
      }
    }
    cur = std::move(next);
    disc *= game.gamma;
  }
  return total;
}

Trajectory sample_trajectory(const Poag& game, const Policy& pi_h,
                             const Policy& pi_a, uint64_t seed) {
  require(pi_h.player() == Player::Human &&
              pi_a.player() == Player::Assistant,
          ErrorCode::DimensionMismatch,
          "sample_trajectory: wrong player roles");
  SplitMix rng(splitmix64(seed));

  std::vector<double> init_w;
  for (auto [s, th, p] : game.initial) init_w.push_back(p);
  int pick = rng.sample(init_w);
  require(pick >= 0, ErrorCode::InvalidGame, "initial distribution is empty");
  auto [s, th, p0] = game.initial[pick];

  Trajectory traj;
  traj.theta = th;
  History hh{Player::Human, {}}, ha{Player::Assistant, {}};
  for (int t = 0; t < game.horizon; ++t) {
    int ah = rng.sample(pi_h.action_dist(hh));
    int aa = rng.sample(pi_a.action_dist(ha));
    double r = game.reward_at(s, ah, aa, th);

    const auto& trow = game.transition_row(s, ah, aa);
    std::vector<double> tw;
    for (auto [q, pw] : trow) tw.push_back(pw);
    int sp = trow[rng.sample(tw)].first;
    const auto& orow = game.obs_row(sp, ah, aa);
    std::vector<double> ow;
    for (const auto& e : orow) ow.push_back(e.p);
    const auto& e = orow[rng.sample(ow)];
    hh.steps.push_back(Step{ah, e.oh});
    ha.steps.push_back(Step{aa, e.oa});
    traj.steps.push_back(Trajectory::StepRecord{s, ah, aa, e.oh, e.oa, r});
    s = sp;
  }
  return traj;
}

std::vector<double> marginal_obs(const Poag& game, Player player, int sp,
                                 int ah, int aa) {
  std::vector<double> out(game.n_obs(player), 0.0);
  for (const auto& e : game.obs_row(sp, ah, aa))
    out[player == Player::Human ? e.oh : e.oa] += e.p;
  return out;
}

PrivateInfoResult has_no_private_info(const Poag& game, Player player) {
  PrivateInfoResult res;
  res.witness.assign(game.n_obs(other(player)), -1);
  for (int sp = 0; sp < game.n_states(); ++sp)
    for (int ah = 0; ah < game.n_human_actions(); ++ah)
      for (int aa = 0; aa < game.n_assistant_actions(); ++aa)
        for (const auto& e : game.obs_row(sp, ah, aa)) {
          if (e.p <= 0) continue;
          int own = player == Player::Human ? e.oh : e.oa;
          int theirs = player == Player::Human ? e.oa : e.oh;
          if (res.witness[theirs] == -1) {
            res.witness[theirs] = own;
          } else if (res.witness[theirs] != own) {
            res.conflict = PrivateInfoResult::Conflict{
                theirs, res.witness[theirs], own};
            res.no_private_info = false;
            return res;
          }
        }
  res.no_private_info = true;
  return res;
}

}  // namespace poag
