#include "poag/blackwell.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <type_traits>

#include "poag/lp.hpp"

namespace poag {

namespace {

constexpr double kMassTol = 1e-12;

/// Aligns two families onto the union alphabet; returns padded copies.
std::pair<ObservationFamily, ObservationFamily> align(
    const ObservationFamily& a, const ObservationFamily& b) {
  if (a.obs_ids == b.obs_ids) return {a, b};
  std::vector<std::string> uni = a.obs_ids;
  for (const auto& id : b.obs_ids)
    if (std::find(uni.begin(), uni.end(), id) == uni.end()) uni.push_back(id);
  auto remap = [&](const ObservationFamily& f) {
    ObservationFamily out;
    out.state_index = f.state_index;
    out.obs_ids = uni;
    out.dists.assign(f.n_states(), std::vector<double>(uni.size(), 0.0));
    for (int s = 0; s < f.n_states(); ++s)
      for (int o = 0; o < f.n_obs(); ++o) {
        int idx = static_cast<int>(
            std::find(uni.begin(), uni.end(), f.obs_ids[o]) - uni.begin());
        out.dists[s][idx] = f.dists[s][o];
      }
    return out;
  };
  return {remap(a), remap(b)};
}

std::optional<int> point_mass(const std::vector<double>& d) {
  int hit = -1;
  for (int i = 0; i < static_cast<int>(d.size()); ++i) {
    if (d[i] <= kMassTol) continue;
    if (d[i] > 1.0 - 1e-9 && hit < 0)
      hit = i;
    else
      return std::nullopt;
  }
  if (hit < 0) return std::nullopt;
  return hit;
}

/// Fast path when every P(.|s) is a point mass: F exists iff Phat is constant
/// on the classes of equal P-observations.
std::optional<InformativenessResult> deterministic_path(
    const ObservationFamily& phat, const ObservationFamily& p) {
  const int m = p.n_obs();
  std::vector<int> obs_of(p.n_states());
  for (int s = 0; s < p.n_states(); ++s) {
    auto pm = point_mass(p.dists[s]);
    if (!pm) return std::nullopt;
    obs_of[s] = *pm;
  }
  GarblingMatrix g;
  g.obs_ids = p.obs_ids;
  g.entries.assign(m, std::vector<double>(m, 0.0));
  std::vector<bool> used(m, false);
  InformativenessResult res;
  for (int s = 0; s < p.n_states(); ++s) {
    int w = obs_of[s];
    if (!used[w]) {
      used[w] = true;
      for (int o = 0; o < m; ++o) g.entries[o][w] = phat.dists[s][o];
    } else {
      for (int o = 0; o < m; ++o)
        if (std::abs(g.entries[o][w] - phat.dists[s][o]) > 1e-9) {
          res.holds = false;
          return res;
        }
    }
  }
  for (int w = 0; w < m; ++w)
    if (!used[w]) g.entries[0][w] = 1.0;  // unconstrained column
  res.holds = true;
  res.witness = std::move(g);
  return res;
}

template <typename Scalar>
Scalar to_scalar(double x) {
  if constexpr (std::is_same_v<Scalar, double>)
    return x;
  else
    return to_rational(x);
}

template <typename Scalar>
InformativenessResult lp_path(const ObservationFamily& phat,
                              const ObservationFamily& p, Scalar tol) {
  const int m = p.n_obs();
  const int ns = p.n_states();
  // Variables F[out][in] flattened out*m+in. Deduplicate identical
  // (p-row, phat-row) pairs: they impose identical constraints.
  std::vector<std::pair<std::vector<double>, std::vector<double>>> rows;
  for (int s = 0; s < ns; ++s) {
    auto pr = std::make_pair(p.dists[s], phat.dists[s]);
    if (std::find(rows.begin(), rows.end(), pr) == rows.end())
      rows.push_back(std::move(pr));
  }
  const int k = static_cast<int>(rows.size());
  std::vector<std::vector<Scalar>> a(
      k * m + m, std::vector<Scalar>(m * m, Scalar(0)));
  std::vector<Scalar> b(k * m + m, Scalar(0));
  for (int r = 0; r < k; ++r)
    for (int out = 0; out < m; ++out) {
      auto& row = a[r * m + out];
      for (int in = 0; in < m; ++in)
        row[out * m + in] = Scalar(to_scalar<Scalar>(rows[r].first[in]));
      b[r * m + out] = Scalar(to_scalar<Scalar>(rows[r].second[out]));
    }
  for (int in = 0; in < m; ++in) {
    auto& row = a[k * m + in];
    for (int out = 0; out < m; ++out) row[out * m + in] = Scalar(1);
    b[k * m + in] = Scalar(1);
  }
  auto sol = solve_equality_feasibility<Scalar>(std::move(a), std::move(b), tol);
  InformativenessResult res;
  res.holds = sol.feasible;
  if (sol.feasible) {
    GarblingMatrix g;
    g.obs_ids = p.obs_ids;
    g.entries.assign(m, std::vector<double>(m, 0.0));
    for (int out = 0; out < m; ++out)
      for (int in = 0; in < m; ++in)
        g.entries[out][in] = static_cast<double>(sol.x[out * m + in]);
    res.witness = std::move(g);
  }
  return res;
}

}  // namespace

InformativenessResult at_most_as_informative(const ObservationFamily& phat_in,
                                             const ObservationFamily& p_in,
                                             bool exact) {
  require(phat_in.n_states() == p_in.n_states() &&
              phat_in.state_index == p_in.state_index,
          ErrorCode::DimensionMismatch,
          "informativeness: families indexed by different state sets");
  auto [phat, p] = align(phat_in, p_in);
  if (!exact) {
    if (auto fast = deterministic_path(phat, p)) return *fast;
    return lp_path<double>(phat, p, 1e-9);
  }
  return lp_path<Rational>(phat, p, Rational(0));
}

bool strictly_more_informative(const ObservationFamily& p,
                               const ObservationFamily& phat, bool exact) {
  return at_most_as_informative(phat, p, exact).holds &&
         !at_most_as_informative(p, phat, exact).holds;
}

ObservationFamily human_obs_family(const Poag& game, int ah, int aa) {
  ObservationFamily f;
  f.state_index = game.states;
  f.obs_ids = game.human_obs;
  f.dists.reserve(game.n_states());
  for (int sp = 0; sp < game.n_states(); ++sp)
    f.dists.push_back(marginal_obs(game, Player::Human, sp, ah, aa));
  return f;
}

bool same_effect(const Poag& game, int aa1, int aa2) {
  for (int s = 0; s < game.n_states(); ++s)
    for (int ah = 0; ah < game.n_human_actions(); ++ah) {
      std::vector<double> r1(game.n_states(), 0.0), r2(game.n_states(), 0.0);
      for (auto [sp, p] : game.transition_row(s, ah, aa1)) r1[sp] += p;
      for (auto [sp, p] : game.transition_row(s, ah, aa2)) r2[sp] += p;
      for (int sp = 0; sp < game.n_states(); ++sp)
        if (std::abs(r1[sp] - r2[sp]) > kMassTol) return false;
      for (int th = 0; th < game.n_thetas(); ++th)
        if (std::abs(game.reward_at(s, ah, aa1, th) -
                     game.reward_at(s, ah, aa2, th)) > kMassTol)
          return false;
    }
  return true;
}

std::vector<InterferingAction> interfering_actions(const Poag& game,
                                                   bool exact) {
  const int na = game.n_assistant_actions();
  const int nh = game.n_human_actions();
  // Families cached per (ah, aa).
  std::vector<std::vector<ObservationFamily>> fam(nh);
  for (int ah = 0; ah < nh; ++ah) {
    fam[ah].reserve(na);
    for (int aa = 0; aa < na; ++aa)
      fam[ah].push_back(human_obs_family(game, ah, aa));
  }
  std::vector<InterferingAction> out;
  for (int hat = 0; hat < na; ++hat) {
    for (int wit = 0; wit < na; ++wit) {
      if (wit == hat || !same_effect(game, hat, wit)) continue;
      bool all_strict = true;
      for (int ah = 0; ah < nh && all_strict; ++ah)
        all_strict = strictly_more_informative(fam[ah][wit], fam[ah][hat],
                                               exact);
      if (all_strict) {
        out.push_back(InterferingAction{hat, wit});
        break;
      }
    }
  }
  return out;
}

ActionLevelResult policy_interferes_action_level(
    const Poag& game, const Policy& pi_a,
    const std::vector<InterferingAction>& flagged, uint64_t max_histories) {
  ActionLevelResult res;
  std::vector<bool> is_flagged(game.n_assistant_actions(), false);
  for (const auto& f : flagged) is_flagged[f.action] = true;

  // Def 3.3 quantifies over any history, so walk the full action-observation
  // tree up to the horizon, skipping histories the policy leaves undefined.
  uint64_t visited = 0;
  std::vector<History> frontier{History{Player::Assistant, {}}};
  for (int t = 0; t < game.horizon && !res.interferes; ++t) {
    std::vector<History> next;
    for (const auto& h : frontier) {
      require(++visited <= max_histories, ErrorCode::BudgetExceeded,
              "action-level interference scan exceeded the history budget");
      std::vector<double> dist;
      try {
        dist = pi_a.action_dist(h);
      } catch (const PoagError& e) {
        if (e.code() == ErrorCode::UndefinedHistory) continue;
        throw;
      }
      for (int aa = 0; aa < game.n_assistant_actions(); ++aa) {
        if (dist[aa] <= 0) continue;
        if (is_flagged[aa]) {
          res.interferes = true;
          res.offending_history = h;
          res.offending_action = aa;
          return res;
        }
        if (t + 1 < game.horizon)
          for (int oa = 0; oa < game.n_obs(Player::Assistant); ++oa)
            next.push_back(h.extended(aa, oa));
      }
    }
    frontier = std::move(next);
  }
  return res;
}

ActionLevelResult policy_interferes_action_level(const Poag& game,
                                                 const Policy& pi_a) {
  return policy_interferes_action_level(game, pi_a,
                                        interfering_actions(game));
}

}  // namespace poag
