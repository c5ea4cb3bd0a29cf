#include "poag/game_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace poag {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
  require(j.contains(key) && j[key].is_array(), ErrorCode::Io,
          std::string("game spec: missing array '") + key + "'");
  std::vector<std::string> out;
  for (const auto& v : j[key]) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

Poag game_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw PoagError(ErrorCode::Io, std::string("malformed game spec: ") +
                                       e.what());
  }
  Poag g;
  g.states = string_list(j, "states");
  g.human_actions = string_list(j, "human_actions");
  g.assistant_actions = string_list(j, "assistant_actions");
  g.thetas = string_list(j, "thetas");
  g.human_obs = string_list(j, "human_obs");
  g.assistant_obs = string_list(j, "assistant_obs");
  require(j.contains("gamma") && j.contains("horizon"), ErrorCode::Io,
          "game spec: missing gamma/horizon");
  g.gamma = j["gamma"].get<double>();
  g.horizon = j["horizon"].get<int>();
  g.allocate_tables();

  if (j.contains("transition"))
    for (const auto& [s, by_ah] : j["transition"].items()) {
      int si = g.state_index(s);
      for (const auto& [ah, by_aa] : by_ah.items()) {
        int ahi = g.action_index(Player::Human, ah);
        for (const auto& [aa, row] : by_aa.items()) {
          int aai = g.action_index(Player::Assistant, aa);
          auto& t = g.transition[g.ctx(si, ahi, aai)];
          for (const auto& [sp, p] : row.items())
            t.emplace_back(g.state_index(sp), p.get<double>());
          std::sort(t.begin(), t.end());
        }
      }
    }
  if (j.contains("reward"))
    for (const auto& [s, by_ah] : j["reward"].items())
      for (const auto& [ah, by_aa] : by_ah.items())
        for (const auto& [aa, by_th] : by_aa.items())
          for (const auto& [th, r] : by_th.items())
            g.set_reward(g.state_index(s), g.action_index(Player::Human, ah),
                         g.action_index(Player::Assistant, aa),
                         g.theta_index(th), r.get<double>());
  if (j.contains("obs_kernel"))
    for (const auto& [sp, by_ah] : j["obs_kernel"].items()) {
      int spi = g.state_index(sp);
      for (const auto& [ah, by_aa] : by_ah.items()) {
        int ahi = g.action_index(Player::Human, ah);
        for (const auto& [aa, by_oh] : by_aa.items()) {
          int aai = g.action_index(Player::Assistant, aa);
          auto& row = g.obs_kernel[g.ctx(spi, ahi, aai)];
          for (const auto& [oh, by_oa] : by_oh.items()) {
            int ohi = g.obs_index(Player::Human, oh);
            for (const auto& [oa, p] : by_oa.items())
              row.push_back(Poag::ObsEntry{
                  ohi, g.obs_index(Player::Assistant, oa), p.get<double>()});
          }
        }
      }
    }
  if (j.contains("initial"))
    for (const auto& [s, by_th] : j["initial"].items())
      for (const auto& [th, p] : by_th.items())
        g.initial.emplace_back(g.state_index(s), g.theta_index(th),
                               p.get<double>());
  return g;
}

std::string game_to_json(const Poag& g) {
  ordered_json j;
  j["states"] = g.states;
  j["human_actions"] = g.human_actions;
  j["assistant_actions"] = g.assistant_actions;
  j["thetas"] = g.thetas;
  j["human_obs"] = g.human_obs;
  j["assistant_obs"] = g.assistant_obs;
  ordered_json tr = ordered_json::object();
  ordered_json rw = ordered_json::object();
  ordered_json ok = ordered_json::object();
  for (int s = 0; s < g.n_states(); ++s)
    for (int ah = 0; ah < g.n_human_actions(); ++ah)
      for (int aa = 0; aa < g.n_assistant_actions(); ++aa) {
        const auto& row = g.transition_row(s, ah, aa);
        for (auto [sp, p] : row)
          if (p != 0.0)
            tr[g.states[s]][g.human_actions[ah]][g.assistant_actions[aa]]
              [g.states[sp]] = p;
        for (const auto& e : g.obs_row(s, ah, aa))
          if (e.p != 0.0)
            ok[g.states[s]][g.human_actions[ah]][g.assistant_actions[aa]]
              [g.human_obs[e.oh]][g.assistant_obs[e.oa]] = e.p;
        for (int th = 0; th < g.n_thetas(); ++th) {
          double r = g.reward_at(s, ah, aa, th);
          if (r != 0.0)
            rw[g.states[s]][g.human_actions[ah]][g.assistant_actions[aa]]
              [g.thetas[th]] = r;
        }
      }
  j["transition"] = tr;
  j["reward"] = rw;
  j["obs_kernel"] = ok;
  ordered_json init = ordered_json::object();
  for (auto [s, th, p] : g.initial)
    if (p != 0.0) init[g.states[s]][g.thetas[th]] = p;
  j["initial"] = init;
  j["gamma"] = g.gamma;
  j["horizon"] = g.horizon;
  return j.dump(1);
}

std::shared_ptr<Policy> policy_from_json(const std::string& text,
                                         const Poag& game) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw PoagError(ErrorCode::Io,
                    std::string("malformed policy file: ") + e.what());
  }
  require(j.contains("player"), ErrorCode::Io, "policy file: missing player");
  std::string pl = j["player"].get<std::string>();
  require(pl == "human" || pl == "assistant", ErrorCode::Io,
          "policy file: player must be 'human' or 'assistant'");
  Player player = pl == "human" ? Player::Human : Player::Assistant;
  int n = game.n_actions(player);

  auto parse_dist = [&](const json& node) -> std::vector<double> {
    std::vector<double> d(n, 0.0);
    if (node.contains("action")) {
      d[game.action_index(player, node["action"].get<std::string>())] = 1.0;
    } else if (node.contains("dist")) {
      for (const auto& [a, p] : node["dist"].items())
        d[game.action_index(player, a)] = p.get<double>();
    } else {
      throw PoagError(ErrorCode::Io, "policy file: entry lacks action/dist");
    }
    return d;
  };

  std::string type = j.value("type", "tabular");
  if (type == "constant") return std::make_shared<ConstantPolicy>(player, parse_dist(j));
  require(type == "tabular", ErrorCode::Io,
          "policy file: unknown type '" + type + "'");

  std::map<std::vector<Step>, std::vector<double>> rule;
  if (j.contains("entries"))
    for (const auto& entry : j["entries"]) {
      std::vector<Step> hist;
      for (const auto& st : entry["history"])
        hist.push_back(Step{
            game.action_index(player, st["action"].get<std::string>()),
            game.obs_index(player, st["observation"].get<std::string>())});
      rule[hist] = parse_dist(entry);
    }
  std::optional<std::vector<double>> fallback;
  if (j.contains("default_action") || j.contains("default_dist")) {
    json d;
    if (j.contains("default_action")) d["action"] = j["default_action"];
    if (j.contains("default_dist")) d["dist"] = j["default_dist"];
    fallback = parse_dist(d);
  }
  return std::make_shared<TabularPolicy>(player, std::move(rule),
                                         std::move(fallback));
}

std::string policy_to_json(const Policy& policy, const Poag& game) {
  Player player = policy.player();
  ordered_json j;
  j["player"] = player == Player::Human ? "human" : "assistant";
  const auto& ids = game.action_ids(player);

  auto emit_dist = [&](ordered_json& node, const std::vector<double>& d) {
    int point = -1, positive = 0;
    for (int a = 0; a < static_cast<int>(d.size()); ++a)
      if (d[a] > 0) {
        ++positive;
        if (d[a] > 1.0 - 1e-12) point = a;
      }
    if (positive == 1 && point >= 0) {
      node["action"] = ids[point];
    } else {
      ordered_json dist = ordered_json::object();
      for (int a = 0; a < static_cast<int>(d.size()); ++a)
        if (d[a] > 0) dist[ids[a]] = d[a];
      node["dist"] = dist;
    }
  };

  if (const auto* c = dynamic_cast<const ConstantPolicy*>(&policy)) {
    j["type"] = "constant";
    emit_dist(j, c->action_dist(History{player, {}}));
    return j.dump(1);
  }
  const auto* t = dynamic_cast<const TabularPolicy*>(&policy);
  require(t != nullptr, ErrorCode::Io,
          "only constant/tabular policies have a file form");
  j["type"] = "tabular";
  ordered_json entries = ordered_json::array();
  const auto& ods = game.obs_ids(player);
  for (const auto& [hist, d] : t->rule()) {
    ordered_json e;
    ordered_json steps = ordered_json::array();
    for (const Step& st : hist) {
      ordered_json sj;
      sj["action"] = ids[st.action];
      sj["observation"] = ods[st.observation];
      steps.push_back(sj);
    }
    e["history"] = steps;
    emit_dist(e, d);
    entries.push_back(e);
  }
  j["entries"] = entries;
  if (t->fallback()) {
    ordered_json node;
    emit_dist(node, *t->fallback());
    if (node.contains("action"))
      j["default_action"] = node["action"];
    else
      j["default_dist"] = node["dist"];
  }
  return j.dump(1);
}

History history_from_json(const std::string& text, const Poag& game) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw PoagError(ErrorCode::Io,
                    std::string("malformed history file: ") + e.what());
  }
  std::string pl = j.value("player", "human");
  History h;
  h.player = pl == "assistant" ? Player::Assistant : Player::Human;
  for (const auto& st : j["steps"])
    h.steps.push_back(
        Step{game.action_index(h.player, st["action"].get<std::string>()),
             game.obs_index(h.player, st["observation"].get<std::string>())});
  return h;
}

std::string history_to_json(const History& h, const Poag& game) {
  ordered_json j;
  j["player"] = h.player == Player::Human ? "human" : "assistant";
  ordered_json steps = ordered_json::array();
  for (const Step& st : h.steps) {
    ordered_json sj;
    sj["action"] = game.action_ids(h.player)[st.action];
    sj["observation"] = game.obs_ids(h.player)[st.observation];
    steps.push_back(sj);
  }
  j["steps"] = steps;
  return j.dump(1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::Io, "cannot write file: " + path);
  out << content;
}

Poag load_game(const std::string& path) {
  return game_from_json(read_file(path));
}
void save_game(const Poag& game, const std::string& path) {
  write_file(path, game_to_json(game));
}
std::shared_ptr<Policy> load_policy(const std::string& path,
                                    const Poag& game) {
  return policy_from_json(read_file(path), game);
}
void save_policy(const Policy& policy, const Poag& game,
                 const std::string& path) {
  write_file(path, policy_to_json(policy, game));
}
History load_history(const std::string& path, const Poag& game) {
  return history_from_json(read_file(path), game);
}

}  // namespace poag
