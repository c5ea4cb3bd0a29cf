#pragma once

#include <memory>
#include <string>

#include "poag/game.hpp"

namespace poag {

/// Game spec document: top-level keys states, human_actions,
/// assistant_actions, thetas, transition, reward, human_obs, assistant_obs,
/// obs_kernel, initial, gamma, horizon. Distributions are nested maps
/// id -> probability; missing probability entries mean 0.
Poag game_from_json(const std::string& text);
std::string game_to_json(const Poag& game);

Poag load_game(const std::string& path);
void save_game(const Poag& game, const std::string& path);

std::shared_ptr<Policy> policy_from_json(const std::string& text,
                                         const Poag& game);
std::string policy_to_json(const Policy& policy, const Poag& game);

std::shared_ptr<Policy> load_policy(const std::string& path, const Poag& game);
void save_policy(const Policy& policy, const Poag& game,
                 const std::string& path);

History history_from_json(const std::string& text, const Poag& game);
std::string history_to_json(const History& h, const Poag& game);
History load_history(const std::string& path, const Poag& game);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace poag
