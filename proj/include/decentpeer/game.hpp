#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "decentpeer/reputation.hpp"
#include "decentpeer/rng.hpp"

namespace decentpeer {

// One player's side of the pairwise game: current score, experience, and the
// prior interval interactions (this pair's interaction is not among them).
struct PlayerState {
    double reputation = 0.5;          // R in (0,1)
    std::uint64_t active_intervals = 1; // t used directly in the gain exponent
    double prior_honest_sum = 0.0;    // sum of R_k over honest prior interactions
    double prior_total_sum = 0.0;     // sum of R_k over all prior interactions
};

enum class Strategy : int { Honest = 0, Faulty = 1 };

struct GameInstance {
    // payoff_i[s_i], payoff_j[s_j]: each player's payoff depends only on own
    // action (X/Y for the author, A/B for the reviewer), stored as full 2x2
    // matrices so hand-crafted games are representable too.
    std::array<std::array<double, 2>, 2> payoff_i{}; // [s_i][s_j]
    std::array<std::array<double, 2>, 2> payoff_j{};

    double x() const { return payoff_i[0][0]; }
    double y() const { return payoff_i[1][0]; }
    double a() const { return payoff_j[0][0]; }
    double b() const { return payoff_j[0][1]; }
};

struct OracleParams {
    double pi = 1.0;     // P(faulty behavior detected)
    double pi_bar = 1.0; // P(honest behavior confirmed)
};

// Punishment factors for one player against counterparty reputation r_other:
//   honest: (1 + prior_honest + r_other) / (1 + prior_total + r_other)
//   faulty: (1 + prior_honest) / (1 + prior_total + r_other)
struct BehaviorPunishments {
    double honest = 1.0;
    double faulty = 1.0;
};
BehaviorPunishments behavior_punishments(const PlayerState& player, double counterparty_reputation);

// Next-interval reputation payoffs X/Y (player i) and A/B (player j).
GameInstance build_game(const PlayerState& i_state, const PlayerState& j_state,
                        const GainParams& params);

// All pure profiles with no strictly improving unilateral deviation.
std::vector<std::pair<Strategy, Strategy>> pure_nash_equilibria(const GameInstance& game);

// X' = pi_bar*X + (1-pi_bar)*Y, Y' = (1-pi)*X + pi*Y, same for A/B.
GameInstance perturb_with_oracle(const GameInstance& game, const OracleParams& oracle);

// Sweep-instance generator: R in (0.01, 0.99), 0-5 prior interactions with
// random reputations and honest/faulty splits, t in {1..30}.
PlayerState random_player_state(RngStream& rng);

}  // namespace decentpeer
