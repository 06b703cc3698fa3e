#include "decentpeer/game.hpp"

namespace decentpeer {

BehaviorPunishments behavior_punishments(const PlayerState& player, double counterparty_reputation) {
    const double denom = 1.0 + player.prior_total_sum + counterparty_reputation;
    BehaviorPunishments out;
    out.honest = (1.0 + player.prior_honest_sum + counterparty_reputation) / denom;
    out.faulty = (1.0 + player.prior_honest_sum) / denom;
    return out;
}

static double payoff(double reputation, double punishment, std::uint64_t t,
                     const GainParams& params) {
    const double x = clamp_score(reputation * punishment);
    return clamp_score(x + gain_function(x, t, params));
}

GameInstance build_game(const PlayerState& i_state, const PlayerState& j_state,
                        const GainParams& params) {
    const auto pi_ = behavior_punishments(i_state, j_state.reputation);
    const auto pj_ = behavior_punishments(j_state, i_state.reputation);

    const double x = payoff(i_state.reputation, pi_.honest, i_state.active_intervals, params);
    const double y = payoff(i_state.reputation, pi_.faulty, i_state.active_intervals, params);
    const double a = payoff(j_state.reputation, pj_.honest, j_state.active_intervals, params);
    const double b = payoff(j_state.reputation, pj_.faulty, j_state.active_intervals, params);

    GameInstance game;
    game.payoff_i = {{{x, x}, {y, y}}};
    game.payoff_j = {{{a, b}, {a, b}}};
    return game;
}

std::vector<std::pair<Strategy, Strategy>> pure_nash_equilibria(const GameInstance& game) {
    std::vector<std::pair<Strategy, Strategy>> out;
    for (int si = 0; si < 2; ++si) {
        for (int sj = 0; sj < 2; ++sj) {
            const bool i_can_improve = game.payoff_i[1 - si][sj] > game.payoff_i[si][sj];
            const bool j_can_improve = game.payoff_j[si][1 - sj] > game.payoff_j[si][sj];
            if (!i_can_improve && !j_can_improve)
                out.emplace_back(static_cast<Strategy>(si), static_cast<Strategy>(sj));
        }
    }
    return out;
}

GameInstance perturb_with_oracle(const GameInstance& game, const OracleParams& oracle) {
    auto mix_rows = [&](const std::array<std::array<double, 2>, 2>& m) {
        // Row 0 is the honest action, row 1 the faulty one.
        std::array<std::array<double, 2>, 2> out{};
        for (int other = 0; other < 2; ++other) {
            out[0][other] = oracle.pi_bar * m[0][other] + (1.0 - oracle.pi_bar) * m[1][other];
            out[1][other] = (1.0 - oracle.pi) * m[0][other] + oracle.pi * m[1][other];
        }
        return out;
    };
    auto mix_cols = [&](const std::array<std::array<double, 2>, 2>& m) {
        std::array<std::array<double, 2>, 2> out{};
        for (int other = 0; other < 2; ++other) {
            out[other][0] = oracle.pi_bar * m[other][0] + (1.0 - oracle.pi_bar) * m[other][1];
            out[other][1] = (1.0 - oracle.pi) * m[other][0] + oracle.pi * m[other][1];
        }
        return out;
    };
    GameInstance out;
    out.payoff_i = mix_rows(game.payoff_i);
    out.payoff_j = mix_cols(game.payoff_j);
    return out;
}

PlayerState random_player_state(RngStream& rng) {
    PlayerState state;
    state.reputation = 0.01 + 0.98 * rng.next_double();
    state.active_intervals = 1 + rng.next_below(30);
    const std::uint64_t priors = rng.next_below(6);
    for (std::uint64_t k = 0; k < priors; ++k) {
        const double rep = 0.01 + 0.98 * rng.next_double();
        state.prior_total_sum += rep;
        if (rng.bernoulli(0.8)) state.prior_honest_sum += rep;
    }
    return state;
}

}  // namespace decentpeer
