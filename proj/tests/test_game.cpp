#include <doctest.h>

#include <cmath>

#include "decentpeer/game.hpp"

using namespace decentpeer;

namespace {

bool is_unique_hh(const GameInstance& game) {
    const auto eq = pure_nash_equilibria(game);
    return eq.size() == 1 && eq[0].first == Strategy::Honest && eq[0].second == Strategy::Honest;
}

}  // namespace

TEST_CASE("build_game: symmetric fresh players") {
    PlayerState state; // R=0.5, t=1, empty priors
    const auto game = build_game(state, state, GainParams{0.05});
    // P^H = 1.5/1.5 = 1, P^F = 1/1.5
    CHECK(game.x() == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(game.y() ==
          doctest::Approx(1.0 / 3.0 + 0.05 * std::pow(2.0 / 3.0, 2)).epsilon(1e-12));
    CHECK(game.a() == doctest::Approx(game.x()));
    CHECK(game.b() == doctest::Approx(game.y()));
}

TEST_CASE("build_game: wronging a near-zero-reputation party costs almost nothing") {
    PlayerState i_state;
    PlayerState j_state;
    j_state.reputation = 1e-9;
    const auto game = build_game(i_state, j_state, GainParams{0.05});
    CHECK(game.x() - game.y() < 1e-8);
}

TEST_CASE("behavior punishments: higher counterparty reputation hurts faulty play more") {
    PlayerState player;
    player.prior_honest_sum = 0.7;
    player.prior_total_sum = 1.1;
    double prev = 1.0;
    for (double r_other : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto p = behavior_punishments(player, r_other);
        CHECK(p.honest > p.faulty);
        CHECK(p.faulty < prev);
        prev = p.faulty;
    }
}

TEST_CASE("pure NE: built games always resolve to unique (H,H)") {
    RngStream rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const GainParams params{1e-4 + rng.next_double() * (1.0 / 6.0 - 2e-4)};
        const auto game = build_game(random_player_state(rng), random_player_state(rng), params);
        CHECK(is_unique_hh(game));
        CHECK(game.x() > game.y());
        CHECK(game.a() > game.b());
    }
}

TEST_CASE("pure NE: degenerate indifference yields all four weak equilibria") {
    GameInstance game;
    game.payoff_i = {{{0.5, 0.5}, {0.5, 0.5}}};
    game.payoff_j = {{{0.4, 0.4}, {0.4, 0.4}}};
    CHECK(pure_nash_equilibria(game).size() == 4);
}

TEST_CASE("pure NE: anti-coordination matrix has the two asymmetric equilibria") {
    // payoff 1 for mismatching the opponent, 0 otherwise
    GameInstance game;
    game.payoff_i = {{{0.0, 1.0}, {1.0, 0.0}}};
    game.payoff_j = {{{0.0, 1.0}, {1.0, 0.0}}};
    const auto eq = pure_nash_equilibria(game);
    REQUIRE(eq.size() == 2);
    CHECK(eq[0] == std::pair{Strategy::Honest, Strategy::Faulty});
    CHECK(eq[1] == std::pair{Strategy::Faulty, Strategy::Honest});
}

TEST_CASE("oracle perturbation: direct values and perfect-oracle identity") {
    PlayerState state;
    const auto game = build_game(state, state, GainParams{0.05});
    const auto same = perturb_with_oracle(game, {1.0, 1.0});
    CHECK(same.x() == doctest::Approx(game.x()));
    CHECK(same.y() == doctest::Approx(game.y()));

    GameInstance crafted;
    crafted.payoff_i = {{{0.6, 0.6}, {0.4, 0.4}}};
    crafted.payoff_j = {{{0.6, 0.4}, {0.6, 0.4}}};
    const auto mixed = perturb_with_oracle(crafted, {0.8, 0.9});
    CHECK(mixed.x() == doctest::Approx(0.58).epsilon(1e-12));
    CHECK(mixed.y() == doctest::Approx(0.44).epsilon(1e-12));
}

TEST_CASE("oracle boundary pi_bar = 1 - pi collapses X' and Y'") {
    RngStream rng(103);
    for (int trial = 0; trial < 100; ++trial) {
        const auto game =
            build_game(random_player_state(rng), random_player_state(rng), GainParams{0.05});
        const double pi = rng.next_double();
        const auto flat = perturb_with_oracle(game, {pi, 1.0 - pi});
        CHECK(std::fabs(flat.x() - flat.y()) < 1e-12);
        CHECK(std::fabs(flat.a() - flat.b()) < 1e-12);
    }
}

TEST_CASE("oracle sweep: assumption holds -> (H,H) survives; violated -> reversal") {
    RngStream rng(107);
    for (int trial = 0; trial < 500; ++trial) {
        const auto game =
            build_game(random_player_state(rng), random_player_state(rng), GainParams{0.05});

        const double pi = rng.next_double();
        const double margin = (1.0 - (1.0 - pi)) * rng.next_double();
        const OracleParams good{pi, std::min(1.0, 1.0 - pi + std::max(margin, 1e-6))};
        if (good.pi_bar > 1.0 - good.pi) {
            const auto perturbed = perturb_with_oracle(game, good);
            CHECK(is_unique_hh(perturbed));
        }

        const OracleParams bad{pi, (1.0 - pi) * rng.next_double() * 0.99};
        const auto reversed = perturb_with_oracle(game, bad);
        CHECK(reversed.x() <= reversed.y() + 1e-15);
    }
}
