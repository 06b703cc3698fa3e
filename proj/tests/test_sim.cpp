#include <doctest.h>

#include <cmath>
#include <map>

#include "decentpeer/sim.hpp"

using namespace decentpeer;

namespace {

WorldConfig small_world(std::uint64_t seed = 1) {
    WorldConfig cfg;
    cfg.cohorts.push_back({8, {Archetype::Honest, 0.0, {}}, {"net", "sys"}});
    cfg.cohorts.push_back({2, {Archetype::Lazy, 0.5, {}}, {"net"}});
    cfg.reviewer_size = 3;
    cfg.papers_per_user = 1;
    cfg.intervals = 4;
    cfg.oracle = {0.9, 0.95};
    cfg.venue_capacity = 5;
    cfg.master_seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("judge_interaction honours the oracle probabilities") {
    RngStream rng(1);
    OracleConfig perfect{1.0, 1.0};
    CHECK(judge_interaction(Verdict::Faulty, perfect, rng) == Verdict::Faulty);
    CHECK(judge_interaction(Verdict::Honest, perfect, rng) == Verdict::Honest);
    CHECK(judge_interaction(Verdict::PartiallyFaulty, perfect, rng) == Verdict::PartiallyFaulty);

    OracleConfig blind{0.0, 1.0};
    for (int k = 0; k < 100; ++k)
        CHECK(judge_interaction(Verdict::Faulty, blind, rng) == Verdict::Honest);

    OracleConfig partial{0.7, 1.0};
    int caught = 0;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k)
        if (judge_interaction(Verdict::Faulty, partial, rng) == Verdict::Faulty) ++caught;
    const double fraction = static_cast<double>(caught) / draws;
    const double sigma = std::sqrt(0.7 * 0.3 / draws);
    CHECK(std::fabs(fraction - 0.7) < 4.0 * sigma);
}

TEST_CASE("assign_reviewers: forced pool, determinism, pool too small") {
    RngStream rng(2);
    const std::vector<UserId> tiny{4, 9, 11};
    auto forced = assign_reviewers(tiny, 3, rng);
    CHECK(forced.members == std::vector<UserId>{4, 9, 11});

    CHECK_THROWS_AS(assign_reviewers(tiny, 4, rng), InsufficientReviewersError);

    std::vector<UserId> pool;
    for (UserId id = 1; id <= 10; ++id) pool.push_back(id);
    RngStream a(77), b(77);
    CHECK(assign_reviewers(pool, 3, a).members == assign_reviewers(pool, 3, b).members);
}

TEST_CASE("assign_reviewers draws roughly uniformly") {
    std::vector<UserId> pool;
    for (UserId id = 0; id < 10; ++id) pool.push_back(id);
    std::map<UserId, int> counts;
    RngStream rng(5);
    const int draws = 30000;
    for (int k = 0; k < draws; ++k)
        for (UserId id : assign_reviewers(pool, 3, rng).members) ++counts[id];
    // each user expected in 3/10 of draws
    for (const auto& [id, count] : counts) {
        const double fraction = static_cast<double>(count) / draws;
        CHECK(std::fabs(fraction - 0.3) < 0.02);
    }
}

TEST_CASE("simulation: conservation of review and decision events") {
    Simulation sim(small_world());
    sim.run_all();
    std::map<std::uint64_t, int> reviews, decisions;
    for (const auto& event : sim.ledger().events()) {
        if (event.kind == EventKind::ReviewSubmitted)
            ++reviews[event.payload.at("paper").get<std::uint64_t>()];
        if (event.kind == EventKind::DecisionMade)
            ++decisions[event.payload.at("paper").get<std::uint64_t>()];
    }
    CHECK(!sim.papers().empty());
    for (const auto& [paper_id, paper] : sim.papers()) {
        CHECK(reviews[paper_id] == 3);
        CHECK(decisions[paper_id] == 1);
        CHECK(paper.decision != Decision::Pending);
        CHECK(validate_paper(paper).empty());
    }
}

TEST_CASE("simulation: same seed reproduces the digest, different seed diverges") {
    Simulation a(small_world(42));
    Simulation b(small_world(42));
    a.run_all();
    b.run_all();
    CHECK(a.world_digest() == b.world_digest());

    int distinct = 0;
    const std::string base = a.world_digest();
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u}) {
        Simulation other(small_world(seed));
        other.run_all();
        if (other.world_digest() != base) ++distinct;
    }
    CHECK(distinct == 10);
}

TEST_CASE("simulation: inactive users keep bit-identical state") {
    // users tagged off-topic never enter the pool and never author on-topic
    WorldConfig cfg = small_world();
    cfg.venue_tags = {"net", "sys"};
    cfg.cohorts.push_back({3, {Archetype::Honest, 0.0, {}}, {"astrology"}});
    cfg.papers_per_user = 0; // reviewers only; nobody authors
    Simulation sim(cfg);
    sim.run_all();
    for (const auto& [id, user] : sim.users()) {
        CHECK(user.reputation.score == 0.5);
        CHECK(user.reputation.active_intervals == 0);
    }
}

TEST_CASE("simulation: replay of the ledger reproduces the live digest") {
    Simulation sim(small_world(9));
    sim.run_all();
    CHECK(replay_digest(sim.ledger()) == sim.world_digest());
}

TEST_CASE("simulation: honest-majority mix keeps mean reputation at least 0.5") {
    WorldConfig cfg = small_world(3);
    cfg.intervals = 12;
    REQUIRE(cfg.honest_majority());
    Simulation sim(cfg);
    const auto reports = sim.run_all();
    CHECK(reports.back().mean_reputation >= 0.5);
}

TEST_CASE("world config: validation diagnostics name the field") {
    nlohmann::json bad{{"cohorts", nlohmann::json::array()}};
    CHECK_THROWS_WITH_AS(WorldConfig::from_json(bad),
                         "config field 'cohorts': must be a nonempty array", ConfigError);

    nlohmann::json thresholds{{"cohorts", {{{"count", 5}}}},
                              {"accept_threshold", 2.0},
                              {"reject_threshold", 3.0}};
    CHECK_THROWS_AS(WorldConfig::from_json(thresholds), ConfigError);

    nlohmann::json alpha_bad{{"cohorts", {{{"count", 5}}}}, {"alpha", 0.2}};
    CHECK_THROWS_AS(WorldConfig::from_json(alpha_bad), ConfigError);
}

TEST_CASE("recovery experiment: zero-fault cohort increases monotonically") {
    RecoveryConfig cfg;
    cfg.fault_probabilities = {0.0};
    cfg.cohort_size = 10;
    cfg.intervals = 30;
    const auto series = recovery_experiment(cfg);
    REQUIRE(series.size() == 30);
    for (std::size_t k = 1; k < series.size(); ++k)
        CHECK(series[k].mean_reputation > series[k - 1].mean_reputation);
    CHECK(series.back().mean_reputation > 0.95);
}

TEST_CASE("recovery experiment: determinism under a fixed seed") {
    RecoveryConfig cfg;
    cfg.fault_probabilities = {0.3};
    cfg.cohort_size = 20;
    cfg.intervals = 10;
    cfg.seed = 12;
    const auto a = recovery_experiment(cfg);
    const auto b = recovery_experiment(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(a[k].mean_reputation == b[k].mean_reputation);
}

TEST_CASE("recovery experiment: always-faulty cohort decays before the switch") {
    RecoveryConfig cfg;
    cfg.fault_probabilities = {1.0};
    cfg.detection_probability = 1.0;
    cfg.cohort_size = 5;
    cfg.intervals = 25;
    cfg.switch_at = 20;
    const auto series = recovery_experiment(cfg);
    CHECK(series[19].mean_reputation < 0.01);
    CHECK(series[24].mean_reputation > series[19].mean_reputation);
}

TEST_CASE("lazy penalty range endpoints") {
    const auto range = lazy_penalty_range();
    CHECK(range.lower == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(range.upper == doctest::Approx(59.0 / 60.0).epsilon(1e-9));
    const auto none = lazy_penalty_range(0.5, 1.0, 0.0, 0.0);
    CHECK(none.upper == doctest::Approx(1.0));
}
