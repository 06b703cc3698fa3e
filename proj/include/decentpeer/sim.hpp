#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "decentpeer/domain.hpp"
#include "decentpeer/ledger.hpp"
#include "decentpeer/reputation.hpp"
#include "decentpeer/rng.hpp"
#include "decentpeer/scoring.hpp"

namespace decentpeer {

enum class Archetype { Honest, Lazy, BlindReviewer, SilentButDeadly };

std::string to_string(Archetype a);
Archetype archetype_from_string(const std::string& name);

struct BehaviorProfile {
    Archetype archetype = Archetype::Honest;
    double fault_probability = 0.0; // mu, per interaction
    std::optional<std::uint64_t> switch_to_honest_at;
};

struct OracleConfig {
    double pi = 1.0;     // P(faulty behavior detected)
    double pi_bar = 1.0; // P(honest behavior confirmed)
};

struct CohortConfig {
    std::size_t count = 0;
    BehaviorProfile behavior;
    std::vector<std::string> tags;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& problem)
        : std::runtime_error("config field '" + field + "': " + problem), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct WorldConfig {
    std::vector<CohortConfig> cohorts;
    std::size_t venues_per_interval = 1;
    std::size_t papers_per_user = 1;
    std::size_t reviewer_size = 3;
    double accept_threshold = 4.0;
    double reject_threshold = 2.0;
    double committee_reputation_floor = 0.0;
    std::optional<std::size_t> venue_capacity;
    std::vector<std::string> venue_tags; // defaults to the union of cohort tags
    double alpha = 0.05;
    OracleConfig oracle;
    std::uint64_t intervals = 10;
    std::uint64_t master_seed = 0;

    // Assumption-3 regimes need a >= 2/3 honest mix; out-of-assumption runs
    // are allowed but flagged in the interval report.
    bool honest_majority() const;

    static WorldConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    std::vector<nlohmann::json> cohorts_to_json_helper() const;
};

struct IntervalReport {
    std::uint64_t interval = 0;
    std::size_t user_count = 0;
    double mean_reputation = 0.0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t borderline_accepted = 0;
    std::size_t borderline_rejected = 0;
};

class InsufficientReviewersError : public std::runtime_error {
public:
    InsufficientReviewersError() : std::runtime_error("reviewer pool smaller than committee size") {}
};

// Oracle-filtered verdict: Faulty caught w.p. pi, Honest confirmed w.p.
// pi_bar (else flagged Faulty), PartiallyFaulty caught w.p. pi.
Verdict judge_interaction(Verdict truth, const OracleConfig& oracle, RngStream& rng);

// r distinct reviewers drawn uniformly from the pool; pool must already
// exclude authors and conflicts.
UnifiedParty assign_reviewers(const std::vector<UserId>& pool, std::size_t committee_size,
                              RngStream& rng);

class Simulation {
public:
    // ledger_path empty keeps the ledger in memory only.
    Simulation(WorldConfig config, const std::string& ledger_path = "");

    IntervalReport run_interval();
    std::vector<IntervalReport> run_all();

    const UserTable& users() const { return users_; }
    const std::map<std::uint64_t, PaperRecord>& papers() const { return papers_; }
    const Ledger& ledger() const { return ledger_; }
    std::uint64_t current_interval() const { return interval_; }

    // Canonical digest over final reputation states and paper decisions.
    std::string world_digest() const;

private:
    void register_users();
    void run_venue(std::uint64_t venue_index, RngStream venue_stream, IntervalReport& report,
                   std::uint64_t& step);

    WorldConfig config_;
    UserTable users_;
    std::map<UserId, BehaviorProfile> behaviors_;
    std::map<std::uint64_t, PaperRecord> papers_;
    std::map<UserId, bool> authored_this_interval_;
    Ledger ledger_;
    RngStream master_;
    std::uint64_t interval_ = 0;
    std::uint64_t next_paper_id_ = 0;
};

// Rebuilds the world digest from a verified ledger; bit-identical to the
// live digest by the event-sourcing contract.
std::string replay_digest(const Ledger& ledger);

struct RecoveryConfig {
    std::vector<double> fault_probabilities;
    std::uint64_t intervals = 40;
    std::uint64_t switch_at = 20;
    std::size_t cohort_size = 200;
    double alpha = 0.05;
    double detection_probability = 0.9; // pi applied to actually-lazy reviews
    double counterparty_reputation = 0.5;
    std::uint64_t seed = 0;
};

struct RecoveryPoint {
    std::uint64_t interval = 0;
    double fault_probability = 0.0;
    double mean_reputation = 0.0;
    double stderr_reputation = 0.0;
};

// One review per user per interval; lazy with probability mu until the
// switch interval, honest afterwards. A review is flagged Faulty only when
// it is actually lazy and the detector fires.
std::vector<RecoveryPoint> recovery_experiment(const RecoveryConfig& config);

struct PenaltyInterval {
    double lower = 0.0; // exclusive
    double upper = 1.0; // inclusive
};

// Range of the one-review-per-interval punishment factor
// P = (1 + R - mu*pi*R) / (1 + R) over pi in [pi_lo, pi_hi) x mu in
// [mu_lo, mu_hi]; defaults give (2/3, 59/60].
PenaltyInterval lazy_penalty_range(double pi_lo = 0.5, double pi_hi = 1.0, double mu_lo = 0.1,
                                   double mu_hi = 1.0, double mean_counterparty_reputation = 0.5);

}  // namespace decentpeer
