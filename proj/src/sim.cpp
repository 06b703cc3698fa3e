#include "decentpeer/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace decentpeer {

std::string to_string(Archetype a) {
    switch (a) {
        case Archetype::Honest: return "honest";
        case Archetype::Lazy: return "lazy";
        case Archetype::BlindReviewer: return "blind_reviewer";
        case Archetype::SilentButDeadly: return "silent_but_deadly";
    }
    throw std::invalid_argument("unknown archetype");
}

Archetype archetype_from_string(const std::string& name) {
    if (name == "honest") return Archetype::Honest;
    if (name == "lazy") return Archetype::Lazy;
    if (name == "blind_reviewer") return Archetype::BlindReviewer;
    if (name == "silent_but_deadly") return Archetype::SilentButDeadly;
    throw std::invalid_argument("unknown archetype: " + name);
}

bool WorldConfig::honest_majority() const {
    std::size_t total = 0, honest = 0;
    for (const auto& c : cohorts) {
        total += c.count;
        if (c.behavior.archetype == Archetype::Honest || c.behavior.fault_probability == 0.0)
            honest += c.count;
    }
    return total == 0 || 3 * honest >= 2 * total;
}

static double require_number(const nlohmann::json& j, const std::string& field, double lo,
                             double hi, std::optional<double> fallback = std::nullopt) {
    if (!j.contains(field)) {
        if (fallback) return *fallback;
        throw ConfigError(field, "missing");
    }
    if (!j.at(field).is_number()) throw ConfigError(field, "must be a number");
    const double v = j.at(field).get<double>();
    if (v < lo || v > hi)
        throw ConfigError(field, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

WorldConfig WorldConfig::from_json(const nlohmann::json& j) {
    WorldConfig cfg;
    if (!j.contains("cohorts") || !j.at("cohorts").is_array() || j.at("cohorts").empty())
        throw ConfigError("cohorts", "must be a nonempty array");
    for (std::size_t idx = 0; idx < j.at("cohorts").size(); ++idx) {
        const auto& cj = j.at("cohorts")[idx];
        const std::string base = "cohorts[" + std::to_string(idx) + "].";
        CohortConfig cohort;
        cohort.count = static_cast<std::size_t>(require_number(cj, "count", 1, 1e9));
        if (cj.contains("archetype"))
            cohort.behavior.archetype = archetype_from_string(cj.at("archetype").get<std::string>());
        cohort.behavior.fault_probability = require_number(cj, "fault_probability", 0.0, 1.0, 0.0);
        if (cohort.behavior.archetype == Archetype::Honest &&
            cohort.behavior.fault_probability != 0.0)
            throw ConfigError(base + "fault_probability", "must be 0 for the honest archetype");
        if (cj.contains("switch_to_honest_at"))
            cohort.behavior.switch_to_honest_at = cj.at("switch_to_honest_at").get<std::uint64_t>();
        if (cj.contains("tags"))
            cohort.tags = cj.at("tags").get<std::vector<std::string>>();
        cfg.cohorts.push_back(std::move(cohort));
    }
    cfg.venues_per_interval = static_cast<std::size_t>(require_number(j, "venues_per_interval", 1, 1e6, 1));
    cfg.papers_per_user = static_cast<std::size_t>(require_number(j, "papers_per_user", 0, 100, 1));
    cfg.reviewer_size = static_cast<std::size_t>(require_number(j, "reviewer_size", 1, 1e6, 3));
    cfg.accept_threshold = require_number(j, "accept_threshold", 1.0, 5.0, 4.0);
    cfg.reject_threshold = require_number(j, "reject_threshold", 1.0, 5.0, 2.0);
    if (cfg.reject_threshold >= cfg.accept_threshold)
        throw ConfigError("reject_threshold", "must be below accept_threshold");
    cfg.committee_reputation_floor = require_number(j, "committee_reputation_floor", 0.0, 1.0, 0.0);
    if (j.contains("venue_capacity"))
        cfg.venue_capacity = static_cast<std::size_t>(require_number(j, "venue_capacity", 0, 1e9));
    if (j.contains("venue_tags"))
        cfg.venue_tags = j.at("venue_tags").get<std::vector<std::string>>();
    cfg.alpha = require_number(j, "alpha", 1e-12, 1.0 / 6.0 - 1e-12, 0.05);
    if (j.contains("oracle")) {
        cfg.oracle.pi = require_number(j.at("oracle"), "pi", 0.0, 1.0, 1.0);
        cfg.oracle.pi_bar = require_number(j.at("oracle"), "pi_bar", 0.0, 1.0, 1.0);
    }
    cfg.intervals = static_cast<std::uint64_t>(require_number(j, "intervals", 1, 1e6, 10));
    if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    return cfg;
}

nlohmann::json WorldConfig::to_json() const {
    nlohmann::json cohorts = nlohmann::json::array();
    for (const auto& c : cohorts_to_json_helper()) cohorts.push_back(c);
    nlohmann::json j{{"cohorts", cohorts},
                     {"venues_per_interval", venues_per_interval},
                     {"papers_per_user", papers_per_user},
                     {"reviewer_size", reviewer_size},
                     {"accept_threshold", accept_threshold},
                     {"reject_threshold", reject_threshold},
                     {"committee_reputation_floor", committee_reputation_floor},
                     {"alpha", alpha},
                     {"oracle", {{"pi", oracle.pi}, {"pi_bar", oracle.pi_bar}}},
                     {"intervals", intervals},
                     {"master_seed", master_seed}};
    if (venue_capacity) j["venue_capacity"] = *venue_capacity;
    if (!venue_tags.empty()) j["venue_tags"] = venue_tags;
    return j;
}

std::vector<nlohmann::json> WorldConfig::cohorts_to_json_helper() const {
    std::vector<nlohmann::json> out;
    for (const auto& c : cohorts) {
        nlohmann::json cj{{"count", c.count},
                          {"archetype", to_string(c.behavior.archetype)},
                          {"fault_probability", c.behavior.fault_probability}};
        if (c.behavior.switch_to_honest_at) cj["switch_to_honest_at"] = *c.behavior.switch_to_honest_at;
        if (!c.tags.empty()) cj["tags"] = c.tags;
        out.push_back(std::move(cj));
    }
    return out;
}

Verdict judge_interaction(Verdict truth, const OracleConfig& oracle, RngStream& rng) {
    switch (truth) {
        case Verdict::Faulty:
            return rng.bernoulli(oracle.pi) ? Verdict::Faulty : Verdict::Honest;
        case Verdict::Honest:
            return rng.bernoulli(oracle.pi_bar) ? Verdict::Honest : Verdict::Faulty;
        case Verdict::PartiallyFaulty:
            return rng.bernoulli(oracle.pi) ? Verdict::PartiallyFaulty : Verdict::Honest;
    }
    throw std::invalid_argument("unknown verdict");
}

UnifiedParty assign_reviewers(const std::vector<UserId>& pool, std::size_t committee_size,
                              RngStream& rng) {
    if (pool.size() < committee_size) throw InsufficientReviewersError();
    auto picks = sample_without_replacement(pool.size(), committee_size, rng);
    std::sort(picks.begin(), picks.end());
    UnifiedParty party;
    party.members.reserve(committee_size);
    for (std::size_t idx : picks) party.members.push_back(pool[idx]);
    return party;
}

static std::string hexfloat(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

Simulation::Simulation(WorldConfig config, const std::string& ledger_path)
    : config_(std::move(config)),
      ledger_(Ledger::create(ledger_path)),
      master_(config_.master_seed) {
    register_users();
}

void Simulation::register_users() {
    UserId next_id = 1;
    TagSet all_tags;
    for (const auto& cohort : config_.cohorts) {
        const TagSet tags = normalize_tags(cohort.tags.empty()
                                               ? std::vector<std::string>{"general"}
                                               : cohort.tags);
        for (std::size_t k = 0; k < cohort.count; ++k) {
            UserProfile profile;
            profile.id = next_id++;
            profile.tags = tags;
            profile.reputation.score = 0.5;
            behaviors_[profile.id] = cohort.behavior;
            ledger_.append(EventKind::UserRegistered, 0, profile.id,
                           {{"user", profile.id},
                            {"score", hexfloat(profile.reputation.score)},
                            {"tags", std::vector<std::string>(tags.begin(), tags.end())}});
            users_.emplace(profile.id, std::move(profile));
        }
        all_tags.insert(tags.begin(), tags.end());
    }
    if (config_.venue_tags.empty())
        config_.venue_tags.assign(all_tags.begin(), all_tags.end());
}

namespace {

struct ReviewPlan {
    Verdict truth = Verdict::Honest;
    double score = 3.0;
};

ReviewPlan plan_review(const BehaviorProfile& behavior, std::uint64_t interval, double quality,
                       RngStream& rng) {
    const bool switched =
        behavior.switch_to_honest_at && interval >= *behavior.switch_to_honest_at;
    const bool misbehaves =
        !switched && behavior.archetype != Archetype::Honest &&
        rng.bernoulli(behavior.fault_probability);
    ReviewPlan plan;
    if (!misbehaves) {
        plan.truth = Verdict::Honest;
        plan.score = std::clamp(quality + (rng.next_double() - 0.5), 1.0, 5.0);
        return plan;
    }
    switch (behavior.archetype) {
        case Archetype::Lazy:
            // Canned repeat of an old review; score carries no signal.
            plan.truth = Verdict::Faulty;
            plan.score = 3.0;
            break;
        case Archetype::BlindReviewer:
            plan.truth = Verdict::Faulty;
            plan.score = 2.0 + 2.0 * rng.next_double();
            break;
        case Archetype::SilentButDeadly:
            // Plausible score, contentless review; caught in comparison.
            plan.truth = Verdict::PartiallyFaulty;
            plan.score = std::clamp(quality + (rng.next_double() - 0.5), 1.0, 5.0);
            break;
        case Archetype::Honest:
            break;
    }
    return plan;
}

}  // namespace

void Simulation::run_venue(std::uint64_t venue_index, RngStream venue_stream,
                           IntervalReport& report, std::uint64_t& step) {
    VenueConfig venue;
    venue.id = interval_ * 1000 + venue_index;
    venue.topic_tags = normalize_tags(config_.venue_tags);
    venue.accept_threshold = config_.accept_threshold;
    venue.reject_threshold = config_.reject_threshold;
    venue.committee_reputation_floor = config_.committee_reputation_floor;
    venue.reviewer_size = config_.reviewer_size;
    venue.capacity = config_.venue_capacity;

    ledger_.append(EventKind::VenueCreated, interval_, step++,
                   {{"venue", venue.id},
                    {"tags", std::vector<std::string>(venue.topic_tags.begin(),
                                                      venue.topic_tags.end())}});

    std::vector<UserId> ids;
    ids.reserve(users_.size());
    for (const auto& [id, _] : users_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());

    std::vector<UserId> pool;
    for (UserId id : ids) {
        const auto& u = users_.at(id);
        if (u.reputation.score >= venue.committee_reputation_floor &&
            similarity(u.tags, venue.topic_tags) > 0.0)
            pool.push_back(id);
    }

    struct Pending {
        std::uint64_t paper_id;
        UserId author;
        UnifiedParty reviewers;
        std::uint64_t order;
    };
    std::vector<Pending> pending;
    std::uint64_t order = 0;

    for (UserId author : ids) {
        for (std::size_t k = 0; k < config_.papers_per_user; ++k) {
            RngStream paper_stream = venue_stream.child(author, k);
            const double quality = 1.0 + 4.0 * paper_stream.next_double();

            PaperRecord paper;
            paper.id = next_paper_id_++;
            paper.authors.members = {author};
            paper.tags = users_.at(author).tags;

            ledger_.append(EventKind::PaperSubmitted, interval_, step++,
                           {{"paper", paper.id}, {"author", author},
                            {"quality", hexfloat(quality)}});
            const double deposit = 0.1 * users_.at(author).reputation.score;
            ledger_.append(EventKind::DepositEscrowed, interval_, step++,
                           {{"paper", paper.id}, {"user", author},
                            {"amount", hexfloat(deposit)}});
            authored_this_interval_[author] = true;

            std::vector<UserId> eligible;
            for (UserId id : pool)
                if (id != author) eligible.push_back(id);
            RngStream assign_stream = paper_stream.child(0xa551ULL);
            UnifiedParty reviewers = assign_reviewers(eligible, venue.reviewer_size, assign_stream);
            ledger_.append(EventKind::ReviewerAssigned, interval_, step++,
                           {{"paper", paper.id}, {"reviewers", reviewers.members}});

            const double author_rep_snapshot = unified_reputation(paper.authors, users_);
            const double reviewer_rep_snapshot = unified_reputation(reviewers, users_);

            std::vector<Verdict> author_side_verdicts;
            for (UserId reviewer : reviewers.members) {
                RngStream review_stream = paper_stream.child(0x7e71ULL, reviewer);
                const auto plan =
                    plan_review(behaviors_.at(reviewer), interval_, quality, review_stream);
                const Verdict verdict =
                    judge_interaction(plan.truth, config_.oracle, review_stream);

                Review review;
                review.reviewer = reviewer;
                review.score = plan.score;
                review.competence = competence(users_.at(reviewer).tags, paper.tags);
                review.reviewer_reputation = users_.at(reviewer).reputation.score;
                paper.reviews.push_back(review);

                ledger_.append(EventKind::ReviewSubmitted, interval_, step++,
                               {{"paper", paper.id}, {"reviewer", reviewer},
                                {"score", hexfloat(plan.score)},
                                {"competence", hexfloat(review.competence)}});
                if (verdict != Verdict::Honest)
                    ledger_.append(EventKind::FaultFlagged, interval_, step++,
                                   {{"paper", paper.id}, {"user", reviewer},
                                    {"verdict", to_string(verdict)}});

                users_.at(reviewer).reputation.current_interactions.push_back(
                    {paper.authors.members, author_rep_snapshot, verdict, interval_});
            }

            // Author conduct is judged once per paper against the unified
            // reviewer; harness authors always behave honestly.
            RngStream author_stream = paper_stream.child(0xa07fULL);
            const Verdict author_verdict =
                judge_interaction(Verdict::Honest, config_.oracle, author_stream);
            if (author_verdict != Verdict::Honest)
                ledger_.append(EventKind::FaultFlagged, interval_, step++,
                               {{"paper", paper.id}, {"user", author},
                                {"verdict", to_string(author_verdict)}});
            users_.at(author).reputation.current_interactions.push_back(
                {reviewers.members, reviewer_rep_snapshot, author_verdict, interval_});

            pending.push_back({paper.id, author, reviewers, order++});
            papers_.emplace(paper.id, std::move(paper));
        }
    }

    // Decisions: thresholds first, then borderline ranking under capacity.
    std::size_t accepted_here = 0;
    std::vector<BorderlineCandidate> borderline;
    for (const auto& p : pending) {
        auto& paper = papers_.at(p.paper_id);
        const Triage triage = decide(paper, venue);
        if (triage == Triage::Accepted) {
            paper.decision = Decision::Accepted;
            ++accepted_here;
            ++report.accepted;
        } else if (triage == Triage::Rejected) {
            paper.decision = Decision::Rejected;
            ++report.rejected;
        } else {
            const double author_rep = unified_reputation(paper.authors, users_);
            double w;
            try {
                w = weighted_score(paper, author_rep);
            } catch (const DegenerateWeightsError&) {
                w = author_rep * mean_review_score(paper) /
                    static_cast<double>(paper.reviews.size());
            }
            paper.weighted_score = w;
            borderline.push_back({p.paper_id, author_rep, w, p.order});
        }
    }

    std::size_t remaining = borderline.size();
    if (venue.capacity)
        remaining = *venue.capacity > accepted_here ? *venue.capacity - accepted_here : 0;
    const auto chosen = select_borderline(borderline, remaining);
    for (const auto& cand : borderline) {
        auto& paper = papers_.at(cand.paper_id);
        const bool in = std::find(chosen.begin(), chosen.end(), cand.paper_id) != chosen.end();
        paper.decision = in ? Decision::BorderlineAccepted : Decision::BorderlineRejected;
        if (in)
            ++report.borderline_accepted;
        else
            ++report.borderline_rejected;
    }
    for (const auto& p : pending) {
        const auto& paper = papers_.at(p.paper_id);
        ledger_.append(EventKind::DecisionMade, interval_, step++,
                       {{"paper", p.paper_id}, {"decision", to_string(paper.decision)}});
        ledger_.append(EventKind::DepositReturned, interval_, step++,
                       {{"paper", p.paper_id}, {"user", p.author}});
    }
}

IntervalReport Simulation::run_interval() {
    ++interval_;
    IntervalReport report;
    report.interval = interval_;
    report.user_count = users_.size();
    authored_this_interval_.clear();

    std::uint64_t step = 0;
    RngStream interval_stream = master_.child(0x17e0ULL, interval_);
    for (std::uint64_t v = 0; v < config_.venues_per_interval; ++v)
        run_venue(v, interval_stream.child(0x0e1eULL, v), report, step);

    // Interval close: Eq.-style update for active users only.
    std::vector<UserId> ids;
    for (const auto& [id, _] : users_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    GainParams params{config_.alpha};
    double total = 0.0;
    for (UserId id : ids) {
        auto& u = users_.at(id);
        const bool authored = authored_this_interval_.count(id) > 0;
        auto result = update_reputation(u.reputation, params, authored, config_.oracle.pi);
        if (result.updated) {
            u.reputation = result.state;
            ledger_.append(EventKind::ReputationUpdated, interval_, step++,
                           {{"user", id}, {"score", hexfloat(u.reputation.score)},
                            {"active_intervals", u.reputation.active_intervals}});
        }
        total += u.reputation.score;
    }
    report.mean_reputation = users_.empty() ? 0.0 : total / static_cast<double>(users_.size());
    return report;
}

std::vector<IntervalReport> Simulation::run_all() {
    std::vector<IntervalReport> out;
    for (std::uint64_t i = 0; i < config_.intervals; ++i) out.push_back(run_interval());
    return out;
}

std::string Simulation::world_digest() const {
    std::string buf;
    std::vector<UserId> ids;
    for (const auto& [id, _] : users_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    for (UserId id : ids) {
        const auto& u = users_.at(id);
        buf += "u:" + std::to_string(id) + ":" + hexfloat(u.reputation.score) + ":" +
               std::to_string(u.reputation.active_intervals) + ";";
    }
    for (const auto& [id, paper] : papers_)
        buf += "p:" + std::to_string(id) + ":" + to_string(paper.decision) + ";";
    return sha256_hex(buf);
}

std::string replay_digest(const Ledger& ledger) {
    const auto check = ledger.verify();
    if (!check.ok)
        throw std::runtime_error("refusing to replay: chain broken at sequence " +
                                 std::to_string(check.first_broken_sequence));
    struct UserState {
        double score = 0.5;
        std::uint64_t active_intervals = 0;
    };
    std::map<UserId, UserState> users;
    std::map<std::uint64_t, std::string> decisions;
    for (const auto& event : ledger.events()) {
        switch (event.kind) {
            case EventKind::UserRegistered: {
                UserState st;
                st.score = std::strtod(event.payload.at("score").get<std::string>().c_str(), nullptr);
                users[event.payload.at("user").get<UserId>()] = st;
                break;
            }
            case EventKind::ReputationUpdated: {
                auto& st = users.at(event.payload.at("user").get<UserId>());
                st.score = std::strtod(event.payload.at("score").get<std::string>().c_str(), nullptr);
                st.active_intervals = event.payload.at("active_intervals").get<std::uint64_t>();
                break;
            }
            case EventKind::PaperSubmitted:
                decisions[event.payload.at("paper").get<std::uint64_t>()] = to_string(Decision::Pending);
                break;
            case EventKind::DecisionMade:
                decisions[event.payload.at("paper").get<std::uint64_t>()] =
                    event.payload.at("decision").get<std::string>();
                break;
            default:
                break;
        }
    }
    std::string buf;
    for (const auto& [id, st] : users)
        buf += "u:" + std::to_string(id) + ":" + hexfloat(st.score) + ":" +
               std::to_string(st.active_intervals) + ";";
    for (const auto& [id, decision] : decisions)
        buf += "p:" + std::to_string(id) + ":" + decision + ";";
    return sha256_hex(buf);
}

std::vector<RecoveryPoint> recovery_experiment(const RecoveryConfig& config) {
    std::vector<RecoveryPoint> out;
    const GainParams params{config.alpha};
    const RngStream master(config.seed);
    for (std::size_t c = 0; c < config.fault_probabilities.size(); ++c) {
        const double mu = config.fault_probabilities[c];
        std::vector<ReputationState> cohort(config.cohort_size);
        for (std::uint64_t interval = 1; interval <= config.intervals; ++interval) {
            double sum = 0.0, sumsq = 0.0;
            for (std::size_t u = 0; u < config.cohort_size; ++u) {
                RngStream rng = master.child(c, u).child(0x1e0cULL, interval);
                auto& state = cohort[u];
                const bool lazy = interval <= config.switch_at && rng.bernoulli(mu);
                const bool caught = lazy && rng.bernoulli(config.detection_probability);
                state.current_interactions.push_back(
                    {{}, config.counterparty_reputation,
                     caught ? Verdict::Faulty : Verdict::Honest, interval});
                state = update_reputation(state, params).state;
                sum += state.score;
                sumsq += state.score * state.score;
            }
            const double n = static_cast<double>(config.cohort_size);
            const double mean = sum / n;
            const double var = std::max(0.0, sumsq / n - mean * mean);
            out.push_back({interval, mu, mean, std::sqrt(var / n)});
        }
    }
    return out;
}

PenaltyInterval lazy_penalty_range(double pi_lo, double pi_hi, double mu_lo, double mu_hi,
                                   double mean_counterparty_reputation) {
    const double r = mean_counterparty_reputation;
    auto penalty = [r](double mu, double pi) { return (1.0 + r - mu * pi * r) / (1.0 + r); };
    // P is decreasing in mu*pi: the infimum sits at (mu_hi, pi_hi) (open, as
    // pi_hi is excluded), the maximum at (mu_lo, pi_lo).
    return {penalty(mu_hi, pi_hi), penalty(mu_lo, pi_lo)};
}

}  // namespace decentpeer
