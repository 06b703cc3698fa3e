#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace decentpeer {

using UserId = std::uint64_t;

// Normalized (lowercased, trimmed) topic strings. std::set keeps iteration
// order stable for canonical serialization.
using TagSet = std::set<std::string>;

TagSet normalize_tags(const std::vector<std::string>& raw);

enum class Verdict { Honest, Faulty, PartiallyFaulty };

enum class Decision { Pending, Accepted, Rejected, BorderlineAccepted, BorderlineRejected };

std::string to_string(Verdict v);
std::string to_string(Decision d);

struct InteractionRecord {
    std::vector<UserId> counterparty;     // unified party member ids
    double counterparty_reputation = 0.5; // snapshot at interaction time
    Verdict verdict = Verdict::Honest;
    std::uint64_t interval = 0;
};

struct ReputationState {
    double score = 0.5;                 // open interval (0,1)
    std::uint64_t active_intervals = 0; // t_i; 0 until first active interval closes
    std::vector<InteractionRecord> current_interactions;
};

struct UserProfile {
    UserId id = 0;
    TagSet tags;
    ReputationState reputation;
};

struct UnifiedParty {
    std::vector<UserId> members;
};

struct Review {
    UserId reviewer = 0;
    double score = 1.0;              // S in [1,5]
    double competence = 0.0;         // C in [0,1]
    double reviewer_reputation = 0.5;
};

struct PaperRecord {
    std::uint64_t id = 0;
    UnifiedParty authors;
    TagSet tags;
    std::vector<Review> reviews;
    std::optional<double> weighted_score;
    Decision decision = Decision::Pending;
};

struct VenueConfig {
    std::uint64_t id = 0;
    TagSet topic_tags;
    double accept_threshold = 4.0;
    double reject_threshold = 2.0;
    double committee_reputation_floor = 0.0;
    std::size_t reviewer_size = 1; // r
    std::optional<std::size_t> capacity;
};

enum class PaperViolation { ScoreOutOfRange, CompetenceOutOfRange, ReviewerIsAuthor, EmptyAuthors };

std::string to_string(PaperViolation v);

// All invariant violations; empty iff the paper is valid.
std::vector<PaperViolation> validate_paper(const PaperRecord& paper);

class UnknownUserError : public std::runtime_error {
public:
    explicit UnknownUserError(UserId id)
        : std::runtime_error("unknown user id " + std::to_string(id)) {}
};

using UserTable = std::unordered_map<UserId, UserProfile>;

// Arithmetic mean of members' current scores; singleton party is the identity.
double unified_reputation(const UnifiedParty& party, const UserTable& users);

}  // namespace decentpeer
