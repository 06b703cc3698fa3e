#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace decentpeer {

std::string sha256_hex(const std::string& data);

inline const std::string kGenesisHash(64, '0');

enum class EventKind {
    UserRegistered,
    VenueCreated,
    PaperSubmitted,
    ReviewerAssigned,
    ReviewSubmitted,
    FaultFlagged,
    DecisionMade,
    ReputationUpdated,
    DepositEscrowed,
    DepositReturned,
};

std::string to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);

struct LedgerEvent {
    std::uint64_t sequence = 0;
    std::uint64_t interval = 0; // logical timestamp (interval, step)
    std::uint64_t step = 0;
    EventKind kind = EventKind::UserRegistered;
    nlohmann::json payload;
    std::string prev_hash;
    std::string this_hash;
};

class OrderingViolationError : public std::runtime_error {
public:
    OrderingViolationError() : std::runtime_error("event timestamp precedes ledger head") {}
};

struct ChainCheck {
    bool ok = true;
    std::uint64_t first_broken_sequence = 0; // meaningful only when !ok
};

// Append-only hash-chained event log. Events are sealed on append and
// optionally streamed to a jsonl file, one event per line.
class Ledger {
public:
    Ledger() = default;

    // Opens (creates or truncates) a backing file; pass empty for in-memory only.
    static Ledger create(const std::string& path);

    const LedgerEvent& append(EventKind kind, std::uint64_t interval, std::uint64_t step,
                              nlohmann::json payload);

    const std::vector<LedgerEvent>& events() const { return events_; }

    // Recomputes every digest and linkage over this ledger's events.
    ChainCheck verify() const;

    // Loads a jsonl ledger file without verifying; pair with verify().
    static Ledger load(const std::string& path);

    static ChainCheck verify_file(const std::string& path);

    void flush();

private:
    std::vector<LedgerEvent> events_;
    std::string path_;
};

// Digest over (prev_hash, sequence, timestamp, kind, payload) using a
// canonical length-prefixed serialization; payload keys are emitted sorted.
std::string event_digest(const LedgerEvent& event);

nlohmann::json event_to_json(const LedgerEvent& event);
LedgerEvent event_from_json(const nlohmann::json& j);

}  // namespace decentpeer
