#include "decentpeer/ledger.hpp"

#include <fstream>

#include <openssl/evp.h>

namespace decentpeer {

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::UserRegistered: return "user_registered";
        case EventKind::VenueCreated: return "venue_created";
        case EventKind::PaperSubmitted: return "paper_submitted";
        case EventKind::ReviewerAssigned: return "reviewer_assigned";
        case EventKind::ReviewSubmitted: return "review_submitted";
        case EventKind::FaultFlagged: return "fault_flagged";
        case EventKind::DecisionMade: return "decision_made";
        case EventKind::ReputationUpdated: return "reputation_updated";
        case EventKind::DepositEscrowed: return "deposit_escrowed";
        case EventKind::DepositReturned: return "deposit_returned";
    }
    throw std::invalid_argument("unknown event kind");
}

EventKind event_kind_from_string(const std::string& name) {
    for (int k = 0; k <= static_cast<int>(EventKind::DepositReturned); ++k) {
        if (to_string(static_cast<EventKind>(k)) == name) return static_cast<EventKind>(k);
    }
    throw std::invalid_argument("unknown event kind: " + name);
}

static void append_field(std::string& buf, const std::string& field) {
    buf += std::to_string(field.size());
    buf += ':';
    buf += field;
    buf += ';';
}

std::string event_digest(const LedgerEvent& event) {
    std::string buf;
    append_field(buf, event.prev_hash);
    append_field(buf, std::to_string(event.sequence));
    append_field(buf, std::to_string(event.interval));
    append_field(buf, std::to_string(event.step));
    append_field(buf, to_string(event.kind));
    append_field(buf, event.payload.dump());
    return sha256_hex(buf);
}

Ledger Ledger::create(const std::string& path) {
    Ledger ledger;
    ledger.path_ = path;
    if (!path.empty()) {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open ledger file for writing: " + path);
    }
    return ledger;
}

const LedgerEvent& Ledger::append(EventKind kind, std::uint64_t interval, std::uint64_t step,
                                  nlohmann::json payload) {
    LedgerEvent event;
    event.sequence = events_.size();
    event.interval = interval;
    event.step = step;
    event.kind = kind;
    event.payload = std::move(payload);
    event.prev_hash = events_.empty() ? kGenesisHash : events_.back().this_hash;
    if (!events_.empty()) {
        const auto& head = events_.back();
        if (interval < head.interval ||
            (interval == head.interval && step < head.step))
            throw OrderingViolationError();
    }
    event.this_hash = event_digest(event);
    events_.push_back(std::move(event));

    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot append to ledger file: " + path_);
        out << event_to_json(events_.back()).dump() << '\n';
    }
    return events_.back();
}

ChainCheck Ledger::verify() const {
    std::string prev = kGenesisHash;
    for (std::size_t i = 0; i < events_.size(); ++i) {
        const auto& event = events_[i];
        if (event.sequence != i || event.prev_hash != prev || event_digest(event) != event.this_hash)
            return {false, i};
        prev = event.this_hash;
    }
    return {true, 0};
}

Ledger Ledger::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ledger file: " + path);
    Ledger ledger;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ledger.events_.push_back(event_from_json(nlohmann::json::parse(line)));
    }
    return ledger;
}

ChainCheck Ledger::verify_file(const std::string& path) { return load(path).verify(); }

void Ledger::flush() {
    // Events are written synchronously on append; nothing buffered here.
}

nlohmann::json event_to_json(const LedgerEvent& event) {
    return nlohmann::json{{"seq", event.sequence},   {"interval", event.interval},
                          {"step", event.step},      {"kind", to_string(event.kind)},
                          {"payload", event.payload}, {"prev_hash", event.prev_hash},
                          {"hash", event.this_hash}};
}

LedgerEvent event_from_json(const nlohmann::json& j) {
    LedgerEvent event;
    event.sequence = j.at("seq").get<std::uint64_t>();
    event.interval = j.at("interval").get<std::uint64_t>();
    event.step = j.at("step").get<std::uint64_t>();
    event.kind = event_kind_from_string(j.at("kind").get<std::string>());
    event.payload = j.at("payload");
    event.prev_hash = j.at("prev_hash").get<std::string>();
    event.this_hash = j.at("hash").get<std::string>();
    return event;
}

}  // namespace decentpeer
