#include "decentpeer/domain.hpp"

#include <algorithm>
#include <cctype>

namespace decentpeer {

static std::string normalize_tag(const std::string& raw) {
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
    std::string out = raw.substr(begin, end - begin);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

TagSet normalize_tags(const std::vector<std::string>& raw) {
    TagSet out;
    for (const auto& tag : raw) {
        std::string norm = normalize_tag(tag);
        if (!norm.empty()) out.insert(std::move(norm));
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Honest: return "honest";
        case Verdict::Faulty: return "faulty";
        case Verdict::PartiallyFaulty: return "partially_faulty";
    }
    return "?";
}

std::string to_string(Decision d) {
    switch (d) {
        case Decision::Pending: return "pending";
        case Decision::Accepted: return "accepted";
        case Decision::Rejected: return "rejected";
        case Decision::BorderlineAccepted: return "borderline_accepted";
        case Decision::BorderlineRejected: return "borderline_rejected";
    }
    return "?";
}

std::string to_string(PaperViolation v) {
    switch (v) {
        case PaperViolation::ScoreOutOfRange: return "ScoreOutOfRange";
        case PaperViolation::CompetenceOutOfRange: return "CompetenceOutOfRange";
        case PaperViolation::ReviewerIsAuthor: return "ReviewerIsAuthor";
        case PaperViolation::EmptyAuthors: return "EmptyAuthors";
    }
    return "?";
}

std::vector<PaperViolation> validate_paper(const PaperRecord& paper) {
    std::vector<PaperViolation> out;
    if (paper.authors.members.empty()) out.push_back(PaperViolation::EmptyAuthors);
    bool score_bad = false, competence_bad = false, coi = false;
    for (const auto& rev : paper.reviews) {
        if (rev.score < 1.0 || rev.score > 5.0) score_bad = true;
        if (rev.competence < 0.0 || rev.competence > 1.0) competence_bad = true;
        if (std::find(paper.authors.members.begin(), paper.authors.members.end(),
                      rev.reviewer) != paper.authors.members.end())
            coi = true;
    }
    if (score_bad) out.push_back(PaperViolation::ScoreOutOfRange);
    if (competence_bad) out.push_back(PaperViolation::CompetenceOutOfRange);
    if (coi) out.push_back(PaperViolation::ReviewerIsAuthor);
    return out;
}

double unified_reputation(const UnifiedParty& party, const UserTable& users) {
    if (party.members.empty()) throw std::invalid_argument("unified_reputation: empty party");
    double sum = 0.0;
    for (UserId id : party.members) {
        auto it = users.find(id);
        if (it == users.end()) throw UnknownUserError(id);
        sum += it->second.reputation.score;
    }
    return sum / static_cast<double>(party.members.size());
}

}  // namespace decentpeer
