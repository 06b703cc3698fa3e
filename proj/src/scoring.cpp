#include "decentpeer/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace decentpeer {

double similarity(const TagSet& a, const TagSet& b, SimilarityKind kind) {
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& tag : a) inter += b.count(tag);
    switch (kind) {
        case SimilarityKind::CosineBinary:
            return static_cast<double>(inter) /
                   (std::sqrt(static_cast<double>(a.size())) * std::sqrt(static_cast<double>(b.size())));
        case SimilarityKind::Jaccard: {
            const std::size_t uni = a.size() + b.size() - inter;
            return static_cast<double>(inter) / static_cast<double>(uni);
        }
    }
    return 0.0;
}

double competence(const TagSet& reviewer_tags, const TagSet& paper_tags, SimilarityKind kind) {
    return similarity(reviewer_tags, paper_tags, kind);
}

double weighted_mean_score(const PaperRecord& paper) {
    if (paper.reviews.empty()) throw NotReviewableError();
    double num = 0.0, den = 0.0;
    for (const auto& rev : paper.reviews) {
        const double w = rev.competence * rev.reviewer_reputation;
        num += w * rev.score;
        den += w;
    }
    if (den <= 0.0) throw DegenerateWeightsError();
    return num / den;
}

double weighted_score(const PaperRecord& paper, double author_reputation) {
    const double r = static_cast<double>(paper.reviews.size());
    return author_reputation * weighted_mean_score(paper) / r;
}

double mean_review_score(const PaperRecord& paper) {
    if (paper.reviews.empty()) throw NotReviewableError();
    double sum = 0.0;
    for (const auto& rev : paper.reviews) sum += rev.score;
    return sum / static_cast<double>(paper.reviews.size());
}

Triage decide(const PaperRecord& paper, const VenueConfig& venue) {
    const double mean = mean_review_score(paper);
    if (mean >= venue.accept_threshold) return Triage::Accepted;
    if (mean <= venue.reject_threshold) return Triage::Rejected;
    return Triage::Borderline;
}

std::vector<std::uint64_t> select_borderline(std::vector<BorderlineCandidate> candidates,
                                             std::size_t remaining_capacity) {
    std::sort(candidates.begin(), candidates.end(),
              [](const BorderlineCandidate& a, const BorderlineCandidate& b) {
                  if (a.author_reputation != b.author_reputation)
                      return a.author_reputation > b.author_reputation;
                  if (a.weighted_score != b.weighted_score)
                      return a.weighted_score > b.weighted_score;
                  return a.submission_order < b.submission_order;
              });
    if (candidates.size() > remaining_capacity) candidates.resize(remaining_capacity);
    std::vector<std::uint64_t> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back(c.paper_id);
    return out;
}

}  // namespace decentpeer
