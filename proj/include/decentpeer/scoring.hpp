#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "decentpeer/domain.hpp"

namespace decentpeer {

enum class SimilarityKind { CosineBinary, Jaccard };

// Set similarity over normalized tags, in [0,1]. Both-empty is defined as 0.
double similarity(const TagSet& a, const TagSet& b, SimilarityKind kind = SimilarityKind::CosineBinary);

// C^p_j: reviewer-to-paper competence, identical to tag similarity.
double competence(const TagSet& reviewer_tags, const TagSet& paper_tags,
                  SimilarityKind kind = SimilarityKind::CosineBinary);

class DegenerateWeightsError : public std::runtime_error {
public:
    DegenerateWeightsError() : std::runtime_error("all competence*reputation weights are zero") {}
};

class NotReviewableError : public std::runtime_error {
public:
    NotReviewableError() : std::runtime_error("paper has no reviews") {}
};

// W = R_author * sum(C*R*S) / (r * sum(C*R)). Throws DegenerateWeightsError
// when every weight vanishes; callers fall back to the plain mean.
double weighted_score(const PaperRecord& paper, double author_reputation);

// Convex-combination view of the same weights: sum(C*R*S)/sum(C*R), in
// [min S, max S]. Exposed for dashboards; equals r*W/R_author.
double weighted_mean_score(const PaperRecord& paper);

double mean_review_score(const PaperRecord& paper);

enum class Triage { Accepted, Rejected, Borderline };

// Threshold decision on the plain mean; Borderline papers are later ranked
// by select_borderline.
Triage decide(const PaperRecord& paper, const VenueConfig& venue);

struct BorderlineCandidate {
    std::uint64_t paper_id = 0;
    double author_reputation = 0.5;
    double weighted_score = 0.0;
    std::uint64_t submission_order = 0;
};

// Descending author reputation, ties by higher weighted score, then by
// submission order. Returns accepted paper ids, at most remaining_capacity.
std::vector<std::uint64_t> select_borderline(std::vector<BorderlineCandidate> candidates,
                                             std::size_t remaining_capacity);

}  // namespace decentpeer
