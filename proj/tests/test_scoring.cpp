#include <doctest.h>

#include <algorithm>

#include "decentpeer/rng.hpp"
#include "decentpeer/scoring.hpp"

using namespace decentpeer;

TEST_CASE("similarity on identical, disjoint and overlapping sets") {
    const TagSet ab{"a", "b"}, cd{"c", "d"}, bc{"b", "c"};
    for (auto kind : {SimilarityKind::CosineBinary, SimilarityKind::Jaccard}) {
        CHECK(similarity(ab, ab, kind) == doctest::Approx(1.0));
        CHECK(similarity(ab, cd, kind) == doctest::Approx(0.0));
        CHECK(similarity({}, {}, kind) == 0.0);
        CHECK(similarity(ab, bc, kind) == doctest::Approx(similarity(bc, ab, kind)));
    }
    CHECK(similarity(ab, bc, SimilarityKind::CosineBinary) == doctest::Approx(0.5));
    CHECK(similarity(ab, bc, SimilarityKind::Jaccard) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("competence equals tag similarity") {
    const TagSet reviewer{"net", "sys"}, paper{"sys", "theory"};
    CHECK(competence(reviewer, paper) == doctest::Approx(0.5));
    CHECK(competence(reviewer, reviewer) == doctest::Approx(1.0));
    CHECK(competence(reviewer, {"bio"}) == 0.0);
}

namespace {

PaperRecord paper_with(const std::vector<Review>& reviews) {
    PaperRecord paper;
    paper.id = 1;
    paper.authors.members = {100};
    paper.reviews = reviews;
    return paper;
}

}  // namespace

TEST_CASE("weighted score: spec contract values") {
    // single reviewer, full competence: W = R_author * S
    auto single = paper_with({{2, 4.0, 1.0, 0.5}});
    CHECK(weighted_score(single, 1.0) == doctest::Approx(4.0));

    auto two = paper_with({{2, 4.0, 1.0, 0.5}, {3, 2.0, 0.5, 0.8}});
    CHECK(weighted_score(two, 0.9) == doctest::Approx(1.4).epsilon(1e-12));

    auto zeros = paper_with({{2, 0.0, 1.0, 0.5}});
    CHECK(weighted_score(zeros, 0.9) == doctest::Approx(0.0));
}

TEST_CASE("weighted score: degenerate weights raise") {
    auto paper = paper_with({{2, 4.0, 0.0, 0.5}, {3, 3.0, 0.0, 0.9}});
    CHECK_THROWS_AS(weighted_score(paper, 0.5), DegenerateWeightsError);
    CHECK_THROWS_AS(weighted_score(paper_with({}), 0.5), NotReviewableError);
}

TEST_CASE("weighted mean is a convex combination of scores") {
    RngStream rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Review> reviews;
        const std::size_t r = 1 + rng.next_below(6);
        for (std::size_t k = 0; k < r; ++k)
            reviews.push_back({k + 2, 1.0 + 4.0 * rng.next_double(),
                               0.05 + 0.95 * rng.next_double(),
                               0.05 + 0.95 * rng.next_double()});
        auto paper = paper_with(reviews);
        const double author_rep = 0.01 + 0.98 * rng.next_double();
        const double wm = weighted_mean_score(paper);
        double lo = 5.0, hi = 1.0;
        for (const auto& rev : reviews) {
            lo = std::min(lo, rev.score);
            hi = std::max(hi, rev.score);
        }
        CHECK(wm >= lo - 1e-9);
        CHECK(wm <= hi + 1e-9);
        // (W * r) / R_author recovers the convex combination
        const double w = weighted_score(paper, author_rep);
        CHECK(w * static_cast<double>(r) / author_rep == doctest::Approx(wm).epsilon(1e-9));

        // joint rescaling of all weights leaves W unchanged
        auto scaled = paper;
        for (auto& rev : scaled.reviews) rev.competence *= 0.35;
        CHECK(weighted_score(scaled, author_rep) == doctest::Approx(w).epsilon(1e-9));
    }
}

TEST_CASE("decide: thresholds and monotonicity") {
    VenueConfig venue;
    venue.accept_threshold = 4.0;
    venue.reject_threshold = 2.0;

    auto accepted = paper_with({{2, 5, 1, .5}, {3, 5, 1, .5}, {4, 4, 1, .5}});
    CHECK(decide(accepted, venue) == Triage::Accepted);
    auto rejected = paper_with({{2, 1, 1, .5}, {3, 2, 1, .5}, {4, 1, 1, .5}});
    CHECK(decide(rejected, venue) == Triage::Rejected);
    auto borderline = paper_with({{2, 3, 1, .5}, {3, 3, 1, .5}, {4, 4, 1, .5}});
    CHECK(decide(borderline, venue) == Triage::Borderline);
    CHECK_THROWS_AS(decide(paper_with({}), venue), NotReviewableError);

    // raising one score never moves toward rejection
    RngStream rng(41);
    auto rank = [](Triage t) { return t == Triage::Rejected ? 0 : t == Triage::Borderline ? 1 : 2; };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Review> reviews;
        const std::size_t r = 1 + rng.next_below(5);
        for (std::size_t k = 0; k < r; ++k)
            reviews.push_back({k + 2, 1.0 + 4.0 * rng.next_double(), 1.0, 0.5});
        auto paper = paper_with(reviews);
        const auto before = decide(paper, venue);
        const std::size_t bump = rng.next_below(r);
        paper.reviews[bump].score = std::min(5.0, paper.reviews[bump].score + 2.0 * rng.next_double());
        CHECK(rank(decide(paper, venue)) >= rank(before));
    }
}

TEST_CASE("select_borderline: ordering, ties, determinism") {
    CHECK(select_borderline({{1, 0.8, 3.0, 0}}, 0).empty());

    std::vector<BorderlineCandidate> two{{1, 0.8, 3.0, 0}, {2, 0.4, 4.5, 1}};
    CHECK(select_borderline(two, 1) == std::vector<std::uint64_t>{1});

    std::vector<BorderlineCandidate> three{{1, 0.6, 3.1, 0}, {2, 0.6, 3.4, 1}, {3, 0.3, 2.5, 2}};
    CHECK(select_borderline(three, 2) == std::vector<std::uint64_t>{2, 1});

    // permutation invariance of the full tie-break chain
    RngStream rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<BorderlineCandidate> cands;
        const std::size_t n = 1 + rng.next_below(8);
        for (std::size_t k = 0; k < n; ++k)
            cands.push_back({k + 1, 0.2 + 0.1 * rng.next_below(5),
                             2.0 + 0.5 * rng.next_below(3), k});
        const std::size_t cap = rng.next_below(n + 1);
        const auto base = select_borderline(cands, cap);
        for (int shuffle = 0; shuffle < 3; ++shuffle) {
            for (std::size_t i = cands.size(); i > 1; --i)
                std::swap(cands[i - 1], cands[rng.next_below(i)]);
            CHECK(select_borderline(cands, cap) == base);
        }
    }
}
