#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "decentpeer/domain.hpp"

namespace decentpeer {

// Scores are kept strictly inside (0,1); the clamp stops floating-point
// rounding from reaching an absorbing boundary.
inline constexpr double kScoreEpsilon = 1e-9;

inline double clamp_score(double r) {
    if (r < kScoreEpsilon) return kScoreEpsilon;
    if (r > 1.0 - kScoreEpsilon) return 1.0 - kScoreEpsilon;
    return r;
}

struct GainParams {
    double alpha = 0.05; // must be < 1/6 for the equilibrium regime

    bool in_theorem_regime() const { return alpha > 0.0 && alpha < 1.0 / 6.0; }
};

// Multiplicative penalty over one interval's Honest/Faulty records:
//   (1 + sum of honest counterparty scores) / (1 + sum of all counterparty scores).
// Returns exactly 1 when no Faulty record exists. PartiallyFaulty records are
// ignored here; compose partial_punishment separately.
double punishment_factor(std::span<const InteractionRecord> interactions);

// Exponent shift 2 - 2^(1-t): 1 at t=1, approaching 2 from below.
double g_shift(std::uint64_t active_intervals);

// Tent-shaped gain, peak alpha at x = 1/2, exponent 3 - g(t) in (1,2].
double gain_function(double x, std::uint64_t active_intervals, const GainParams& params);

// p + (1-p)(1-sigma): punishment fades as reviewer expertise sigma drops.
double expertise_adjusted_punishment(double p, double sigma);

// Partial punishment q + (1-q)*r with q = ((1-pi) + pi*p)/2.
double partial_punishment(double p, double pi, double r);

struct UpdateResult {
    ReputationState state;
    bool updated = false; // false when the user was inactive this interval
};

// One interval close: new score = clamp(R*P + f(R*P, t)), t incremented,
// interaction list cleared. Inactive users (no interactions, not flagged
// active) come back unchanged.
UpdateResult update_reputation(const ReputationState& state, const GainParams& params,
                               bool authored_paper = false, double oracle_pi = 1.0);

}  // namespace decentpeer
