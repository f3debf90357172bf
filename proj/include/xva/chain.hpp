#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace xva {

/// Truncation of the hedge-counterparty sequence: either an explicit
/// number of tracked counterparties or a target missed-event mass.
struct Truncation {
    std::optional<int> n;
    std::optional<double> epsilon;

    static Truncation explicit_n(int n);
    static Truncation accuracy(double epsilon);
};

/// Parameters of the anonymous hedge-counterparty sequence. Spread of
/// the i-th counterparty is base_spread * multiplier^(i-1); hazards
/// follow via the zero-basis conversion with the given recovery.
struct ChainSpec {
    double base_spread = 0.0;          // per-annum decimal
    double recovery = 0.0;             // shared by all counterparties
    double contagion_multiplier = 1.0; // >= 1
    Truncation truncation = Truncation::accuracy(0.07);

    double spread(int i) const;  // i = 1..n
    double hazard(int i) const;
    double base_hazard() const { return hazard(1); }

    void validate() const;
};

/// Generator of the counterparty-sequence state transitions:
/// states 1..n are active counterparties, state n+1 absorbs.
struct RateMatrix {
    int n = 0;  // active states
    Eigen::MatrixXd q;  // (n+1) x (n+1)
};

struct OccupancyDistribution {
    double t = 0.0;
    std::vector<double> probs;  // p_1..p_n, then absorbed mass

    double absorbed() const { return probs.back(); }
    double active_mass() const { return 1.0 - probs.back(); }
};

struct TruncationResult {
    int n = 0;
    double captured_mass = 1.0;  // probability of at most n defaults in [0,T]
};

struct HazardWeights {
    std::vector<double> weights;  // p_i(t) * s_i over active states
    double total = 0.0;
};

RateMatrix build_rate_matrix(const ChainSpec& spec, int n);

/// Smallest n such that the probability of more than n defaults in
/// [0,T] is at most epsilon. Equal-rate case reduces to the Poisson
/// tail with mean lambda1*T.
TruncationResult truncation_level(double lambda1, double multiplier, double maturity,
                                  double epsilon);

/// Number of active states implied by the chain's truncation choice.
int resolve_truncation(const ChainSpec& spec, double maturity);

/// Row {1,0,...,0} of exp(Q t); tiny negative entries are clamped.
OccupancyDistribution occupancy_pdf(const RateMatrix& q, double t);

/// Occupancy-weighted spreads p_i(t) * s_i and their sum, the time-t
/// spread multiplier of the multi-hedge CVA integrand.
HazardWeights effective_hazard_weights(const ChainSpec& spec, int n, double t);

}  // namespace xva
