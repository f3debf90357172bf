#include "xva/chain.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "xva/credit.hpp"

namespace xva {

Truncation Truncation::explicit_n(int n) {
    if (n < 1) throw std::domain_error("Truncation: n must be >= 1");
    Truncation t;
    t.n = n;
    return t;
}

Truncation Truncation::accuracy(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("Truncation: epsilon must be in (0,1)");
    Truncation t;
    t.epsilon = epsilon;
    return t;
}

double ChainSpec::spread(int i) const {
    if (i < 1) throw std::domain_error("ChainSpec::spread: index starts at 1");
    return base_spread * std::pow(contagion_multiplier, i - 1);
}

double ChainSpec::hazard(int i) const {
    return hazard_from_spread(spread(i), recovery);
}

void ChainSpec::validate() const {
    if (base_spread < 0.0)
        throw std::domain_error("ChainSpec: base_spread must be non-negative");
    if (recovery < 0.0 || recovery >= 1.0)
        throw std::domain_error("ChainSpec: recovery must be in [0,1)");
    if (contagion_multiplier < 1.0)
        throw std::domain_error("ChainSpec: contagion_multiplier must be >= 1");
    if (!truncation.n && !truncation.epsilon)
        throw std::domain_error("ChainSpec: truncation unresolved");
}

RateMatrix build_rate_matrix(const ChainSpec& spec, int n) {
    if (n < 1) throw std::domain_error("build_rate_matrix: n must be >= 1");
    RateMatrix m;
    m.n = n;
    m.q = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        const double lambda = spec.hazard(i + 1);
        m.q(i, i) = -lambda;
        m.q(i, i + 1) = lambda;
    }
    return m;
}

namespace {

// Absorbed mass at maturity of a chain with `states` active states,
// i.e. the probability of at least `states` defaults in [0,T].
double absorbed_mass(double lambda1, double multiplier, double maturity, int states) {
    ChainSpec spec;
    spec.base_spread = lambda1;  // recovery 0: hazard == spread
    spec.recovery = 0.0;
    spec.contagion_multiplier = multiplier;
    const RateMatrix q = build_rate_matrix(spec, states);
    return occupancy_pdf(q, maturity).absorbed();
}

}  // namespace

TruncationResult truncation_level(double lambda1, double multiplier, double maturity,
                                  double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::domain_error("truncation_level: epsilon must be in (0,1)");
    if (!(maturity > 0.0))
        throw std::domain_error("truncation_level: maturity must be positive");
    if (lambda1 < 0.0)
        throw std::domain_error("truncation_level: lambda1 must be non-negative");
    if (multiplier < 1.0)
        throw std::domain_error("truncation_level: multiplier must be >= 1");

    if (lambda1 == 0.0) return {1, 1.0};

    constexpr int kMaxLevel = 200;
    for (int n = 1; n <= kMaxLevel; ++n) {
        // P(more than n defaults) = absorbed mass of an (n+1)-state chain
        const double missed = absorbed_mass(lambda1, multiplier, maturity, n + 1);
        if (missed <= epsilon) return {n, 1.0 - missed};
    }
    throw std::runtime_error("truncation_level: no level below epsilon within limit");
}

int resolve_truncation(const ChainSpec& spec, double maturity) {
    spec.validate();
    if (spec.truncation.n) return *spec.truncation.n;
    return truncation_level(spec.base_hazard(), spec.contagion_multiplier, maturity,
                            *spec.truncation.epsilon)
        .n;
}

OccupancyDistribution occupancy_pdf(const RateMatrix& q, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::domain_error("occupancy_pdf: t must be finite and non-negative");
    const int dim = q.n + 1;
    OccupancyDistribution dist;
    dist.t = t;
    dist.probs.assign(dim, 0.0);
    if (t == 0.0) {
        dist.probs[0] = 1.0;
        return dist;
    }
    const Eigen::MatrixXd p = (q.q * t).exp();
    for (int j = 0; j < dim; ++j) {
        double v = p(0, j);
        if (v < 0.0) v = 0.0;  // clamp roundoff
        dist.probs[j] = v;
    }
    return dist;
}

HazardWeights effective_hazard_weights(const ChainSpec& spec, int n, double t) {
    const RateMatrix q = build_rate_matrix(spec, n);
    const OccupancyDistribution dist = occupancy_pdf(q, t);
    HazardWeights w;
    w.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        w.weights[i] = dist.probs[i] * spec.spread(i + 1);
        w.total += w.weights[i];
    }
    return w;
}

}  // namespace xva
