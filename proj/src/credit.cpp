#include "xva/credit.hpp"

#include <cmath>

namespace xva {

double hazard_from_spread(double spread, double recovery) {
    if (spread < 0.0)
        throw std::domain_error("hazard_from_spread: spread must be non-negative");
    if (recovery < 0.0 || recovery >= 1.0)
        throw std::domain_error("hazard_from_spread: recovery must be in [0,1)");
    return spread / (1.0 - recovery);
}

CreditCurve CreditCurve::from_spread(double spread, double recovery) {
    CreditCurve c;
    c.spread = spread;
    c.recovery = recovery;
    c.hazard = hazard_from_spread(spread, recovery);
    return c;
}

double CreditCurve::survival(double t) const {
    if (t < 0.0)
        throw std::domain_error("CreditCurve::survival: t must be non-negative");
    return std::exp(-hazard * t);
}

double CreditCurve::default_density(double t) const {
    if (t < 0.0)
        throw std::domain_error("CreditCurve::default_density: t must be non-negative");
    return hazard * std::exp(-hazard * t);
}

double discount_factor(double rate, double hazard, double t) {
    if (t < 0.0)
        throw std::domain_error("discount_factor: t must be non-negative");
    return std::exp(-(rate + hazard) * t);
}

void RateSpec::validate() const {
    if (!std::isfinite(riskless_rate) || !std::isfinite(bank_spread) ||
        !std::isfinite(collateral_spread) || !std::isfinite(im_spread_posted) ||
        !std::isfinite(im_rate_received) || !std::isfinite(capital_cost))
        throw std::domain_error("RateSpec: all rates and spreads must be finite");
    if (capital_funding_fraction < 0.0 || capital_funding_fraction > 1.0)
        throw std::domain_error("RateSpec: capital_funding_fraction must be in [0,1]");
}

}  // namespace xva
