#pragma once

#include <stdexcept>

namespace xva {

/// Converts a flat CDS spread to a hazard rate under the zero
/// bond-cds / bond-repo basis assumption: lambda = s / (1 - R).
double hazard_from_spread(double spread, double recovery);

/// Flat credit curve defined by a single CDS spread and recovery.
struct CreditCurve {
    double spread = 0.0;    // per-annum decimal
    double recovery = 0.0;  // fraction in [0,1)
    double hazard = 0.0;    // per-annum decimal, derived

    static CreditCurve from_spread(double spread, double recovery);

    double survival(double t) const;
    double default_density(double t) const;
    double lgd() const { return 1.0 - recovery; }
};

/// exp(-(rate + hazard) * t). Throws std::domain_error for t < 0.
double discount_factor(double rate, double hazard, double t);

/// Deterministic funding / collateral / capital rate inputs.
/// Bank funding rate is r + s_B (zero basis).
struct RateSpec {
    double riskless_rate = 0.02;
    double bank_spread = 0.01;
    double collateral_spread = 0.0;       // s_X
    double im_spread_posted = 0.0;        // spread earned on IM posted by the bank
    double im_rate_received = 0.0;        // rate paid on IM received by the bank
    double capital_cost = 0.10;           // gamma_K
    double capital_funding_fraction = 0.0;  // phi in [0,1]

    double bank_rate() const { return riskless_rate + bank_spread; }

    void validate() const;
};

}  // namespace xva
