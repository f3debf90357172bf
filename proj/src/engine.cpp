#include "xva/engine.hpp"

#include <cmath>
#include <sstream>

namespace xva {

std::string to_string(Adjustment a) {
    switch (a) {
        case Adjustment::Cva: return "cva";
        case Adjustment::Fva: return "fva";
        case Adjustment::Colva: return "colva";
        case Adjustment::Mva: return "mva";
        case Adjustment::Kva: return "kva";
    }
    return "?";
}

std::optional<Adjustment> adjustment_from_string(const std::string& name) {
    for (Adjustment a : kAllAdjustments)
        if (to_string(a) == name) return a;
    return std::nullopt;
}

std::string to_string(ProfileRole r) {
    switch (r) {
        case ProfileRole::Exposure: return "exposure";
        case ProfileRole::VmGap: return "vm_gap";
        case ProfileRole::VmCollateral: return "vm_collateral";
        case ProfileRole::ImPosted: return "im_posted";
        case ProfileRole::ImReceived: return "im_received";
        case ProfileRole::Capital: return "capital";
    }
    return "?";
}

std::optional<ProfileRole> profile_role_from_string(const std::string& name) {
    for (ProfileRole r : {ProfileRole::Exposure, ProfileRole::VmGap, ProfileRole::VmCollateral,
                          ProfileRole::ImPosted, ProfileRole::ImReceived, ProfileRole::Capital})
        if (to_string(r) == name) return r;
    return std::nullopt;
}

const ChainSpec& Scenario::chain() const {
    if (is_ccp()) throw ConfigError("Scenario: hedge is a CCP, no chain spec");
    return std::get<ChainSpec>(hedge);
}

void Scenario::validate() const {
    if (!(maturity > 0.0)) throw ConfigError("Scenario: maturity must be positive");
    if (lgd_client < 0.0 || lgd_client > 1.0)
        throw ConfigError("Scenario: lgd_client must be in [0,1]");
    rates.validate();
    if (!is_ccp()) chain().validate();
    for (const auto& [role, profile] : profiles) {
        if (profile.maturity() < maturity)
            throw ConfigError("Scenario: profile '" + to_string(role) +
                              "' matures before the scenario maturity");
    }
}

std::string Scenario::tag() const {
    std::ostringstream os;
    os.precision(17);
    os << "c=" << client.spread << "/" << client.recovery << ";T=" << maturity
       << ";r=" << rates.riskless_rate << ";sB=" << rates.bank_spread;
    if (is_ccp()) {
        os << ";h=ccp";
    } else {
        const ChainSpec& ch = chain();
        os << ";h=" << ch.base_spread << "/" << ch.recovery << "/" << ch.contagion_multiplier;
    }
    return os.str();
}

const AdjustmentResult& XvaBreakdown::at(Adjustment a) const {
    auto it = values.find(a);
    if (it == values.end())
        throw ConfigError("XvaBreakdown: adjustment '" + to_string(a) + "' was not computed");
    return it->second;
}

std::optional<double> relative_change(double behavioural, double naive) {
    if (std::abs(naive) < 1e-15) return std::nullopt;
    return behavioural / naive - 1.0;
}

double behavioural_discount(const Scenario& s, double t) {
    return std::exp(-(s.rates.bank_rate() + s.client.hazard) * t);
}

double naive_discount(const Scenario& s, double t) {
    return std::exp(-s.rates.bank_rate() * t);
}

namespace {

const ExposureProfile* find_profile(const Scenario& s, ProfileRole role) {
    auto it = s.profiles.find(role);
    return it == s.profiles.end() ? nullptr : &it->second;
}

bool is_requested(const Scenario& s, Adjustment a) {
    for (Adjustment r : s.requested)
        if (r == a) return true;
    return false;
}

// Roles an adjustment needs; ColVA accepts either of its two legs.
std::vector<ProfileRole> roles_for(Adjustment a) {
    switch (a) {
        case Adjustment::Cva: return {ProfileRole::Exposure};
        case Adjustment::Fva: return {ProfileRole::VmGap};
        case Adjustment::Colva: return {ProfileRole::VmCollateral, ProfileRole::ImReceived};
        case Adjustment::Mva: return {ProfileRole::ImPosted};
        case Adjustment::Kva: return {ProfileRole::Capital};
    }
    return {};
}

bool roles_available(const Scenario& s, Adjustment a) {
    const auto roles = roles_for(a);
    if (a == Adjustment::Colva) {
        for (ProfileRole r : roles)
            if (find_profile(s, r)) return true;
        return false;
    }
    for (ProfileRole r : roles)
        if (!find_profile(s, r)) return false;
    return true;
}

// Adjustments to compute: the explicit request list, or everything
// whose profiles are present. A requested adjustment with missing
// profiles is a configuration error.
std::vector<Adjustment> plan(const Scenario& s, bool cva_needs_profile) {
    std::vector<Adjustment> out;
    for (Adjustment a : kAllAdjustments) {
        const bool available =
            (a == Adjustment::Cva && !cva_needs_profile) || roles_available(s, a);
        if (!s.requested.empty()) {
            if (!is_requested(s, a)) continue;
            if (!available)
                throw ConfigError("missing profile for requested adjustment '" + to_string(a) +
                                  "'");
            out.push_back(a);
        } else if (available) {
            out.push_back(a);
        }
    }
    return out;
}

double value_or_zero(const ExposureProfile* p, double t) { return p ? p->value(t) : 0.0; }

AdjustmentResult make_result(double behavioural, double naive) {
    AdjustmentResult r;
    r.behavioural = behavioural;
    r.naive = naive;
    r.relative_change = relative_change(behavioural, naive);
    return r;
}

using Kernel = std::function<double(double)>;

// -Integral of spread_weight(t) * discount(t) * quantity(t) over [0,T].
double adjustment_integral(const Scenario& s, const Kernel& integrand) {
    return -integrate(integrand, s.maturity, s.quadrature_tol);
}

}  // namespace

XvaBreakdown ccp_adjustments(const Scenario& s) {
    s.validate();
    if (!s.is_ccp()) throw ConfigError("ccp_adjustments: scenario hedge is not a CCP");

    const RateSpec& rs = s.rates;
    const double r_b = rs.bank_rate();
    XvaBreakdown out;
    out.scenario_tag = s.tag();

    for (Adjustment a : plan(s, /*cva_needs_profile=*/false)) {
        switch (a) {
            case Adjustment::Cva:
                // hedge counterparty is default-free
                out.values[a] = make_result(0.0, 0.0);
                break;
            case Adjustment::Fva: {
                const ExposureProfile* gap = find_profile(s, ProfileRole::VmGap);
                auto kern = [&](double t, double extra_hazard) {
                    return rs.bank_spread * std::exp(-(r_b + extra_hazard) * t) *
                           value_or_zero(gap, t);
                };
                out.values[a] = make_result(
                    adjustment_integral(s, [&](double t) { return kern(t, s.client.hazard); }),
                    adjustment_integral(s, [&](double t) { return kern(t, 0.0); }));
                break;
            }
            case Adjustment::Colva: {
                const ExposureProfile* vm = find_profile(s, ProfileRole::VmCollateral);
                const ExposureProfile* imr = find_profile(s, ProfileRole::ImReceived);
                auto kern = [&](double t, double extra_hazard) {
                    return std::exp(-(r_b + extra_hazard) * t) *
                           (rs.collateral_spread * value_or_zero(vm, t) +
                            rs.im_rate_received * value_or_zero(imr, t));
                };
                out.values[a] = make_result(
                    adjustment_integral(s, [&](double t) { return kern(t, s.client.hazard); }),
                    adjustment_integral(s, [&](double t) { return kern(t, 0.0); }));
                break;
            }
            case Adjustment::Mva: {
                const ExposureProfile* im = find_profile(s, ProfileRole::ImPosted);
                auto kern = [&](double t, double extra_hazard) {
                    return (rs.bank_spread - rs.im_spread_posted) *
                           std::exp(-(r_b + extra_hazard) * t) * value_or_zero(im, t);
                };
                out.values[a] = make_result(
                    adjustment_integral(s, [&](double t) { return kern(t, s.client.hazard); }),
                    adjustment_integral(s, [&](double t) { return kern(t, 0.0); }));
                break;
            }
            case Adjustment::Kva: {
                const ExposureProfile* cap = find_profile(s, ProfileRole::Capital);
                auto kern = [&](double t, double extra_hazard) {
                    return (rs.capital_cost - rs.capital_funding_fraction * r_b) *
                           std::exp(-(r_b + extra_hazard) * t) * value_or_zero(cap, t);
                };
                out.values[a] = make_result(
                    adjustment_integral(s, [&](double t) { return kern(t, s.client.hazard); }),
                    adjustment_integral(s, [&](double t) { return kern(t, 0.0); }));
                break;
            }
        }
    }
    return out;
}

XvaBreakdown client_side_adjustments(const Scenario& s) {
    s.validate();
    const RateSpec& rs = s.rates;
    const double r_b = rs.bank_rate();
    const double lambda_c = s.client.hazard;
    XvaBreakdown out;
    out.scenario_tag = s.tag();

    // The client side carries no behavioural effect: these increments
    // are already standard per-counterparty adjustments, so naive and
    // behavioural coincide.
    auto disc = [&](double t) { return std::exp(-(r_b + lambda_c) * t); };

    for (Adjustment a : plan(s, /*cva_needs_profile=*/true)) {
        double v = 0.0;
        switch (a) {
            case Adjustment::Cva: {
                const ExposureProfile* exp_ = find_profile(s, ProfileRole::Exposure);
                v = adjustment_integral(s, [&](double t) {
                    return s.lgd_client * lambda_c * disc(t) * value_or_zero(exp_, t);
                });
                break;
            }
            case Adjustment::Fva: {
                const ExposureProfile* gap = find_profile(s, ProfileRole::VmGap);
                v = adjustment_integral(
                    s, [&](double t) { return rs.bank_spread * disc(t) * value_or_zero(gap, t); });
                break;
            }
            case Adjustment::Colva: {
                const ExposureProfile* vm = find_profile(s, ProfileRole::VmCollateral);
                const ExposureProfile* imr = find_profile(s, ProfileRole::ImReceived);
                v = adjustment_integral(s, [&](double t) {
                    return disc(t) * (rs.collateral_spread * value_or_zero(vm, t) +
                                      rs.im_rate_received * value_or_zero(imr, t));
                });
                break;
            }
            case Adjustment::Mva: {
                const ExposureProfile* im = find_profile(s, ProfileRole::ImPosted);
                v = adjustment_integral(s, [&](double t) {
                    return (rs.bank_spread - rs.im_spread_posted) * disc(t) *
                           value_or_zero(im, t);
                });
                break;
            }
            case Adjustment::Kva: {
                // KVA "to client" discounting treated as r_B + lambda_C
                // (the r_F in the source block is taken as bank funding).
                const ExposureProfile* cap = find_profile(s, ProfileRole::Capital);
                v = adjustment_integral(s, [&](double t) {
                    return (rs.capital_cost - rs.capital_funding_fraction * r_b) * disc(t) *
                           value_or_zero(cap, t);
                });
                break;
            }
        }
        out.values[a] = make_result(v, v);
    }
    return out;
}

XvaBreakdown to_client_total(const XvaBreakdown& ccp_side, const XvaBreakdown& client_side) {
    if (ccp_side.scenario_tag != client_side.scenario_tag)
        throw ConfigError("to_client_total: breakdowns come from different scenarios");
    XvaBreakdown out;
    out.scenario_tag = ccp_side.scenario_tag;
    for (Adjustment a : kAllAdjustments) {
        const bool in_ccp = ccp_side.has(a);
        const bool in_client = client_side.has(a);
        if (!in_ccp && !in_client) continue;
        const double beh = (in_ccp ? ccp_side.at(a).behavioural : 0.0) +
                           (in_client ? client_side.at(a).behavioural : 0.0);
        const double nai =
            (in_ccp ? ccp_side.at(a).naive : 0.0) + (in_client ? client_side.at(a).naive : 0.0);
        out.values[a] = make_result(beh, nai);
    }
    return out;
}

XvaBreakdown multi_hedge_adjustments(const Scenario& s) {
    s.validate();
    if (s.is_ccp())
        throw ConfigError("multi_hedge_adjustments: scenario hedge is a CCP, not a chain");
    const ChainSpec& ch = s.chain();
    const int n = resolve_truncation(ch, s.maturity);
    if (n < 1) throw ConfigError("multi_hedge_adjustments: truncation resolved to zero states");

    const RateSpec& rs = s.rates;
    const double r_b = rs.bank_rate();
    const double lambda_c = s.client.hazard;
    const double lambda_1 = ch.base_hazard();
    const double s_1 = ch.base_spread;
    const RateMatrix q = build_rate_matrix(ch, n);

    XvaBreakdown out;
    out.scenario_tag = s.tag();

    // occupancy-weighted spread and surviving-chain mass at t
    auto weighted_spread = [&](double t) {
        const OccupancyDistribution d = occupancy_pdf(q, t);
        double w = 0.0;
        for (int i = 0; i < n; ++i) w += d.probs[i] * ch.spread(i + 1);
        return w;
    };
    auto active_mass = [&](double t) { return occupancy_pdf(q, t).active_mass(); };
    auto disc_beh = [&](double t) { return std::exp(-(r_b + lambda_c) * t); };
    auto disc_nai = [&](double t) { return std::exp(-r_b * t); };

    for (Adjustment a : plan(s, /*cva_needs_profile=*/true)) {
        switch (a) {
            case Adjustment::Cva: {
                const ExposureProfile* exp_ = find_profile(s, ProfileRole::Exposure);
                const double beh = adjustment_integral(s, [&](double t) {
                    return weighted_spread(t) * disc_beh(t) * value_or_zero(exp_, t);
                });
                // naive: first counterparty in isolation, own-survival discounting
                const double nai = adjustment_integral(s, [&](double t) {
                    return s_1 * std::exp(-(r_b + lambda_1) * t) * value_or_zero(exp_, t);
                });
                out.values[a] = make_result(beh, nai);
                break;
            }
            case Adjustment::Fva: {
                const ExposureProfile* gap = find_profile(s, ProfileRole::VmGap);
                const double beh = adjustment_integral(s, [&](double t) {
                    return rs.bank_spread * disc_beh(t) * active_mass(t) * value_or_zero(gap, t);
                });
                const double nai = adjustment_integral(s, [&](double t) {
                    return rs.bank_spread * disc_nai(t) * value_or_zero(gap, t);
                });
                out.values[a] = make_result(beh, nai);
                break;
            }
            case Adjustment::Colva: {
                const ExposureProfile* vm = find_profile(s, ProfileRole::VmCollateral);
                const ExposureProfile* imr = find_profile(s, ProfileRole::ImReceived);
                auto legs = [&](double t) {
                    return rs.collateral_spread * value_or_zero(vm, t) +
                           rs.im_rate_received * value_or_zero(imr, t);
                };
                const double beh = adjustment_integral(
                    s, [&](double t) { return disc_beh(t) * active_mass(t) * legs(t); });
                const double nai =
                    adjustment_integral(s, [&](double t) { return disc_nai(t) * legs(t); });
                out.values[a] = make_result(beh, nai);
                break;
            }
            case Adjustment::Mva: {
                const ExposureProfile* im = find_profile(s, ProfileRole::ImPosted);
                const double mult = rs.bank_spread - rs.im_spread_posted;
                const double beh = adjustment_integral(s, [&](double t) {
                    return mult * disc_beh(t) * active_mass(t) * value_or_zero(im, t);
                });
                const double nai = adjustment_integral(
                    s, [&](double t) { return mult * disc_nai(t) * value_or_zero(im, t); });
                out.values[a] = make_result(beh, nai);
                break;
            }
            case Adjustment::Kva: {
                const ExposureProfile* cap = find_profile(s, ProfileRole::Capital);
                const double mult = rs.capital_cost - rs.capital_funding_fraction * r_b;
                const double beh = adjustment_integral(s, [&](double t) {
                    return mult * disc_beh(t) * active_mass(t) * value_or_zero(cap, t);
                });
                const double nai = adjustment_integral(
                    s, [&](double t) { return mult * disc_nai(t) * value_or_zero(cap, t); });
                out.values[a] = make_result(beh, nai);
                break;
            }
        }
    }
    return out;
}

XvaBreakdown hedge_side_adjustments(const Scenario& s) {
    return s.is_ccp() ? ccp_adjustments(s) : multi_hedge_adjustments(s);
}

}  // namespace xva
