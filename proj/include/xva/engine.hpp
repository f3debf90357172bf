#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xva/chain.hpp"
#include "xva/credit.hpp"
#include "xva/profiles.hpp"
#include "xva/quadrature.hpp"

namespace xva {

enum class Adjustment { Cva, Fva, Colva, Mva, Kva };

inline constexpr Adjustment kAllAdjustments[] = {Adjustment::Cva, Adjustment::Fva,
                                                 Adjustment::Colva, Adjustment::Mva,
                                                 Adjustment::Kva};

std::string to_string(Adjustment a);
std::optional<Adjustment> adjustment_from_string(const std::string& name);

/// Profile roles entering the adjustment integrands:
///   Exposure     (V - X - I)^+  -> CVA loss leg
///   VmGap        V - X          -> FVA funding leg
///   VmCollateral X              -> ColVA
///   ImPosted     I posted by the bank -> MVA
///   ImReceived   I received by the bank -> ColVA received-IM leg
///   Capital      K              -> KVA
enum class ProfileRole { Exposure, VmGap, VmCollateral, ImPosted, ImReceived, Capital };

std::string to_string(ProfileRole r);
std::optional<ProfileRole> profile_role_from_string(const std::string& name);

struct CcpHedge {};  // default-free hedge counterparty

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One full pricing case.
struct Scenario {
    CreditCurve client;
    std::variant<CcpHedge, ChainSpec> hedge = CcpHedge{};
    RateSpec rates;
    std::map<ProfileRole, ExposureProfile> profiles;
    double maturity = 0.0;
    double lgd_client = 1.0;
    double quadrature_tol = 1e-8;
    // empty = every adjustment whose profiles are present
    std::vector<Adjustment> requested;

    bool is_ccp() const { return std::holds_alternative<CcpHedge>(hedge); }
    const ChainSpec& chain() const;
    void validate() const;
    std::string tag() const;
};

struct AdjustmentResult {
    double behavioural = 0.0;
    double naive = 0.0;
    std::optional<double> relative_change;  // empty when naive ~ 0
};

struct XvaBreakdown {
    std::map<Adjustment, AdjustmentResult> values;
    std::string scenario_tag;

    const AdjustmentResult& at(Adjustment a) const;
    bool has(Adjustment a) const { return values.count(a) > 0; }
};

/// behavioural/naive - 1; empty when |naive| < 1e-15.
std::optional<double> relative_change(double behavioural, double naive);

/// Discount kernel applied to every behavioural hedge-side integrand:
/// exp(-(r_B + lambda_C) t). Exposed for kernel-inspection tests.
double behavioural_discount(const Scenario& s, double t);
double naive_discount(const Scenario& s, double t);

/// Hedge side against a riskless CCP. CVA is identically zero.
XvaBreakdown ccp_adjustments(const Scenario& s);

/// The "to client" increments charged on top of the hedge side.
XvaBreakdown client_side_adjustments(const Scenario& s);

/// Component-wise sum; both breakdowns must come from the same scenario.
XvaBreakdown to_client_total(const XvaBreakdown& ccp_side, const XvaBreakdown& client_side);

/// Hedge side against a defaultable, replaced-on-default counterparty
/// sequence; occupancy-weighted spreads drive the CVA loss leg.
XvaBreakdown multi_hedge_adjustments(const Scenario& s);

/// Dispatch on the scenario's hedge type.
XvaBreakdown hedge_side_adjustments(const Scenario& s);

}  // namespace xva
