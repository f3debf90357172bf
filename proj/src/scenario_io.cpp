#include "xva/scenario_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace xva {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || (it.key() == k);
        if (!ok)
            throw ScenarioParseError("unknown key '" + it.key() + "' in " + context);
    }
}

double get_number(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key))
        throw ScenarioParseError("missing field '" + std::string(key) + "' in " + context);
    if (!obj[key].is_number())
        throw ScenarioParseError("field '" + std::string(key) + "' in " + context +
                                 " must be a number");
    return obj[key].get<double>();
}

double get_number_or(const json& obj, const char* key, double fallback,
                     const std::string& context) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ScenarioParseError("field '" + std::string(key) + "' in " + context +
                                 " must be a number");
    return obj[key].get<double>();
}

double get_bps(const json& obj, const char* key, double fallback_bps,
               const std::string& context) {
    const double bps = get_number_or(obj, key, fallback_bps, context);
    if (bps < 0.0)
        throw ScenarioParseError("field '" + std::string(key) + "' in " + context +
                                 " must be non-negative (basis points)");
    return bps / 1e4;
}

ExposureProfile parse_profile(const json& obj, double maturity, const std::string& context) {
    if (!obj.is_object())
        throw ScenarioParseError("profile " + context + " must be an object");
    check_keys(obj, {"shape", "scale", "points"}, context);
    if (obj.contains("points")) {
        if (obj.contains("shape"))
            throw ScenarioParseError(context + ": give either 'shape' or 'points', not both");
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : obj["points"]) {
            if (!p.is_array() || p.size() != 2)
                throw ScenarioParseError(context + ": each point must be [t, value]");
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        const double scale = get_number_or(obj, "scale", 1.0, context);
        if (scale != 1.0)
            for (auto& [t, v] : pts) v *= scale;
        return ExposureProfile::piecewise(std::move(pts));
    }
    if (!obj.contains("shape"))
        throw ScenarioParseError(context + ": profile needs 'shape' or 'points'");
    const std::string shape = obj["shape"].get<std::string>();
    const double scale = get_number_or(obj, "scale", 1.0, context);
    if (shape == "decreasing") return ExposureProfile::decreasing(scale, maturity);
    if (shape == "flat") return ExposureProfile::flat(scale, maturity);
    if (shape == "increasing") return ExposureProfile::increasing(scale, maturity);
    throw ScenarioParseError(context + ": unknown shape '" + shape +
                             "' (expected decreasing|flat|increasing)");
}

// Convention preset; recovery 0.4 / riskless 0.02 / bank spread 100bps
// reproduce the published result tables.
constexpr double kDefaultRecovery = 0.4;

}  // namespace

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) throw ScenarioParseError("scenario document must be a JSON object");
    check_keys(doc,
               {"client", "hedge", "rates", "profiles", "maturity_years", "lgd_client",
                "adjustments", "quadrature_tol"},
               "scenario");

    Scenario s;
    s.maturity = get_number(doc, "maturity_years", "scenario");
    if (!(s.maturity > 0.0))
        throw ScenarioParseError("maturity_years must be positive");

    if (!doc.contains("client"))
        throw ScenarioParseError("missing section 'client'");
    const json& client = doc["client"];
    check_keys(client, {"spread_bps", "recovery"}, "client");
    const double client_recovery = get_number_or(client, "recovery", kDefaultRecovery, "client");
    s.client = CreditCurve::from_spread(get_bps(client, "spread_bps", 0.0, "client"),
                                        client_recovery);
    s.lgd_client = get_number_or(doc, "lgd_client", 1.0 - client_recovery, "scenario");

    if (doc.contains("hedge")) {
        const json& hedge = doc["hedge"];
        check_keys(hedge, {"mode", "spread_bps", "recovery", "contagion_multiplier", "truncation"},
                   "hedge");
        const std::string mode =
            hedge.contains("mode") ? hedge["mode"].get<std::string>() : "ccp";
        if (mode == "ccp") {
            s.hedge = CcpHedge{};
        } else if (mode == "chain") {
            ChainSpec ch;
            ch.base_spread = get_bps(hedge, "spread_bps", 0.0, "hedge");
            ch.recovery = get_number_or(hedge, "recovery", kDefaultRecovery, "hedge");
            ch.contagion_multiplier =
                get_number_or(hedge, "contagion_multiplier", 1.0, "hedge");
            if (hedge.contains("truncation")) {
                const json& tr = hedge["truncation"];
                check_keys(tr, {"n", "epsilon"}, "hedge.truncation");
                if (tr.contains("n") == tr.contains("epsilon"))
                    throw ScenarioParseError(
                        "hedge.truncation: give exactly one of 'n' or 'epsilon'");
                if (tr.contains("n"))
                    ch.truncation = Truncation::explicit_n(tr["n"].get<int>());
                else
                    ch.truncation = Truncation::accuracy(tr["epsilon"].get<double>());
            }
            s.hedge = ch;
        } else {
            throw ScenarioParseError("hedge.mode must be 'ccp' or 'chain'");
        }
    }

    if (doc.contains("rates")) {
        const json& rates = doc["rates"];
        check_keys(rates,
                   {"riskless", "bank_spread_bps", "collateral_spread_bps", "im_spread_bps",
                    "im_rate_received_bps", "gamma_k", "phi"},
                   "rates");
        s.rates.riskless_rate = get_number_or(rates, "riskless", s.rates.riskless_rate, "rates");
        s.rates.bank_spread = get_bps(rates, "bank_spread_bps", 100.0, "rates");
        s.rates.collateral_spread = get_bps(rates, "collateral_spread_bps", 0.0, "rates");
        s.rates.im_spread_posted = get_bps(rates, "im_spread_bps", 0.0, "rates");
        s.rates.im_rate_received = get_bps(rates, "im_rate_received_bps", 0.0, "rates");
        s.rates.capital_cost = get_number_or(rates, "gamma_k", s.rates.capital_cost, "rates");
        s.rates.capital_funding_fraction =
            get_number_or(rates, "phi", s.rates.capital_funding_fraction, "rates");
    }

    if (!doc.contains("profiles"))
        throw ScenarioParseError("missing section 'profiles'");
    for (auto it = doc["profiles"].begin(); it != doc["profiles"].end(); ++it) {
        const auto role = profile_role_from_string(it.key());
        if (!role)
            throw ScenarioParseError("unknown profile role '" + it.key() + "'");
        s.profiles.emplace(*role, parse_profile(it.value(), s.maturity, "profiles." + it.key()));
    }

    if (doc.contains("adjustments")) {
        for (const auto& a : doc["adjustments"]) {
            const auto adj = adjustment_from_string(a.get<std::string>());
            if (!adj)
                throw ScenarioParseError("unknown adjustment '" + a.get<std::string>() + "'");
            s.requested.push_back(*adj);
        }
    }

    s.quadrature_tol = get_number_or(doc, "quadrature_tol", s.quadrature_tol, "scenario");
    if (!(s.quadrature_tol > 0.0))
        throw ScenarioParseError("quadrature_tol must be positive");

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioParseError("cannot open scenario file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(path + ": " + e.what());
    }
    return scenario_from_json(doc);
}

nlohmann::json scenario_to_json(const Scenario& s) {
    json doc;
    doc["maturity_years"] = s.maturity;
    doc["client"] = {{"spread_bps", s.client.spread * 1e4}, {"recovery", s.client.recovery}};
    doc["lgd_client"] = s.lgd_client;
    if (s.is_ccp()) {
        doc["hedge"] = {{"mode", "ccp"}};
    } else {
        const ChainSpec& ch = s.chain();
        json h = {{"mode", "chain"},
                  {"spread_bps", ch.base_spread * 1e4},
                  {"recovery", ch.recovery},
                  {"contagion_multiplier", ch.contagion_multiplier}};
        if (ch.truncation.n)
            h["truncation"] = {{"n", *ch.truncation.n}};
        else
            h["truncation"] = {{"epsilon", *ch.truncation.epsilon}};
        doc["hedge"] = h;
    }
    doc["rates"] = {{"riskless", s.rates.riskless_rate},
                    {"bank_spread_bps", s.rates.bank_spread * 1e4},
                    {"collateral_spread_bps", s.rates.collateral_spread * 1e4},
                    {"im_spread_bps", s.rates.im_spread_posted * 1e4},
                    {"im_rate_received_bps", s.rates.im_rate_received * 1e4},
                    {"gamma_k", s.rates.capital_cost},
                    {"phi", s.rates.capital_funding_fraction}};
    json profiles = json::object();
    for (const auto& [role, p] : s.profiles) {
        json entry;
        switch (p.shape()) {
            case ProfileShape::DecreasingTriangle:
                entry = {{"shape", "decreasing"}, {"scale", p.scale()}};
                break;
            case ProfileShape::Flat:
                entry = {{"shape", "flat"}, {"scale", p.scale()}};
                break;
            case ProfileShape::IncreasingTriangle:
                entry = {{"shape", "increasing"}, {"scale", p.scale()}};
                break;
            case ProfileShape::PiecewiseLinear: {
                json pts = json::array();
                for (const auto& [t, v] : p.points()) pts.push_back({t, v});
                entry = {{"points", pts}};
                break;
            }
        }
        profiles[to_string(role)] = entry;
    }
    doc["profiles"] = profiles;
    if (!s.requested.empty()) {
        json adj = json::array();
        for (Adjustment a : s.requested) adj.push_back(to_string(a));
        doc["adjustments"] = adj;
    }
    doc["quadrature_tol"] = s.quadrature_tol;
    return doc;
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ScenarioParseError("cannot write scenario file: " + path);
    out << scenario_to_json(s).dump(2) << "\n";
}

nlohmann::json breakdown_to_json(const XvaBreakdown& b) {
    json doc;
    doc["scenario_tag"] = b.scenario_tag;
    json values = json::object();
    for (const auto& [a, r] : b.values) {
        json entry = {{"behavioural", r.behavioural}, {"naive", r.naive}};
        if (r.relative_change)
            entry["relative_change"] = *r.relative_change;
        else
            entry["relative_change"] = nullptr;
        values[to_string(a)] = entry;
    }
    doc["adjustments"] = values;
    return doc;
}

std::string breakdown_to_csv(const XvaBreakdown& b) {
    std::ostringstream os;
    os.precision(17);
    os << "adjustment,behavioural,naive,relative_change\n";
    for (const auto& [a, r] : b.values) {
        os << to_string(a) << "," << r.behavioural << "," << r.naive << ",";
        if (r.relative_change) os << *r.relative_change;
        os << "\n";
    }
    return os.str();
}

}  // namespace xva
