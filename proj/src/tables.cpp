#include "xva/tables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <thread>

namespace xva {

namespace {

// Convention preset calibrated to the published tables.
constexpr double kRecovery = 0.4;
constexpr double kriskless = 0.02;
constexpr double kBankSpreadBps = 100.0;
constexpr double kTruncationEps = 1e-4;

const std::vector<std::string> kProfiles = {"decreasing", "flat", "increasing"};

struct GoldenTable {
    std::vector<double> client_bps;
    std::vector<double> hedge_bps;  // empty = CCP hedge
    std::vector<double> maturities;
    // reference[maturity][profile][client][hedge] (hedge dim = 1 for CCP)
    std::vector<std::vector<std::vector<std::vector<int>>>> reference;
};

// Published "Relative percentage decrease in MVA on CCP side".
GoldenTable mva_ccp_golden() {
    GoldenTable g;
    g.client_bps = {100, 250, 500};
    g.maturities = {1, 5, 10, 30};
    // [maturity][profile][client][1]
    const int ref[4][3][3] = {
        // 1Y:      dec            flat           inc
        {{-1, -1, -3}, {-1, -2, -4}, {-1, -3, -5}},
        {{-3, -6, -12}, {-4, -10, -18}, {-5, -13, -24}},
        {{-5, -12, -22}, {-8, -17, -31}, {-10, -23, -41}},
        {{-13, -28, -44}, {-18, -38, -57}, {-26, -51, -74}},
    };
    g.reference.resize(4);
    for (int t = 0; t < 4; ++t) {
        g.reference[t].resize(3);
        for (int p = 0; p < 3; ++p) {
            g.reference[t][p].resize(3);
            for (int c = 0; c < 3; ++c) g.reference[t][p][c] = {ref[t][p][c]};
        }
    }
    return g;
}

// Published "Relative percentage change in CVA on hedge-side",
// no-jump and 20%-jump variants.
GoldenTable cva_golden(bool jump) {
    GoldenTable g;
    g.client_bps = {50, 100, 250, 500};
    g.hedge_bps = {50, 100, 250};
    g.maturities = {5, 30};
    const int nojump[2][3][4][3] = {
        {// 5Y
         {{0, 1, 5}, {-1, 0, 4}, {-5, -4, 0}, {-11, -10, -6}},
         {{0, 2, 8}, {-2, 0, 6}, {-8, -6, 0}, {-16, -14, -9}},
         {{0, 3, 11}, {-3, 0, 8}, {-10, -8, 0}, {-22, -19, -12}}},
        {// 30Y
         {{0, 7, 29}, {-7, 0, 20}, {-22, -17, 0}, {-40, -36, -23}},
         {{0, 10, 45}, {-9, 0, 31}, {-31, -24, 0}, {-52, -47, -31}},
         {{0, 16, 76}, {-14, 0, 52}, {-43, -34, 0}, {-69, -65, -46}}},
    };
    const int jump20[2][3][4][3] = {
        {// 5Y
         {{0, 2, 7}, {-1, 1, 5}, {-5, -3, 1}, {-11, -9, -5}},
         {{0, 3, 11}, {-2, 1, 8}, {-7, -5, 2}, {-16, -14, -7}},
         {{1, 4, 15}, {-2, 1, 12}, {-10, -7, 3}, {-21, -18, -10}}},
        {// 30Y
         {{1, 10, 39}, {-5, 3, 29}, {-21, -15, 7}, {-40, -35, -19}},
         {{2, 15, 62}, {-8, 4, 46}, {-30, -21, 10}, {-52, -46, -26}},
         {{3, 23, 109}, {-11, 6, 79}, {-42, -30, 16}, {-69, -63, -39}}},
    };
    const auto& ref = jump ? jump20 : nojump;
    g.reference.resize(2);
    for (int t = 0; t < 2; ++t) {
        g.reference[t].resize(3);
        for (int p = 0; p < 3; ++p) {
            g.reference[t][p].resize(4);
            for (int c = 0; c < 4; ++c) {
                g.reference[t][p][c].assign(std::begin(ref[t][p][c]), std::end(ref[t][p][c]));
            }
        }
    }
    return g;
}

ExposureProfile make_profile(const std::string& name, double maturity) {
    if (name == "decreasing") return ExposureProfile::decreasing(1.0, maturity);
    if (name == "flat") return ExposureProfile::flat(1.0, maturity);
    if (name == "increasing") return ExposureProfile::increasing(1.0, maturity);
    throw ConfigError("unknown table profile '" + name + "'");
}

double contagion_multiplier_for(const std::string& id) {
    return id == "cva-jump20" ? 1.2 : 1.0;
}

int thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* cap = std::getenv("XVA_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < n) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(n);
}

// Parallel sweep over cells; results land at their own index, so the
// merge is deterministic.
template <class Work>
void parallel_for(std::size_t count, const Work& work) {
    const int threads = std::min<int>(thread_budget(), static_cast<int>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double TableResult::max_deviation_pp() const {
    double m = 0.0;
    for (const auto& c : cells) m = std::max(m, std::abs(c.deviation_pp));
    return m;
}

Scenario table_cell_scenario(const std::string& id, double client_bps, double hedge_bps,
                             const std::string& profile, double maturity, double quadrature_tol) {
    Scenario s;
    s.client = CreditCurve::from_spread(client_bps / 1e4, kRecovery);
    s.rates.riskless_rate = kriskless;
    s.rates.bank_spread = kBankSpreadBps / 1e4;
    s.maturity = maturity;
    s.lgd_client = 1.0 - kRecovery;
    s.quadrature_tol = quadrature_tol;
    if (id == "mva-ccp") {
        s.hedge = CcpHedge{};
        s.profiles.emplace(ProfileRole::ImPosted, make_profile(profile, maturity));
        s.requested = {Adjustment::Mva};
    } else if (id == "cva-nojump" || id == "cva-jump20") {
        ChainSpec ch;
        ch.base_spread = hedge_bps / 1e4;
        ch.recovery = kRecovery;
        ch.contagion_multiplier = contagion_multiplier_for(id);
        ch.truncation = Truncation::accuracy(kTruncationEps);
        s.hedge = ch;
        s.profiles.emplace(ProfileRole::Exposure, make_profile(profile, maturity));
        s.requested = {Adjustment::Cva};
    } else {
        throw ConfigError("unknown table id '" + id + "'");
    }
    return s;
}

TableResult reproduce_table(const std::string& id, double quadrature_tol) {
    GoldenTable golden;
    Adjustment target;
    if (id == "mva-ccp") {
        golden = mva_ccp_golden();
        target = Adjustment::Mva;
    } else if (id == "cva-nojump") {
        golden = cva_golden(false);
        target = Adjustment::Cva;
    } else if (id == "cva-jump20") {
        golden = cva_golden(true);
        target = Adjustment::Cva;
    } else {
        throw ConfigError("unknown table id '" + id + "'");
    }

    const bool ccp = golden.hedge_bps.empty();
    const std::vector<double> hedges = ccp ? std::vector<double>{0.0} : golden.hedge_bps;

    TableResult result;
    result.id = id;
    for (std::size_t t = 0; t < golden.maturities.size(); ++t)
        for (std::size_t p = 0; p < kProfiles.size(); ++p)
            for (std::size_t c = 0; c < golden.client_bps.size(); ++c)
                for (std::size_t h = 0; h < hedges.size(); ++h) {
                    TableCell cell;
                    cell.client_bps = golden.client_bps[c];
                    cell.hedge_bps = hedges[h];
                    cell.profile = kProfiles[p];
                    cell.maturity = golden.maturities[t];
                    cell.reference_pct = golden.reference[t][p][c][h];
                    result.cells.push_back(cell);
                }

    parallel_for(result.cells.size(), [&](std::size_t i) {
        TableCell& cell = result.cells[i];
        const Scenario s = table_cell_scenario(id, cell.client_bps, cell.hedge_bps, cell.profile,
                                               cell.maturity, quadrature_tol);
        const XvaBreakdown b = hedge_side_adjustments(s);
        const auto& r = b.at(target);
        if (!r.relative_change)
            throw ConfigError("table cell has an undefined relative change");
        cell.relative_change_pct = 100.0 * *r.relative_change;
        cell.rounded_pct = static_cast<int>(std::lround(cell.relative_change_pct));
        cell.deviation_pp = cell.relative_change_pct - cell.reference_pct;
    });
    return result;
}

void emit_csv(const TableResult& result, std::ostream& out) {
    out << "table,client_bps,hedge_bps,profile,maturity_years,"
           "relative_change_pct,rounded_pct,reference_pct,deviation_pp\n";
    std::ostringstream os;
    os.precision(12);
    for (const auto& c : result.cells) {
        os.str("");
        os << result.id << "," << c.client_bps << "," << c.hedge_bps << "," << c.profile << ","
           << c.maturity << "," << c.relative_change_pct << "," << c.rounded_pct << ","
           << c.reference_pct << "," << c.deviation_pp << "\n";
        out << os.str();
    }
}

void emit_json(const TableResult& result, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["table"] = result.id;
    doc["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : result.cells) {
        nlohmann::ordered_json cell;
        cell["client_bps"] = c.client_bps;
        cell["hedge_bps"] = c.hedge_bps;
        cell["profile"] = c.profile;
        cell["maturity_years"] = c.maturity;
        cell["relative_change_pct"] = c.relative_change_pct;
        cell["rounded_pct"] = c.rounded_pct;
        cell["reference_pct"] = c.reference_pct;
        cell["deviation_pp"] = c.deviation_pp;
        doc["cells"].push_back(cell);
    }
    out << doc.dump(2) << "\n";
}

void emit_svg(const TableResult& result, std::ostream& out) {
    // One line chart per profile: relative change (%) vs maturity,
    // one polyline per (client, hedge) series.
    constexpr int kW = 360, kH = 280, kPad = 40;
    const int total_w = kW * static_cast<int>(kProfiles.size());

    double min_y = 0.0, max_y = 0.0, max_t = 1.0;
    for (const auto& c : result.cells) {
        min_y = std::min(min_y, c.relative_change_pct);
        max_y = std::max(max_y, c.relative_change_pct);
        max_t = std::max(max_t, c.maturity);
    }
    if (max_y == min_y) max_y = min_y + 1.0;

    auto x_of = [&](int panel, double t) {
        return panel * kW + kPad + (t / max_t) * (kW - 2 * kPad);
    };
    auto y_of = [&](double v) {
        return kH - kPad - (v - min_y) / (max_y - min_y) * (kH - 2 * kPad);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\"" << kH
        << "\">\n";
    const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    for (std::size_t p = 0; p < kProfiles.size(); ++p) {
        const int panel = static_cast<int>(p);
        out << "<text x=\"" << panel * kW + kW / 2 << "\" y=\"16\" text-anchor=\"middle\">"
            << kProfiles[p] << "</text>\n";
        // axes
        out << "<line x1=\"" << panel * kW + kPad << "\" y1=\"" << kH - kPad << "\" x2=\""
            << panel * kW + kW - kPad << "\" y2=\"" << kH - kPad
            << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << panel * kW + kPad << "\" y1=\"" << kPad << "\" x2=\""
            << panel * kW + kPad << "\" y2=\"" << kH - kPad
            << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        if (min_y < 0.0 && max_y > 0.0)
            out << "<line x1=\"" << panel * kW + kPad << "\" y1=\"" << y_of(0.0) << "\" x2=\""
                << panel * kW + kW - kPad << "\" y2=\"" << y_of(0.0)
                << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";

        // collect series keys for this profile
        std::set<std::pair<double, double>> keys;
        for (const auto& c : result.cells)
            if (c.profile == kProfiles[p]) keys.insert({c.client_bps, c.hedge_bps});

        int color_idx = 0;
        for (const auto& key : keys) {
            std::map<double, double> points;
            for (const auto& c : result.cells)
                if (c.profile == kProfiles[p] && c.client_bps == key.first &&
                    c.hedge_bps == key.second)
                    points[c.maturity] = c.relative_change_pct;
            out << "<polyline fill=\"none\" stroke=\""
                << colors[color_idx % 8] << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [t, v] : points) out << x_of(panel, t) << "," << y_of(v) << " ";
            out << "\"/>\n";
            ++color_idx;
        }
    }
    out << "</svg>\n";
}

void emit(const TableResult& result, const std::string& format, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write output file: " + path);
    if (format == "csv")
        emit_csv(result, out);
    else if (format == "json")
        emit_json(result, out);
    else if (format == "svg")
        emit_svg(result, out);
    else
        throw std::runtime_error("unknown output format '" + format + "'");
    if (!out)
        throw std::runtime_error("write failed for output file: " + path);
}

}  // namespace xva
