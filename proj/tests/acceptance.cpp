// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "xva/mc_oracle.hpp"
#include "xva/tables.hpp"

using namespace xva;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double poisson_pmf(double mean, int k) {
    double p = std::exp(-mean);
    for (int i = 1; i <= k; ++i) p *= mean / i;
    return p;
}

double poisson_cdf(double mean, int k) {
    double c = 0.0;
    for (int i = 0; i <= k; ++i) c += poisson_pmf(mean, i);
    return c;
}

const TableCell* find_cell(const TableResult& t, double client, double hedge,
                           const std::string& profile, double maturity) {
    for (const auto& c : t.cells)
        if (c.client_bps == client && c.hedge_bps == hedge && c.profile == profile &&
            c.maturity == maturity)
            return &c;
    return nullptr;
}

// ---- criterion 1: truncation event-capture claims --------------------

void criterion_truncation() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r5 = truncation_level(0.05, 1.0, 30.0, 0.07);
    const auto r25 = truncation_level(0.025, 1.0, 30.0, 0.01);
    const double elapsed = seconds_since(t0);

    char buf[256];
    const bool ok = r5.n == 3 && r25.n == 3 &&
                    std::abs(r5.captured_mass - poisson_cdf(1.5, 3)) < 1e-6 &&
                    std::abs(r25.captured_mass - poisson_cdf(0.75, 3)) < 1e-6 &&
                    std::abs(r5.captured_mass - 0.9344) < 5e-5 &&
                    std::abs(r25.captured_mass - 0.9927) < 5e-5 && elapsed < 1.0;
    std::snprintf(buf, sizeof(buf),
                  "5%% spread captures %.5f (want 0.9344), 2.5%% captures %.5f (want 0.9927), "
                  "%.2fs",
                  r5.captured_mass, r25.captured_mass, elapsed);
    report(1, "truncation capture claims", ok, buf);
}

// ---- criterion 2: MVA-CCP table --------------------------------------

void criterion_mva_table(const TableResult& mva, double elapsed) {
    bool ok = mva.cells.size() == 36 && elapsed < 5.0;
    double worst = 0.0;
    for (const auto& c : mva.cells) {
        worst = std::max(worst, std::abs(c.deviation_pp));
        if (std::abs(c.deviation_pp) > 2.0) ok = false;
        if (c.maturity == 30.0 && c.profile == "flat" && std::abs(c.deviation_pp) > 1.0)
            ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "36 cells, max |deviation| %.3fpp (limit 2pp, flat 30Y 1pp), %.2fs",
                  worst, elapsed);
    report(2, "MVA-CCP table reproduction", ok, buf);
}

// ---- criterion 3: CVA no-jump table -----------------------------------

void criterion_cva_nojump(const TableResult& t, double elapsed) {
    bool ok = elapsed < 10.0;
    double worst_diag = 0.0;
    for (const auto& c : t.cells) {
        if (c.client_bps == c.hedge_bps) {
            worst_diag = std::max(worst_diag, std::abs(c.relative_change_pct));
            if (std::abs(c.relative_change_pct) > 0.5) ok = false;
        }
        // sign must match the published table; zero cells are covered
        // by the diagonal bound
        if (c.reference_pct > 0 && c.relative_change_pct < -0.5) ok = false;
        if (c.reference_pct < 0 && c.relative_change_pct > 0.5) ok = false;
    }
    const TableCell* up = find_cell(t, 50, 250, "flat", 30);
    const TableCell* down = find_cell(t, 500, 50, "flat", 30);
    if (!up || !down || std::abs(up->relative_change_pct - 45.0) > 3.0 ||
        std::abs(down->relative_change_pct + 52.0) > 3.0)
        ok = false;

    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "diagonals <= %.3fpp (limit 0.5), 50/250 flat 30Y %.2f%% (45+/-3), "
                  "500/50 %.2f%% (-52+/-3), signs ok, %.2fs",
                  worst_diag, up ? up->relative_change_pct : 0.0,
                  down ? down->relative_change_pct : 0.0, elapsed);
    report(3, "CVA no-jump table", ok, buf);
}

// ---- criterion 4: CVA 20%-jump table ----------------------------------

void criterion_cva_jump(const TableResult& jump, const TableResult& nojump) {
    bool ok = true;
    for (const auto& c : jump.cells) {
        const TableCell* base = find_cell(nojump, c.client_bps, c.hedge_bps, c.profile,
                                          c.maturity);
        if (!base || c.relative_change_pct < base->relative_change_pct - 1e-9) ok = false;
    }
    const TableCell* extreme = find_cell(jump, 50, 250, "increasing", 30);
    const double got = extreme ? extreme->relative_change_pct : 0.0;
    if (!extreme || std::abs(got - 109.0) > 8.0) ok = false;

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "every cell >= no-jump counterpart, extreme cell %.2f%% (109+/-8)", got);
    report(4, "CVA 20%-jump table", ok, buf);
}

// ---- criterion 5: occupancy oracles ------------------------------------

std::vector<double> ode_occupancy(const RateMatrix& q, double t, int steps) {
    const int dim = q.n + 1;
    std::vector<double> p(dim, 0.0), tmp(dim);
    p[0] = 1.0;
    const double h = t / steps;
    auto deriv = [&](const std::vector<double>& v) {
        std::vector<double> d(dim, 0.0);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) d[j] += v[i] * q.q(i, j);
        return d;
    };
    for (int s = 0; s < steps; ++s) {
        auto k1 = deriv(p);
        for (int j = 0; j < dim; ++j) tmp[j] = p[j] + 0.5 * h * k1[j];
        auto k2 = deriv(tmp);
        for (int j = 0; j < dim; ++j) tmp[j] = p[j] + 0.5 * h * k2[j];
        auto k3 = deriv(tmp);
        for (int j = 0; j < dim; ++j) tmp[j] = p[j] + h * k3[j];
        auto k4 = deriv(tmp);
        for (int j = 0; j < dim; ++j)
            p[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    return p;
}

void criterion_occupancy() {
    double worst_poisson = 0.0;
    for (double lambda : {0.01, 0.05, 0.16}) {
        for (int n : {2, 5, 10}) {
            ChainSpec spec;
            spec.base_spread = lambda;
            spec.recovery = 0.0;
            const auto q = build_rate_matrix(spec, n);
            for (double t : {0.5, 5.0, 30.0}) {
                if (lambda * t > 5.0) continue;
                const auto d = occupancy_pdf(q, t);
                for (int k = 0; k < n; ++k)
                    worst_poisson =
                        std::max(worst_poisson, std::abs(d.probs[k] - poisson_pmf(lambda * t, k)));
            }
        }
    }

    double worst_ode = 0.0;
    ChainSpec contagion;
    contagion.base_spread = 0.025;
    contagion.recovery = 0.4;
    contagion.contagion_multiplier = 1.2;
    const auto q = build_rate_matrix(contagion, 6);
    for (double t : {1.0, 10.0, 30.0}) {
        const auto d = occupancy_pdf(q, t);
        const auto ref = ode_occupancy(q, t, 30000);
        for (std::size_t i = 0; i < d.probs.size(); ++i)
            worst_ode = std::max(worst_ode, std::abs(d.probs[i] - ref[i]));
    }

    char buf[160];
    const bool ok = worst_poisson < 1e-10 && worst_ode < 1e-8;
    std::snprintf(buf, sizeof(buf), "Poisson oracle gap %.2e (limit 1e-10), ODE oracle gap %.2e (limit 1e-8)",
                  worst_poisson, worst_ode);
    report(5, "occupancy oracles", ok, buf);
}

// ---- criterion 6: Monte Carlo cross-check -------------------------------

void criterion_monte_carlo() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        std::string id;
        double client, hedge;
        std::string profile;
        double maturity;
        Adjustment target;
    };
    const std::vector<Case> cases = {
        {"mva-ccp", 250, 0, "flat", 30, Adjustment::Mva},
        {"mva-ccp", 500, 0, "decreasing", 10, Adjustment::Mva},
        {"mva-ccp", 100, 0, "increasing", 30, Adjustment::Mva},
        {"cva-nojump", 50, 250, "flat", 30, Adjustment::Cva},
        {"cva-nojump", 500, 50, "increasing", 30, Adjustment::Cva},
        {"cva-jump20", 50, 250, "increasing", 30, Adjustment::Cva},
    };
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const Scenario s = table_cell_scenario(c.id, c.client, c.hedge, c.profile, c.maturity);
        const XvaBreakdown engine = hedge_side_adjustments(s);
        SimConfig cfg;
        cfg.paths = 100000;
        cfg.seed = 20260823;
        const auto mc = simulate_xva(s, cfg);
        const auto& est = mc.at(c.target);
        const double gap = std::abs(est.mean - engine.at(c.target).behavioural);
        const double limit = 3.0 * est.standard_error;
        if (gap > std::max(limit, 1e-12)) {
            ok = false;
            char buf[128];
            std::snprintf(buf, sizeof(buf), " [%s %g/%g %s %gY: gap %.2e > 3se %.2e]",
                          c.id.c_str(), c.client, c.hedge, c.profile.c_str(), c.maturity, gap,
                          limit);
            detail += buf;
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 60.0) ok = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "6 scenarios within 3 SE at 1e5 paths%s, %.1fs (limit 60s)",
                  detail.c_str(), elapsed);
    report(6, "Monte Carlo cross-check", ok, buf);
}

// ---- criterion 7: property suite ----------------------------------------

void criterion_properties(const TableResult& mva_base) {
    bool ok = true;
    std::string detail;

    // riskless-client reduction: behavioural == naive to 1e-12 relative
    {
        Scenario s = table_cell_scenario("mva-ccp", 0.0, 0.0, "flat", 30.0);
        s.profiles.emplace(ProfileRole::VmGap, ExposureProfile::decreasing(1.0, 30.0));
        s.profiles.emplace(ProfileRole::Capital, ExposureProfile::increasing(1.0, 30.0));
        s.requested.clear();
        const auto b = ccp_adjustments(s);
        for (const auto& [a, r] : b.values) {
            if (a == Adjustment::Cva) continue;
            if (std::abs(r.behavioural - r.naive) > 1e-12 * std::abs(r.naive)) {
                ok = false;
                detail += " [lambda_C=0 reduction broken for " + to_string(a) + "]";
            }
        }
        if (b.at(Adjustment::Cva).behavioural != 0.0 || b.at(Adjustment::Cva).naive != 0.0) {
            ok = false;
            detail += " [CCP CVA not exactly 0]";
        }
    }

    // scale invariance of relative changes
    {
        Scenario s1 = table_cell_scenario("mva-ccp", 250.0, 0.0, "flat", 30.0);
        Scenario s2 = s1;
        s2.profiles.clear();
        s2.profiles.emplace(ProfileRole::ImPosted, ExposureProfile::flat(1e6, 30.0));
        const double a = *ccp_adjustments(s1).at(Adjustment::Mva).relative_change;
        const double b = *ccp_adjustments(s2).at(Adjustment::Mva).relative_change;
        if (std::abs(a - b) > 1e-10) {
            ok = false;
            detail += " [scale invariance broken]";
        }
    }

    // MVA monotonicity across the full sweep: more negative in client
    // hazard, in maturity, and decreasing -> flat -> increasing
    {
        const std::vector<double> clients = {100, 250, 500};
        const std::vector<double> mats = {1, 5, 10, 30};
        const std::vector<std::string> shapes = {"decreasing", "flat", "increasing"};
        auto value = [&](double c, double m, const std::string& p) {
            return find_cell(mva_base, c, 0, p, m)->relative_change_pct;
        };
        for (const auto& p : shapes)
            for (double m : mats)
                for (std::size_t i = 1; i < clients.size(); ++i)
                    if (value(clients[i], m, p) >= value(clients[i - 1], m, p)) ok = false;
        for (const auto& p : shapes)
            for (double c : clients)
                for (std::size_t i = 1; i < mats.size(); ++i)
                    if (value(c, mats[i], p) >= value(c, mats[i - 1], p)) ok = false;
        for (double c : clients)
            for (double m : mats)
                for (std::size_t i = 1; i < shapes.size(); ++i)
                    if (value(c, m, shapes[i]) >= value(c, m, shapes[i - 1])) ok = false;
        if (!ok && detail.empty()) detail += " [MVA monotonicity broken]";
    }

    // halving the quadrature tolerance moves no cell by more than 0.1pp
    {
        for (const std::string& id : {std::string("mva-ccp"), std::string("cva-nojump"),
                                      std::string("cva-jump20")}) {
            const TableResult coarse = reproduce_table(id, 1e-8);
            const TableResult fine = reproduce_table(id, 5e-9);
            for (std::size_t i = 0; i < coarse.cells.size(); ++i) {
                if (std::abs(coarse.cells[i].relative_change_pct -
                             fine.cells[i].relative_change_pct) > 0.1) {
                    ok = false;
                    detail += " [quadrature tolerance sensitivity in " + id + "]";
                    break;
                }
            }
        }
    }

    report(7, "property suite", ok,
           ok ? "reduction, scale invariance, monotonicity, CVA_CCP=0, quadrature stability"
              : detail);
}

}  // namespace

int main() {
    criterion_truncation();

    auto t0 = std::chrono::steady_clock::now();
    const TableResult mva = reproduce_table("mva-ccp");
    criterion_mva_table(mva, seconds_since(t0));

    t0 = std::chrono::steady_clock::now();
    const TableResult nojump = reproduce_table("cva-nojump");
    criterion_cva_nojump(nojump, seconds_since(t0));

    const TableResult jump = reproduce_table("cva-jump20");
    criterion_cva_jump(jump, nojump);

    criterion_occupancy();
    criterion_monte_carlo();
    criterion_properties(mva);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
