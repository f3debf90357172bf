#include "xva/mc_oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace xva {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-path generator independent of batching order.
std::mt19937_64 path_rng(std::uint64_t seed, std::size_t path) {
    return std::mt19937_64(splitmix64(seed ^ (0x51ED2701A3F45B1DULL * (path + 1))));
}

double sample_exponential(std::mt19937_64& rng, double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double u = u01(rng);
    return -std::log1p(-u) / rate;
}

struct TimeGrid {
    std::vector<double> times;
    double step;
};

TimeGrid make_grid(double maturity, double step) {
    const int m = std::max(1, static_cast<int>(std::ceil(maturity / step - 1e-12)));
    TimeGrid g;
    g.step = maturity / m;
    g.times.resize(m + 1);
    for (int i = 0; i <= m; ++i) g.times[i] = i * g.step;
    return g;
}

// Cumulative hedge default times, capped at n defaults.
void sample_chain_defaults(std::mt19937_64& rng, const ChainSpec& spec, int n,
                           std::vector<double>& out) {
    out.clear();
    double t = 0.0;
    for (int i = 1; i <= n; ++i) {
        t += sample_exponential(rng, spec.hazard(i));
        if (!std::isfinite(t)) break;
        out.push_back(t);
    }
}

struct Accumulator {
    long double sum = 0.0;
    long double sum_sq = 0.0;

    void add(double v) {
        sum += v;
        sum_sq += static_cast<long double>(v) * v;
    }

    SimEstimate estimate(std::size_t paths) const {
        SimEstimate e;
        const long double mean = sum / paths;
        e.mean = static_cast<double>(mean);
        if (paths > 1) {
            long double var = (sum_sq - paths * mean * mean) / (paths - 1);
            if (var < 0.0) var = 0.0;
            e.standard_error = static_cast<double>(std::sqrt(var / paths));
        }
        return e;
    }
};

}  // namespace

void SimConfig::validate() const {
    if (paths < 1) throw std::domain_error("SimConfig: paths must be >= 1");
    if (!(time_step > 0.0)) throw std::domain_error("SimConfig: time_step must be positive");
}

ChainOccupancyEstimate simulate_chain(const ChainSpec& spec, double maturity,
                                      const SimConfig& cfg) {
    spec.validate();
    cfg.validate();
    if (!(maturity > 0.0)) throw std::domain_error("simulate_chain: maturity must be positive");

    const int n = resolve_truncation(spec, maturity);
    const TimeGrid grid = make_grid(maturity, cfg.time_step);
    const std::size_t k = grid.times.size();

    std::vector<std::vector<std::size_t>> counts(k, std::vector<std::size_t>(n + 1, 0));
    std::vector<double> defaults;
    for (std::size_t p = 0; p < cfg.paths; ++p) {
        auto rng = path_rng(cfg.seed, p);
        sample_chain_defaults(rng, spec, n, defaults);
        std::size_t d = 0;
        for (std::size_t i = 0; i < k; ++i) {
            while (d < defaults.size() && defaults[d] <= grid.times[i]) ++d;
            const int state = std::min<int>(static_cast<int>(d), n);
            ++counts[i][state];
        }
    }

    ChainOccupancyEstimate est;
    est.times = grid.times;
    est.freq.resize(k);
    est.standard_error.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        est.freq[i].resize(n + 1);
        est.standard_error[i].resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            const double f = static_cast<double>(counts[i][j]) / cfg.paths;
            est.freq[i][j] = f;
            est.standard_error[i][j] = std::sqrt(f * (1.0 - f) / cfg.paths);
        }
    }
    return est;
}

std::map<Adjustment, SimEstimate> simulate_xva(const Scenario& s, const SimConfig& cfg) {
    s.validate();
    cfg.validate();

    const RateSpec& rs = s.rates;
    const double r_b = rs.bank_rate();
    const TimeGrid grid = make_grid(s.maturity, cfg.time_step);
    const std::size_t k = grid.times.size();

    const bool chain_hedge = !s.is_ccp();
    int n = 0;
    if (chain_hedge) n = resolve_truncation(s.chain(), s.maturity);

    auto profile_values = [&](ProfileRole role) {
        std::vector<double> v(k, 0.0);
        auto it = s.profiles.find(role);
        if (it != s.profiles.end())
            for (std::size_t i = 0; i < k; ++i) v[i] = it->second.value(grid.times[i]);
        return v;
    };

    // deterministic integrand factors per grid point (discount at r_B;
    // client survival enters pathwise through the termination indicator)
    std::vector<double> disc(k);
    for (std::size_t i = 0; i < k; ++i) disc[i] = std::exp(-r_b * grid.times[i]);

    const auto exposure = profile_values(ProfileRole::Exposure);
    const auto vm_gap = profile_values(ProfileRole::VmGap);
    const auto vm_col = profile_values(ProfileRole::VmCollateral);
    const auto im_posted = profile_values(ProfileRole::ImPosted);
    const auto im_received = profile_values(ProfileRole::ImReceived);
    const auto capital = profile_values(ProfileRole::Capital);

    auto has = [&](ProfileRole r) { return s.profiles.count(r) > 0; };
    auto wanted = [&](Adjustment a) {
        if (!s.requested.empty()) {
            bool req = false;
            for (Adjustment r : s.requested) req = req || (r == a);
            if (!req) return false;
        }
        switch (a) {
            case Adjustment::Cva: return chain_hedge ? has(ProfileRole::Exposure) : true;
            case Adjustment::Fva: return has(ProfileRole::VmGap);
            case Adjustment::Colva:
                return has(ProfileRole::VmCollateral) || has(ProfileRole::ImReceived);
            case Adjustment::Mva: return has(ProfileRole::ImPosted);
            case Adjustment::Kva: return has(ProfileRole::Capital);
        }
        return false;
    };

    std::map<Adjustment, Accumulator> acc;
    for (Adjustment a : kAllAdjustments)
        if (wanted(a)) acc[a];

    std::vector<double> defaults;
    std::vector<double> pv(static_cast<std::size_t>(5), 0.0);
    for (std::size_t p = 0; p < cfg.paths; ++p) {
        auto rng = path_rng(cfg.seed, p);
        const double tau_client = sample_exponential(rng, s.client.hazard);
        if (chain_hedge)
            sample_chain_defaults(rng, s.chain(), n, defaults);
        else
            defaults.clear();

        std::fill(pv.begin(), pv.end(), 0.0);
        std::size_t d = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double t = grid.times[i];
            if (t >= tau_client) break;  // hedge closed on client default
            while (d < defaults.size() && defaults[d] <= t) ++d;
            const bool chain_alive = !chain_hedge || d < static_cast<std::size_t>(n);
            const double trap = (i == 0 || i + 1 == k) ? 0.5 * grid.step : grid.step;

            if (chain_hedge && chain_alive) {
                const double s_active = s.chain().spread(static_cast<int>(d) + 1);
                pv[0] += trap * s_active * disc[i] * exposure[i];
            }
            if (chain_alive) {
                pv[1] += trap * rs.bank_spread * disc[i] * vm_gap[i];
                pv[2] += trap * disc[i] *
                         (rs.collateral_spread * vm_col[i] + rs.im_rate_received * im_received[i]);
                pv[3] += trap * (rs.bank_spread - rs.im_spread_posted) * disc[i] * im_posted[i];
                pv[4] += trap * (rs.capital_cost - rs.capital_funding_fraction * r_b) * disc[i] *
                         capital[i];
            }
        }

        int idx = 0;
        for (Adjustment a : kAllAdjustments) {
            if (acc.count(a)) acc[a].add(-pv[idx]);
            ++idx;
        }
    }

    std::map<Adjustment, SimEstimate> out;
    for (auto& [a, ac] : acc) out[a] = ac.estimate(cfg.paths);
    return out;
}

}  // namespace xva
