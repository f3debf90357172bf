#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "xva/engine.hpp"

namespace xva {

struct SimConfig {
    std::size_t paths = 100000;
    std::uint64_t seed = 42;
    double time_step = 0.0625;  // years

    void validate() const;
};

struct SimEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Empirical occupancy frequencies of the hedge-counterparty chain on
/// a fixed time grid. freq[k][i] is the frequency of state i (last
/// index = absorbed) at times[k].
struct ChainOccupancyEstimate {
    std::vector<double> times;
    std::vector<std::vector<double>> freq;
    std::vector<std::vector<double>> standard_error;
};

/// Simulates the default/replacement sequence pathwise and tabulates
/// state occupancy over the grid.
ChainOccupancyEstimate simulate_chain(const ChainSpec& spec, double maturity,
                                      const SimConfig& cfg);

/// Pathwise estimates of the behavioural hedge-side adjustments:
/// integrands accumulate along surviving-client time, the active
/// spread switches at simulated hedge defaults, and the path
/// terminates at the simulated client default.
std::map<Adjustment, SimEstimate> simulate_xva(const Scenario& s, const SimConfig& cfg);

}  // namespace xva
