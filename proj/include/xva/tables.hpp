#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xva/engine.hpp"

namespace xva {

struct TableCell {
    double client_bps = 0.0;
    double hedge_bps = 0.0;  // 0 for the CCP-hedge table
    std::string profile;     // "decreasing" | "flat" | "increasing"
    double maturity = 0.0;
    double relative_change_pct = 0.0;  // full precision
    int rounded_pct = 0;
    int reference_pct = 0;     // published value
    double deviation_pp = 0.0;  // relative_change_pct - reference_pct
};

struct TableResult {
    std::string id;
    std::vector<TableCell> cells;

    double max_deviation_pp() const;
};

/// Sweeps the grid of one of the published result tables under the
/// convention preset and attaches the published integer-percent value
/// to every cell. Valid ids: "mva-ccp", "cva-nojump", "cva-jump20".
TableResult reproduce_table(const std::string& id, double quadrature_tol = 1e-8);

/// Scenario for a single table cell (hedge_bps 0 = CCP hedge).
Scenario table_cell_scenario(const std::string& id, double client_bps, double hedge_bps,
                             const std::string& profile, double maturity,
                             double quadrature_tol = 1e-8);

void emit_csv(const TableResult& result, std::ostream& out);
void emit_json(const TableResult& result, std::ostream& out);
void emit_svg(const TableResult& result, std::ostream& out);
void emit(const TableResult& result, const std::string& format, const std::string& path);

}  // namespace xva
