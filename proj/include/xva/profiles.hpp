#pragma once

#include <utility>
#include <vector>

namespace xva {

enum class ProfileShape { DecreasingTriangle, Flat, IncreasingTriangle, PiecewiseLinear };

/// Deterministic time profile used for exposure, variation-margin gap,
/// initial margin or capital. Zero beyond maturity.
class ExposureProfile {
public:
    ExposureProfile() = default;

    static ExposureProfile decreasing(double scale, double maturity);
    static ExposureProfile flat(double scale, double maturity);
    static ExposureProfile increasing(double scale, double maturity);
    /// Points sorted strictly increasing in t, values >= 0.
    static ExposureProfile piecewise(std::vector<std::pair<double, double>> points);

    double value(double t) const;
    double maturity() const { return maturity_; }
    ProfileShape shape() const { return shape_; }
    double scale() const { return scale_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

private:
    ProfileShape shape_ = ProfileShape::Flat;
    double scale_ = 0.0;
    double maturity_ = 0.0;
    std::vector<std::pair<double, double>> points_;
};

}  // namespace xva
