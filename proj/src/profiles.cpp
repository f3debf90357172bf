#include "xva/profiles.hpp"

#include <stdexcept>

namespace xva {

namespace {

void check_positive_maturity(double maturity) {
    if (!(maturity > 0.0))
        throw std::domain_error("ExposureProfile: maturity must be positive");
    if (!(0.0 <= maturity) || maturity != maturity)
        throw std::domain_error("ExposureProfile: maturity must be finite");
}

}  // namespace

ExposureProfile ExposureProfile::decreasing(double scale, double maturity) {
    check_positive_maturity(maturity);
    if (scale < 0.0) throw std::domain_error("ExposureProfile: scale must be non-negative");
    ExposureProfile p;
    p.shape_ = ProfileShape::DecreasingTriangle;
    p.scale_ = scale;
    p.maturity_ = maturity;
    return p;
}

ExposureProfile ExposureProfile::flat(double scale, double maturity) {
    check_positive_maturity(maturity);
    if (scale < 0.0) throw std::domain_error("ExposureProfile: scale must be non-negative");
    ExposureProfile p;
    p.shape_ = ProfileShape::Flat;
    p.scale_ = scale;
    p.maturity_ = maturity;
    return p;
}

ExposureProfile ExposureProfile::increasing(double scale, double maturity) {
    check_positive_maturity(maturity);
    if (scale < 0.0) throw std::domain_error("ExposureProfile: scale must be non-negative");
    ExposureProfile p;
    p.shape_ = ProfileShape::IncreasingTriangle;
    p.scale_ = scale;
    p.maturity_ = maturity;
    return p;
}

ExposureProfile ExposureProfile::piecewise(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2)
        throw std::domain_error("ExposureProfile: piecewise profile needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second < 0.0)
            throw std::domain_error("ExposureProfile: piecewise values must be non-negative");
        if (i > 0 && !(points[i].first > points[i - 1].first))
            throw std::domain_error("ExposureProfile: piecewise times must be strictly increasing");
    }
    ExposureProfile p;
    p.shape_ = ProfileShape::PiecewiseLinear;
    p.scale_ = 1.0;
    p.maturity_ = points.back().first;
    p.points_ = std::move(points);
    return p;
}

double ExposureProfile::value(double t) const {
    if (t < 0.0)
        throw std::domain_error("ExposureProfile::value: t must be non-negative");
    if (t > maturity_) return 0.0;
    switch (shape_) {
        case ProfileShape::DecreasingTriangle:
            return scale_ * (1.0 - t / maturity_);
        case ProfileShape::Flat:
            return scale_;
        case ProfileShape::IncreasingTriangle:
            return scale_ * (t / maturity_);
        case ProfileShape::PiecewiseLinear: {
            if (t <= points_.front().first) return points_.front().second;
            for (std::size_t i = 1; i < points_.size(); ++i) {
                if (t <= points_[i].first) {
                    const auto& [t0, v0] = points_[i - 1];
                    const auto& [t1, v1] = points_[i];
                    const double w = (t - t0) / (t1 - t0);
                    return v0 + w * (v1 - v0);
                }
            }
            return points_.back().second;
        }
    }
    return 0.0;
}

}  // namespace xva
