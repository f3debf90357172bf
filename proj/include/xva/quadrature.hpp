#pragma once

#include <functional>
#include <stdexcept>

namespace xva {

/// Thrown when adaptive refinement exhausts its interval budget.
/// Carries the best estimate obtained so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const { return best_estimate_; }
    double error_estimate() const { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [0, upper]
/// to relative tolerance rel_tol.
double integrate(const std::function<double(double)>& f, double upper, double rel_tol = 1e-8);

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 double rel_tol);

}  // namespace xva
