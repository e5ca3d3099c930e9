#pragma once

#include <functional>
#include <span>
#include <vector>

namespace windnet {

struct OptimResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with standard coefficients and
/// one restart from the best point before reporting non-convergence. The
/// objective may return +infinity to mark infeasible points, as long as the
/// start is feasible.
OptimResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                        std::vector<double> start, std::vector<double> step,
                        double f_tol = 1e-10, double x_tol = 1e-9,
                        std::size_t max_iterations = 4000);

}  // namespace windnet
