#include "windnet/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "windnet/errors.hpp"

namespace windnet {

namespace {

struct Simplex {
    std::vector<std::vector<double>> points;
    std::vector<double> values;

    void sort() {
        std::vector<std::size_t> order(values.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::vector<double>> p(points.size());
        std::vector<double> v(values.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            p[i] = std::move(points[order[i]]);
            v[i] = values[order[i]];
        }
        points = std::move(p);
        values = std::move(v);
    }

    double extent() const {
        double e = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            for (std::size_t d = 0; d < points[0].size(); ++d) {
                e = std::max(e, std::abs(points[i][d] - points[0][d]));
            }
        }
        return e;
    }
};

OptimResult run_once(const std::function<double(std::span<const double>)>& objective,
                     const std::vector<double>& start, const std::vector<double>& step,
                     double f_tol, double x_tol, std::size_t max_iterations) {
    const std::size_t dim = start.size();
    Simplex s;
    s.points.push_back(start);
    s.values.push_back(objective(start));
    for (std::size_t d = 0; d < dim; ++d) {
        auto p = start;
        p[d] += step[d];
        s.values.push_back(objective(p));
        s.points.push_back(std::move(p));
    }
    s.sort();

    OptimResult result;
    std::vector<double> centroid(dim), trial(dim);
    for (result.iterations = 0; result.iterations < max_iterations; ++result.iterations) {
        if (std::abs(s.values.back() - s.values.front()) <
                f_tol * (1.0 + std::abs(s.values.front())) &&
            s.extent() < x_tol) {
            result.converged = true;
            break;
        }
        for (std::size_t d = 0; d < dim; ++d) {
            double sum = 0.0;
            for (std::size_t i = 0; i < dim; ++i) sum += s.points[i][d];
            centroid[d] = sum / static_cast<double>(dim);
        }
        auto mix = [&](double coeff) {
            for (std::size_t d = 0; d < dim; ++d) {
                trial[d] = centroid[d] + coeff * (s.points.back()[d] - centroid[d]);
            }
            return objective(trial);
        };

        const double reflected = mix(-1.0);
        if (reflected < s.values.front()) {
            auto reflected_pt = trial;
            const double expanded = mix(-2.0);
            if (expanded < reflected) {
                s.points.back() = trial;
                s.values.back() = expanded;
            } else {
                s.points.back() = std::move(reflected_pt);
                s.values.back() = reflected;
            }
        } else if (reflected < s.values[dim - 1]) {
            s.points.back() = trial;
            s.values.back() = reflected;
        } else {
            const double coeff = reflected < s.values.back() ? -0.5 : 0.5;
            const double source = reflected < s.values.back() ? reflected : s.values.back();
            const double contracted = mix(coeff);
            if (contracted < source) {
                s.points.back() = trial;
                s.values.back() = contracted;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 1; i <= dim; ++i) {
                    for (std::size_t d = 0; d < dim; ++d) {
                        s.points[i][d] = 0.5 * (s.points[i][d] + s.points[0][d]);
                    }
                    s.values[i] = objective(s.points[i]);
                }
            }
        }
        s.sort();
    }
    result.x = s.points.front();
    result.value = s.values.front();
    return result;
}

}  // namespace

OptimResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                        std::vector<double> start, std::vector<double> step, double f_tol,
                        double x_tol, std::size_t max_iterations) {
    if (start.size() != step.size() || start.empty()) {
        throw ParamError("nelder_mead: start/step dimension mismatch");
    }
    if (!std::isfinite(objective(start))) {
        throw ParamError("nelder_mead: objective not finite at the start point");
    }
    OptimResult first = run_once(objective, start, step, f_tol, x_tol, max_iterations);
    if (first.converged) return first;
    // One restart with a fresh simplex around the best point seen.
    std::vector<double> restart_step(step.size());
    for (std::size_t d = 0; d < step.size(); ++d) restart_step[d] = 0.1 * step[d];
    OptimResult second =
        run_once(objective, first.x, restart_step, f_tol, x_tol, max_iterations);
    second.iterations += first.iterations;
    if (second.value <= first.value) return second;
    first.iterations = second.iterations;
    return first;
}

}  // namespace windnet
