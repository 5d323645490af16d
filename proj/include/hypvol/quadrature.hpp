#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hypvol {

/// Raised when an adaptive rule cannot reach its tolerance within the subdivision budget.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    /// Requested relative accuracy of the final value.
    double tol = 1e-10;
    /// Initial equal-width cells; each cell is refined independently.
    std::size_t cells = 8;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results never depend on it.
    unsigned threads = 0;
    /// Bisection budget per adaptive call.
    std::size_t max_subdivisions = 2000;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

struct Panel {
    double a, b, value, error;
};

/// 15-point Kronrod rule with the embedded 7-point Gauss rule and the QUADPACK error estimate.
template <class F>
Panel kronrod15(const F& f, double a, double b) {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using Gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<double, 15> fv{};
    fv[0] = f(center);
    for (std::size_t k = 1; k < 8; ++k) {
        fv[2 * k - 1] = f(center - half * x[k]);
        fv[2 * k] = f(center + half * x[k]);
    }

    double kronrod = wk[0] * fv[0];
    double gauss = wg[0] * fv[0];
    double abs_sum = wk[0] * std::abs(fv[0]);
    for (std::size_t k = 1; k < 8; ++k) {
        const double pair = fv[2 * k - 1] + fv[2 * k];
        kronrod += wk[k] * pair;
        abs_sum += wk[k] * (std::abs(fv[2 * k - 1]) + std::abs(fv[2 * k]));
        if (k % 2 == 0) {
            gauss += wg[k / 2] * pair;
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = wk[0] * std::abs(fv[0] - mean);
    for (std::size_t k = 1; k < 8; ++k) {
        asc += wk[k] * (std::abs(fv[2 * k - 1] - mean) + std::abs(fv[2 * k] - mean));
    }

    const double value = kronrod * half;
    double error = std::abs((kronrod - gauss) * half);
    const double resasc = asc * std::abs(half);
    const double resabs = abs_sum * std::abs(half);
    if (resasc != 0.0 && error != 0.0) {
        error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        error = std::max(50.0 * eps * resabs, error);
    }
    return {a, b, value, error};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
/// Stops when the summed error estimate is below max(abs_tol, rel_tol * |value|).
template <class F>
IntegrationResult integrate_adaptive(const F& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                                     std::size_t max_subdivisions = 2000) {
    if (a == b) {
        return {};
    }
    struct ByError {
        bool operator()(const detail::Panel& x, const detail::Panel& y) const {
            if (x.error != y.error) {
                return x.error < y.error;
            }
            return x.a > y.a;
        }
    };
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, ByError> heap;
    detail::Panel first = detail::kronrod15(f, a, b);
    heap.push(first);
    double total = first.value;
    double error = first.error;
    std::size_t evaluations = 15;
    std::size_t splits = 0;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (splits >= max_subdivisions) {
            throw QuadratureError("adaptive quadrature did not reach relative tolerance " +
                                  std::to_string(rel_tol) + " within " + std::to_string(max_subdivisions) +
                                  " subdivisions (error estimate " + std::to_string(error) + ")");
        }
        const detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (std::abs(worst.b - worst.a) <= 100.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            throw QuadratureError("adaptive quadrature hit the resolution limit near x = " +
                                  std::to_string(mid));
        }
        heap.pop();
        const detail::Panel left = detail::kronrod15(f, worst.a, mid);
        const detail::Panel right = detail::kronrod15(f, mid, worst.b);
        evaluations += 30;
        ++splits;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum in positional order so the value does not depend on the refinement history's rounding.
    std::vector<detail::Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    IntegrationResult out;
    for (const auto& p : panels) {
        out.value += p.value;
        out.error += p.error;
    }
    out.evaluations = evaluations;
    return out;
}

/// Splits [a, b] into equal cells, integrates each adaptively (possibly concurrently), and sums them
/// in cell order. The value is independent of the thread count.
template <class F>
IntegrationResult integrate_cells(const F& f, double a, double b, const QuadratureOptions& options) {
    const std::size_t n = std::max<std::size_t>(1, options.cells);
    std::vector<IntegrationResult> parts(n);
    std::vector<std::string> failures(n);
    const auto run_cell = [&](std::size_t i) {
        const double lo = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
        const double hi = (i + 1 == n) ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n);
        try {
            parts[i] = integrate_adaptive(f, lo, hi, options.tol, 0.0, options.max_subdivisions);
        } catch (const QuadratureError& e) {
            failures[i] = e.what();
        }
    };

    unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            run_cell(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    run_cell(i);
                }
            });
        }
    }

    IntegrationResult out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i].empty()) {
            throw QuadratureError(failures[i]);
        }
        out.value += parts[i].value;
        out.error += parts[i].error;
        out.evaluations += parts[i].evaluations;
    }
    return out;
}

}  // namespace hypvol
