#pragma once

// Tensor-product quadrature kernels. Every 2D rule has a serial reference
// implementation and an OpenMP implementation; both sum the per-row partials
// in the same order, so their results are bit-identical.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "telefid/types.hpp"

namespace telefid::quad {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int n);

/// n-point Gauss-Hermite rule for weight e^{-u^2} on the real line.
Rule1D gauss_hermite(int n);

/// Composite Gauss-Legendre rule: `panels` equal panels on [a, b].
Rule1D composite_legendre(double a, double b, int panels, int order);

struct Window2D {
    double x0, x1;
    double y0, y1;

    static Window2D square(double half_width) { return {-half_width, half_width, -half_width, half_width}; }
};

enum class Execution { serial, parallel };

struct Options {
    int order = 16;           // Gauss-Legendre points per panel
    int initial_panels = 4;   // per axis
    int max_panels = 512;     // per axis
    double tolerance = 1e-10; // stop when successive estimates differ by less
    double fail_tolerance = 1e-9;
    Execution execution = Execution::parallel;
};

struct Result {
    cplx value;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    int panels = 0;
};

/// Half-width L = 12/sqrt(c) of a window that contains an envelope e^{-c s^2}.
inline double envelope_half_width(double c) { return 12.0 / std::sqrt(c); }

template <class F>
cplx apply_rule_serial(F&& f, const Rule1D& xs, const Rule1D& ys)
{
    cplx total = 0.0;
    for (std::size_t i = 0; i < xs.nodes.size(); ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < ys.nodes.size(); ++j)
            row += ys.weights[j] * f(xs.nodes[i], ys.nodes[j]);
        total += xs.weights[i] * row;
    }
    return total;
}

template <class F>
cplx apply_rule_parallel(F&& f, const Rule1D& xs, const Rule1D& ys)
{
    const auto nx = static_cast<std::int64_t>(xs.nodes.size());
    std::vector<cplx> rows(nx);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nx; ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < ys.nodes.size(); ++j)
            row += ys.weights[j] * f(xs.nodes[i], ys.nodes[j]);
        rows[i] = row;
    }
    cplx total = 0.0;
    for (std::int64_t i = 0; i < nx; ++i)
        total += xs.weights[i] * rows[i];
    return total;
}

template <class F>
cplx apply_rule(F&& f, const Rule1D& xs, const Rule1D& ys, Execution exec)
{
    return exec == Execution::parallel ? apply_rule_parallel(f, xs, ys) : apply_rule_serial(f, xs, ys);
}

/// Adaptive composite Gauss-Legendre over a rectangle: the panel count per
/// axis doubles until successive estimates agree to `opts.tolerance`.
template <class F>
Result integrate_2d(F&& f, const Window2D& w, const Options& opts = {})
{
    int panels = opts.initial_panels;
    auto estimate = [&](int p) {
        const Rule1D xs = composite_legendre(w.x0, w.x1, p, opts.order);
        const Rule1D ys = composite_legendre(w.y0, w.y1, p, opts.order);
        return apply_rule(f, xs, ys, opts.execution);
    };

    Result res;
    cplx previous = estimate(panels);
    res.evaluations = std::int64_t(panels) * panels * opts.order * opts.order;
    while (true) {
        const int next = panels * 2;
        const cplx current = estimate(next);
        res.evaluations += std::int64_t(next) * next * opts.order * opts.order;
        const double diff = std::abs(current - previous);
        res.value = current;
        res.error_estimate = diff;
        res.panels = next;
        if (diff < opts.tolerance)
            return res;
        if (next * 2 > opts.max_panels) {
            if (diff <= opts.fail_tolerance)
                return res;
            throw QuadratureError("2D quadrature did not converge", diff);
        }
        panels = next;
        previous = current;
    }
}

}  // namespace telefid::quad
