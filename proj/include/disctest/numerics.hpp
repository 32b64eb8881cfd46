#pragma once

// Quadrature shared by every analytic computation: the periodic trapezoid rule
// on circles, adaptive Gauss-Kronrod on intervals, improper integrals on the
// real line with a certified tail, and Cauchy integrals off the contour.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "disctest/kernels.hpp"
#include "disctest/types.hpp"

namespace disctest {

/// Relative distance to the contour below which Cauchy kernels are refused.
inline constexpr double kContourMargin = 1e-3;

/// Samples g(tau_k) at tau_k = center + radius * exp(2 pi i k / N).
class CircleQuadrature {
public:
    /// Requires N >= 16, N a power of two, radius > 0.
    CircleQuadrature(Complex center, double radius, std::size_t nodes);

    template <class F>
    [[nodiscard]] static CircleQuadrature sample(Complex center, double radius, std::size_t nodes, F&& f)
    {
        CircleQuadrature q(center, radius, nodes);
        for (std::size_t k = 0; k < nodes; ++k)
            q.set_value(k, f(q.node(k)));
        return q;
    }

    [[nodiscard]] std::size_t nodes() const noexcept { return unit_.size(); }
    [[nodiscard]] Complex center() const noexcept { return center_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    [[nodiscard]] Complex unit_node(std::size_t k) const noexcept { return unit_.get(k); }
    [[nodiscard]] Complex node(std::size_t k) const noexcept { return center_ + radius_ * unit_.get(k); }
    [[nodiscard]] Complex value(std::size_t k) const noexcept { return values_.get(k); }
    void set_value(std::size_t k, Complex v) noexcept { values_.set(k, v); }

    [[nodiscard]] kernels::SplitView unit_nodes() const noexcept { return unit_.view(); }
    [[nodiscard]] kernels::SplitView values() const noexcept { return values_.view(); }

    /// Largest |value|.
    [[nodiscard]] double sup() const noexcept;

private:
    Complex center_;
    double radius_;
    kernels::SplitVector unit_;
    kernels::SplitVector values_;
};

[[nodiscard]] bool is_power_of_two(std::size_t n) noexcept;

/// Trapezoid approximation of the contour integral of tau^n g(tau) d tau.
[[nodiscard]] Complex circle_integral(const CircleQuadrature& q, int n);

/// m_n = contour integral of ((tau - c)/R)^n g(tau) d tau, n = 0..n_max.
/// Same vanishing set as the literal tau^n moments, better conditioned off the unit circle.
[[nodiscard]] std::vector<Complex> circle_moments(const CircleQuadrature& q, int n_max);

struct IntegralResult {
    Complex value{};
    double error = 0.0;       // quadrature error estimate, excluding truncation
    double truncation = 0.0;  // certified bound on the discarded tails
    std::size_t evaluations = 0;
    double y_max = 0.0;
    bool converged = true;

    [[nodiscard]] double total_error() const noexcept { return error + truncation; }
};

struct AdaptiveOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    std::size_t max_intervals = 2000;
};

using ComplexIntegrand = std::function<Complex(double)>;
using RealFunction = std::function<double(double)>;

/// Global adaptive 21-point Gauss-Kronrod on [a, b], optionally pre-split at `breakpoints`.
[[nodiscard]] IntegralResult integrate(const ComplexIntegrand& f, double a, double b, const AdaptiveOptions& opts = {},
                                       std::span<const double> breakpoints = {});

/// Real-valued convenience wrapper.
[[nodiscard]] double integrate_real(const RealFunction& f, double a, double b, const AdaptiveOptions& opts = {});

/// Integral of a nonnegative function over [from, infinity).
[[nodiscard]] double one_sided_tail(const RealFunction& f, double from);

struct TailBudget {
    double epsilon_tail = 1e-12;
    double y_max = 0.0;  // filled by the truncation solver
};

/// Majorant of |integrand(y)|. `tail(Y)` bounds the integral of the majorant over |y| >= Y;
/// when absent it is integrated numerically from `pointwise`.
struct DecayMajorant {
    RealFunction pointwise;
    RealFunction tail;

    [[nodiscard]] double tail_beyond(double y) const;
};

/// Smallest Y (to bisection accuracy) with tail(Y) <= epsilon. `tail` must be non-increasing.
/// Throws QuadratureError when no representable Y meets the budget.
[[nodiscard]] double solve_truncation(const RealFunction& tail, double epsilon, double start = 1.0);

/// Integral over the real line: adaptive quadrature on [-Y, Y] (split at 0) plus a certified tail.
[[nodiscard]] IntegralResult real_line_integral(const ComplexIntegrand& f, TailBudget budget, const DecayMajorant& decay,
                                                const AdaptiveOptions& opts = {});

/// Fourier coefficients of boundary samples: value(theta) = sum_j a_j e^{i j theta}, j = -N/2 .. N/2-1.
class BoundaryFourier {
public:
    explicit BoundaryFourier(const CircleQuadrature& q);

    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] Complex coefficient(int j) const;
    [[nodiscard]] Complex center() const noexcept { return center_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }

    /// Sum of the nonnegative-frequency series at tau (|tau - c| <= R): the holomorphic extension.
    [[nodiscard]] Complex analytic_part(Complex tau) const;
    void analytic_part(std::span<const Complex> taus, std::span<Complex> out) const;
    /// Minus the negative-frequency series at tau (|tau - c| >= R): the exterior Cauchy integral.
    [[nodiscard]] Complex exterior_part(Complex tau) const;

    /// l2 norm of the negative-frequency coefficients.
    [[nodiscard]] double negative_norm() const noexcept;
    /// l1 norm of all coefficients.
    [[nodiscard]] double l1_norm() const noexcept;

private:
    Complex center_;
    double radius_;
    std::vector<Complex> coeffs_;   // FFT order: index k is frequency k (k < N/2) or k - N
    kernels::SplitVector positive_; // a_0 .. a_{N/2-1}
    kernels::SplitVector negative_; // a_{-1}, a_{-2}, .. a_{-N/2}
};

/// (1 / 2 pi i) contour integral of h(w) / (w - zeta) dw for samples of h on the circle.
/// Refuses targets within kContourMargin (relative) of the contour.
[[nodiscard]] Complex cauchy_kernel_integral(const CircleQuadrature& boundary, Complex zeta);

/// Same integral by the direct discrete kernel sum; accurate only well away from the contour.
[[nodiscard]] Complex cauchy_kernel_sum(const CircleQuadrature& boundary, Complex zeta);

} // namespace disctest
