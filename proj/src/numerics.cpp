#include "disctest/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>

namespace disctest {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

CircleQuadrature::CircleQuadrature(Complex center, double radius, std::size_t nodes)
    : center_(center), radius_(radius), unit_(nodes), values_(nodes)
{
    if (nodes < 16 || !is_power_of_two(nodes))
        throw PreconditionError("CircleQuadrature: node count must be a power of two >= 16");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw PreconditionError("CircleQuadrature: radius must be positive and finite");
    for (std::size_t k = 0; k < nodes; ++k)
        unit_.set(k, std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(nodes)));
}

double CircleQuadrature::sup() const noexcept
{
    double s = 0.0;
    for (std::size_t k = 0; k < nodes(); ++k)
        s = std::max(s, std::abs(value(k)));
    return s;
}

Complex circle_integral(const CircleQuadrature& q, int n)
{
    if (n < 0)
        throw PreconditionError("circle_integral: negative power");
    const std::size_t nodes = q.nodes();
    const double h = kTwoPi / static_cast<double>(nodes);
    kernels::SplitVector tau(nodes);
    kernels::SplitVector w(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        const Complex s = q.unit_node(k);
        tau.set(k, q.center() + q.radius() * s);
        w.set(k, q.value(k) * (kI * q.radius() * h) * s);
    }
    std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
    kernels::power_sums(tau.view(), w.view(), out);
    return out.back();
}

std::vector<Complex> circle_moments(const CircleQuadrature& q, int n_max)
{
    if (n_max < 0)
        throw PreconditionError("circle_moments: negative moment order");
    const std::size_t nodes = q.nodes();
    const Complex step = kI * q.radius() * (kTwoPi / static_cast<double>(nodes));
    kernels::SplitVector w(nodes);
    for (std::size_t k = 0; k < nodes; ++k)
        w.set(k, q.value(k) * step * q.unit_node(k));
    std::vector<Complex> out(static_cast<std::size_t>(n_max) + 1);
    kernels::power_sums(q.unit_nodes(), w.view(), out);
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod

namespace {

struct Segment {
    double a;
    double b;
    Complex value;
    double error;

    bool operator<(const Segment& o) const noexcept { return error < o.error; }
};

Segment gk21(const ComplexIntegrand& f, double a, double b)
{
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    static const auto& xk = Kronrod::abscissa();  // xk[0] = 0, ascending
    static const auto& wk = Kronrod::weights();
    static const auto& wg = Gauss::weights();     // Gauss nodes sit at xk[1], xk[3], ..

    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    const Complex fc = f(mid);
    Complex kron = wk[0] * fc;
    Complex gauss{};
    double abs_sum = wk[0] * std::abs(fc);
    std::array<Complex, 21> vals{};
    vals[0] = fc;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = half * xk[i];
        const Complex f1 = f(mid - dx);
        const Complex f2 = f(mid + dx);
        vals[2 * i - 1] = f1;
        vals[2 * i] = f2;
        kron += wk[i] * (f1 + f2);
        abs_sum += wk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1)
            gauss += wg[i / 2] * (f1 + f2);
    }

    // QUADPACK-style error scaling, applied to the complex modulus.
    const Complex mean = 0.5 * kron;
    double asc = wk[0] * std::abs(fc - mean);
    for (std::size_t i = 1; i < xk.size(); ++i)
        asc += wk[i] * (std::abs(vals[2 * i - 1] - mean) + std::abs(vals[2 * i] - mean));

    const double scale = std::abs(half);
    double err = std::abs((kron - gauss) * half);
    const double resasc = asc * scale;
    const double resabs = abs_sum * scale;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        err = std::max(50.0 * kEps * resabs, err);
    if (!std::isfinite(kron.real()) || !std::isfinite(kron.imag()))
        err = std::numeric_limits<double>::infinity();
    return {a, b, kron * half, err};
}

} // namespace

IntegralResult integrate(const ComplexIntegrand& f, double a, double b, const AdaptiveOptions& opts,
                         std::span<const double> breakpoints)
{
    IntegralResult result;
    if (a == b)
        return result;
    if (a > b) {
        result = integrate(f, b, a, opts, breakpoints);
        result.value = -result.value;
        return result;
    }

    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b)
            cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> heap;
    Complex frozen_value{};
    double frozen_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        heap.push(gk21(f, cuts[i], cuts[i + 1]));
        result.evaluations += 21;
    }

    auto totals = [&](Complex& value, double& error) {
        value = frozen_value;
        error = frozen_error;
        auto copy = heap;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
    };

    Complex value;
    double error;
    totals(value, error);
    std::size_t intervals = heap.size();
    while (!heap.empty()) {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
        if (error <= target)
            break;
        if (intervals >= opts.max_intervals) {
            result.converged = false;
            break;
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            // Cannot refine further; keep its contribution and estimate.
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        const Segment left = gk21(f, worst.a, mid);
        const Segment right = gk21(f, mid, worst.b);
        result.evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }

    totals(result.value, result.error);
    if (!std::isfinite(result.error))
        result.converged = false;
    else if (result.error > std::max(opts.abs_tol, opts.rel_tol * std::abs(result.value)))
        result.converged = false;
    return result;
}

double integrate_real(const RealFunction& f, double a, double b, const AdaptiveOptions& opts)
{
    return integrate([&](double x) { return Complex{f(x)}; }, a, b, opts).value.real();
}

double one_sided_tail(const RealFunction& f, double from)
{
    // y = from + t / (1 - t) maps [0, 1) onto [from, infinity).
    const auto mapped = [&](double t) {
        const double s = 1.0 - t;
        const double y = from + t / s;
        if (!std::isfinite(y))
            return Complex{};
        const double v = f(y) / (s * s);
        return Complex{std::isfinite(v) ? v : 0.0};
    };
    AdaptiveOptions opts;
    opts.abs_tol = 1e-300;
    opts.rel_tol = 1e-10;
    opts.max_intervals = 400;
    return integrate(mapped, 0.0, 1.0, opts).value.real();
}

double DecayMajorant::tail_beyond(double y) const
{
    if (tail)
        return tail(y);
    if (!pointwise)
        throw PreconditionError("DecayMajorant: neither a pointwise nor a tail bound was supplied");
    return one_sided_tail(pointwise, y) + one_sided_tail([this](double s) { return pointwise(-s); }, y);
}

double solve_truncation(const RealFunction& tail, double epsilon, double start)
{
    if (!(epsilon > 0.0))
        throw PreconditionError("solve_truncation: epsilon must be positive");
    if (tail(0.0) <= epsilon)
        return 0.0;
    double hi = std::max(start, 1e-6);
    double lo = 0.0;
    for (;;) {
        const double t = tail(hi);
        if (std::isfinite(t) && t <= epsilon)
            break;
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw QuadratureError("solve_truncation: the decay majorant cannot meet the tail budget");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double t = tail(mid);
        if (std::isfinite(t) && t <= epsilon)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

IntegralResult real_line_integral(const ComplexIntegrand& f, TailBudget budget, const DecayMajorant& decay,
                                  const AdaptiveOptions& opts)
{
    if (!(budget.epsilon_tail > 0.0) || !(budget.epsilon_tail < 1.0))
        throw PreconditionError("real_line_integral: epsilon_tail must lie in (0, 1)");
    const auto tail = [&](double y) { return decay.tail_beyond(y); };
    double y_max = budget.y_max;
    if (y_max > 0.0) {
        if (!(tail(y_max) <= budget.epsilon_tail))
            throw QuadratureError("real_line_integral: the supplied Y_max does not meet the tail budget");
    } else {
        y_max = solve_truncation(tail, budget.epsilon_tail);
    }

    IntegralResult r;
    if (y_max > 0.0) {
        const double zero = 0.0;
        r = integrate(f, -y_max, y_max, opts, std::span<const double>(&zero, 1));
    }
    r.y_max = y_max;
    r.truncation = tail(y_max);
    return r;
}

// ---------------------------------------------------------------------------
// Fourier projection

namespace {

std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

std::vector<Complex> forward_dft(const CircleQuadrature& q)
{
    const std::size_t n = q.nodes();
    std::vector<Complex> in(n);
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k)
        in[k] = q.value(k);

    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : out)
        c *= scale;
    return out;
}

Complex horner_one(const kernels::SplitVector& coeffs, Complex x)
{
    double re;
    double im;
    const double xr = x.real();
    const double xi = x.imag();
    kernels::horner(coeffs.view(), {&xr, &xi, 1}, &re, &im);
    return {re, im};
}

} // namespace

BoundaryFourier::BoundaryFourier(const CircleQuadrature& q)
    : center_(q.center()), radius_(q.radius()), coeffs_(forward_dft(q))
{
    const std::size_t n = coeffs_.size();
    const std::size_t half = n / 2;
    positive_.resize(half);
    negative_.resize(half);
    for (std::size_t j = 0; j < half; ++j) {
        positive_.set(j, coeffs_[j]);
        negative_.set(j, coeffs_[n - 1 - j]);
    }
}

Complex BoundaryFourier::coefficient(int j) const
{
    const auto n = static_cast<int>(coeffs_.size());
    if (j < -n / 2 || j >= n / 2)
        return {};
    return coeffs_[static_cast<std::size_t>(j >= 0 ? j : n + j)];
}

Complex BoundaryFourier::analytic_part(Complex tau) const { return horner_one(positive_, (tau - center_) / radius_); }

void BoundaryFourier::analytic_part(std::span<const Complex> taus, std::span<Complex> out) const
{
    if (out.size() != taus.size())
        throw PreconditionError("BoundaryFourier::analytic_part: size mismatch");
    kernels::SplitVector r(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        r.set(i, (taus[i] - center_) / radius_);
    kernels::SplitVector res(taus.size());
    kernels::horner(positive_.view(), r.view(), res.re(), res.im());
    for (std::size_t i = 0; i < taus.size(); ++i)
        out[i] = res.get(i);
}

Complex BoundaryFourier::exterior_part(Complex tau) const
{
    const Complex inv = radius_ / (tau - center_);
    return -inv * horner_one(negative_, inv);
}

double BoundaryFourier::negative_norm() const noexcept
{
    double s = 0.0;
    for (std::size_t j = 0; j < negative_.size(); ++j)
        s += std::norm(negative_.get(j));
    return std::sqrt(s);
}

double BoundaryFourier::l1_norm() const noexcept
{
    double s = 0.0;
    for (const auto& c : coeffs_)
        s += std::abs(c);
    return s;
}

Complex cauchy_kernel_integral(const CircleQuadrature& boundary, Complex zeta)
{
    const double rel = std::abs(zeta - boundary.center()) / boundary.radius();
    if (std::abs(rel - 1.0) <= kContourMargin)
        throw PreconditionError("cauchy_kernel_integral: target lies within the margin of the contour");
    const BoundaryFourier fourier(boundary);
    return rel < 1.0 ? fourier.analytic_part(zeta) : fourier.exterior_part(zeta);
}

Complex cauchy_kernel_sum(const CircleQuadrature& boundary, Complex zeta)
{
    // (1/2 pi i) sum h_k / (tau_k - zeta) * i R s_k (2 pi / N) = (R / N) sum h_k s_k / (tau_k - zeta)
    const std::size_t n = boundary.nodes();
    const double scale = boundary.radius() / static_cast<double>(n);
    kernels::SplitVector tau(n);
    kernels::SplitVector w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex s = boundary.unit_node(k);
        tau.set(k, boundary.center() + boundary.radius() * s);
        w.set(k, scale * boundary.value(k) * s);
    }
    return kernels::cauchy_sum(tau.view(), w.view(), zeta);
}

} // namespace disctest
