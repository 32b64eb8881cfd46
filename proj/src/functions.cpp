#include "disctest/functions.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace disctest {

Complex damping_g(Complex z2) noexcept
{
    const Complex w = 1.0 - z2;
    if (w == Complex{})
        return {};
    return std::exp(-1.0 / std::sqrt(w));
}

double radical_inverse(std::size_t index, unsigned base) noexcept
{
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

std::vector<C2Point> sphere_samples(std::size_t count, std::size_t skip)
{
    std::vector<C2Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = i + skip;
        // |z1|^2 uniform on [0, 1] with independent phases gives the uniform measure on S^3.
        const double u = radical_inverse(k, 2);
        const double a = kTwoPi * radical_inverse(k, 3);
        const double b = kTwoPi * radical_inverse(k, 5);
        out.push_back({std::polar(std::sqrt(u), a), std::polar(std::sqrt(1.0 - u), b)});
    }
    return out;
}

BoundaryFunction::BoundaryFunction(Kind kind, std::string name, Callback fn, double closed_bound)
    : kind_(kind), name_(std::move(name)), fn_(std::move(fn)), closed_bound_(closed_bound),
      sampled_sup_(std::make_shared<double>(-1.0))
{
}

BoundaryFunction BoundaryFunction::zero()
{
    return {Kind::zero, "zero", [](const C2Point&) { return Complex{}; }, 0.0};
}

BoundaryFunction BoundaryFunction::constant(Complex c)
{
    std::ostringstream name;
    name << "constant(" << c.real() << "," << c.imag() << ")";
    return {Kind::constant, name.str(), [c](const C2Point&) { return c; }, std::abs(c)};
}

BoundaryFunction BoundaryFunction::holomorphic_polynomial(std::vector<Monomial> terms)
{
    double bound = 0.0;
    for (const auto& t : terms) {
        if (t.p < 0 || t.q < 0)
            throw PreconditionError("holomorphic_polynomial: negative exponent");
        bound += std::abs(t.coeff);
    }
    auto fn = [terms = std::move(terms)](const C2Point& z) {
        Complex s{};
        for (const auto& t : terms)
            s += t.coeff * std::pow(z.z1, t.p) * std::pow(z.z2, t.q);
        return s;
    };
    return {Kind::holomorphic_polynomial, "holomorphic-polynomial", std::move(fn), bound};
}

BoundaryFunction BoundaryFunction::antiholomorphic_monomial(int p, int q)
{
    if (p < 0 || q < 0 || p + q == 0)
        throw PreconditionError("antiholomorphic_monomial: exponents must be nonnegative and not both zero");
    auto fn = [p, q](const C2Point& z) { return std::pow(std::conj(z.z1), p) * std::pow(std::conj(z.z2), q); };
    std::ostringstream name;
    name << "conj(z1)^" << p << "*conj(z2)^" << q;
    return {Kind::antiholomorphic_monomial, name.str(), std::move(fn), 1.0};
}

BoundaryFunction BoundaryFunction::counterexample(Complex t1, Complex t2, std::vector<Complex> extra)
{
    if (t1 == Complex{} || t2 == Complex{})
        throw PreconditionError("counterexample: t1 and t2 must be nonzero");
    auto fn = [t1c = std::conj(t1), t2c = std::conj(t2), extra = std::move(extra)](const C2Point& z) {
        const Complex w = z.z2 - 1.0;
        if (w == Complex{})
            return Complex{};
        const Complex g = damping_g(z.z2);
        if (g == Complex{})
            return Complex{};
        Complex v = (std::conj(z.z1) - t1c) / std::conj(w) * (z.z1 * t2c + w) * g;
        for (const Complex& s : extra)
            v *= z.z1 * std::conj(s) + w;
        return v;
    };
    return {Kind::counterexample, "counterexample", std::move(fn), 0.0};
}

BoundaryFunction BoundaryFunction::callback(std::string name, Callback fn, double sup_hint)
{
    if (!fn)
        throw PreconditionError("callback: empty function");
    return {Kind::callback, std::move(name), std::move(fn), sup_hint > 0.0 ? sup_hint : 0.0};
}

BoundaryFunction BoundaryFunction::damped() const
{
    if (kind_ == Kind::zero)
        return *this;
    auto inner = fn_;
    // |g| <= 1 on the closed ball, so the bound carries over.
    return {Kind::callback, "g*" + name_, [inner](const C2Point& z) { return damping_g(z.z2) * inner(z); },
            kind_ == Kind::counterexample ? 0.0 : closed_bound_};
}

BoundaryFunction BoundaryFunction::composed_with(const Matrix2& m) const
{
    auto inner = fn_;
    BoundaryFunction out{kind_ == Kind::zero || kind_ == Kind::constant ? kind_ : Kind::callback, name_,
                         [inner, m](const C2Point& z) { return inner(m.apply(z)); }, closed_bound_};
    return out;
}

double BoundaryFunction::sup_estimate() const
{
    if (kind_ == Kind::zero)
        return 0.0;
    static std::mutex m;
    std::lock_guard lock(m);
    if (*sampled_sup_ < 0.0) {
        double s = 0.0;
        for (const auto& z : sphere_samples(10000))
            s = std::max(s, std::abs(fn_(z)));
        *sampled_sup_ = s;
    }
    return *sampled_sup_;
}

double BoundaryFunction::sup_bound() const
{
    if (kind_ == Kind::zero)
        return 0.0;
    if (closed_bound_ > 0.0)
        return closed_bound_;
    return 2.0 * sup_estimate();
}

} // namespace disctest
