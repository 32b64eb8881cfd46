#include "disctest/group.hpp"

#include <cmath>
#include <limits>

namespace disctest {

BallAutomorphism::BallAutomorphism(const C2Point& a, const Matrix2& u) : a_(a), u_(u)
{
    if (!a.finite() || norm2(a) >= 1.0)
        throw PreconditionError("BallAutomorphism: a must lie in the open ball");
    if (u.unitarity_defect() > 1e-12)
        throw PreconditionError("BallAutomorphism: U is not unitary");
}

C2Point BallAutomorphism::apply(const C2Point& z) const
{
    const double a2 = norm2(a_);
    if (a2 == 0.0)
        return u_.apply(Complex{-1.0} * z);
    const Complex za = hermitian_inner(z, a_);
    const Complex den = 1.0 - za;
    if (std::abs(den) < 1e-15)
        throw PoleError("BallAutomorphism: point on the singular hyperplane <z, a> = 1");
    const C2Point p = (za / a2) * a_;
    const C2Point q = z - p;
    const double s = std::sqrt(1.0 - a2);
    return u_.apply((1.0 / den) * (a_ - p - Complex{s} * q));
}

Complex nu(double y) noexcept
{
    const Complex iy{0.0, y};
    return iy / (1.0 + iy);
}

Complex composition_parameter(Complex a, Complex b)
{
    const Complex ac = std::conj(a);
    const Complex den = ac * b - 2.0 * ac + 1.0;
    if (den == Complex{})
        throw PoleError("composition_parameter: vanishing denominator");
    return (b - ac) / den;
}

C2Point GElement::apply(const C2Point& z) const
{
    const Complex s = Complex{0.0, y} * (z.z2 - 1.0);
    const Complex d = s + 1.0;
    if (d == Complex{})
        throw PoleError("GElement::apply: pole of the group element");
    return {z.z1 / d, (s + z.z2) / d};
}

BallAutomorphism GElement::as_automorphism() const
{
    // U11 = (conj a - 1) / sqrt(1 - |a|^2) and U22 = (1 - conj a) / (a - 1) with 1 - a = 1 / (1 + iy);
    // written in y to avoid the cancellation in 1 - |a|^2 for large |y|.
    const Complex one_iy{1.0, y};
    const Complex u11 = -one_iy / std::abs(one_iy);
    const Complex u22 = -one_iy / std::conj(one_iy);
    return {C2Point{0.0, a2()}, Matrix2::diagonal(u11, u22)};
}

std::vector<C2Point> orbit_points(const C2Point& z, std::span<const double> ys)
{
    if (distance(z, {0.0, 1.0}) < 1e-12)
        throw PreconditionError("orbit_points: (0, 1) is the fixed point of the group");
    std::vector<C2Point> out;
    out.reserve(ys.size());
    for (double y : ys)
        out.push_back(GElement{y}.apply(z));
    return out;
}

double alpha(Complex z2)
{
    const Complex w = 1.0 - z2;
    if (w == Complex{})
        throw PreconditionError("alpha: z2 = 1");
    return w.real() / std::norm(w);
}

QuotientPoint quotient_coordinate(const C2Point& z) noexcept
{
    const Complex w = z.z2 - 1.0;
    if (w == Complex{})
        return {};
    return {z.z1 / w};
}

C2Point canonical_representative(Complex zeta) noexcept
{
    const double r2 = std::norm(zeta);
    return {-2.0 * zeta / (1.0 + r2), (r2 - 1.0) / (r2 + 1.0)};
}

IntegralResult averaged_function(const BoundaryFunction& f, const C2Point& z, const AveragingConfig& cfg)
{
    if (distance(z, {0.0, 1.0}) < 1e-12)
        throw PreconditionError("averaged_function: (0, 1) is the fixed point of the group");
    if (f.identically_zero()) {
        IntegralResult zero;
        return zero;
    }

    // Along the orbit 1 / (1 - z2(y)) = alpha + i (beta - y); centring at y = beta puts the
    // peak of |g| at u = 0 and |g| <= exp(-sqrt((alpha + |u|) / 2)).
    const Complex inv = 1.0 / (1.0 - z.z2);
    const double a = inv.real();
    const double beta = inv.imag();
    if (!std::isfinite(beta) || std::abs(beta) > 1e12)
        throw QuadratureError("averaged_function: point too close to (0, 1) for the orbit parametrisation");

    const double c = f.sup_bound();
    DecayMajorant decay;
    decay.pointwise = [a, c](double u) { return c * std::exp(-std::sqrt(0.5 * (a + std::abs(u)))); };
    decay.tail = [a, c](double u) {
        const double s = std::sqrt(0.5 * (a + u));
        return 8.0 * c * (s + 1.0) * std::exp(-s);
    };

    const auto integrand = [&](double u) {
        const double y = beta + u;
        const C2Point p = GElement{y}.apply(z);
        const Complex g = std::exp(-std::sqrt(Complex{a, -u}));
        return g * f(p);
    };
    IntegralResult r = real_line_integral(integrand, cfg.budget, decay, cfg.quadrature);
    return r;
}

IntegralResult induced_h(const BoundaryFunction& f, Complex zeta, const AveragingConfig& cfg)
{
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()))
        throw PreconditionError("induced_h: zeta must be finite");
    return averaged_function(f, canonical_representative(zeta), cfg);
}

double decay_bound(double alpha_value, double sup_f) noexcept
{
    return 16.0 * sup_f * std::exp(-0.5 * std::sqrt(alpha_value));
}

double h_majorant(Complex zeta, double sup_f) noexcept
{
    return decay_bound(0.5 * (1.0 + std::norm(zeta)), sup_f);
}

PlaneCircle circle_image_of_line(Complex t, const C2Point& v)
{
    if (t == Complex{})
        throw PreconditionError("circle_image_of_line: t must be nonzero");
    const double vn = norm(v);
    if (std::abs(vn - 1.0) > 1e-12)
        throw PreconditionError("circle_image_of_line: v must be a unit vector");
    PlaneCircle out{-1.0 / std::conj(t), 0.0, false};
    if (std::abs(v.z2) < 1e-14) {
        out.infinite = true;
        out.radius = std::numeric_limits<double>::infinity();
        return out;
    }
    // |v2|^2 (1 - |t|^2) + 2 Re(t conj(v1) v2) is the squared radius of the tau-circle.
    double r2 = std::norm(v.z2) * (1.0 - std::norm(t)) + 2.0 * (t * std::conj(v.z1) * v.z2).real();
    const double scale = std::max(1.0, std::norm(t));
    if (r2 < 0.0 && r2 > -1e-14 * scale)
        r2 = 0.0;
    if (r2 < 0.0)
        throw PreconditionError("circle_image_of_line: the line misses the ball");
    out.radius = std::sqrt(r2 / std::norm(v.z2 * t));
    return out;
}

} // namespace disctest
