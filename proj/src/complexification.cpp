#include "disctest/complexification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace disctest {

Complex QuadricDisc::eta(Complex zeta) const
{
    const Complex d = zeta - c;
    const double r = std::abs(d);
    if (r == 0.0)
        throw PreconditionError("QuadricDisc: zeta = c is outside the chart");
    if (r > radius * (1.0 + 1e-12))
        throw PreconditionError("QuadricDisc: |zeta - c| exceeds the radius");
    return std::conj(c) + radius * radius / d;
}

double QuadricDisc::residual(const QuadricPoint& p) const noexcept
{
    return std::abs((p.zeta - c) * (p.eta - std::conj(c)) - radius * radius);
}

bool LeviSet::contains(const QuadricPoint& p, double tol) const noexcept
{
    return mc_membership(c, p, tol);
}

bool mc_membership(Complex c, const QuadricPoint& p, double tol) noexcept
{
    const Complex g = (p.zeta - c) * (p.eta - std::conj(c));
    const double d2 = std::norm(p.zeta - c);
    const double scale = std::max({1.0, d2, std::abs(g)});
    return std::abs(g.imag()) <= tol * scale && d2 <= g.real() + tol * scale;
}

QuadricIntersection quadric_intersection(Complex c1, double r1, Complex c2, double r2)
{
    if (c1 == c2)
        throw PreconditionError("quadric_intersection: concentric quadrics (c1 = c2)");
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw PreconditionError("quadric_intersection: radii must be positive");

    // Eliminating eta: a zeta^2 + b zeta + k = 0.
    const Complex a = std::conj(c1 - c2);
    const Complex b = r1 * r1 - r2 * r2 - a * (c1 + c2);
    const Complex k = a * c1 * c2 + r2 * r2 * c1 - r1 * r1 * c2;
    const auto poly = [&](Complex z) { return (a * z + b) * z + k; };
    const auto polish = [&](Complex z) {
        const Complex d = 2.0 * a * z + b;
        return d == Complex{} ? z : z - poly(z) / d;
    };

    const double scale = std::max({1.0, std::abs(c1), std::abs(c2), r1, r2});
    const double scale2 = scale * scale;
    const Complex disc = b * b - 4.0 * a * k;

    QuadricIntersection out;
    std::vector<Complex> roots;
    if (std::abs(disc) <= 1e-12 * scale2 * scale2) {
        out.double_root = true;
        roots.push_back(-b / (2.0 * a));
    } else {
        const Complex sq = std::sqrt(disc);
        const Complex q = -0.5 * ((std::conj(b) * sq).real() >= 0.0 ? b + sq : b - sq);
        roots.push_back(polish(q / a));
        roots.push_back(polish(k / q));
    }
    out.candidate_roots = roots.size();

    const double slack = 1e-12 * scale;
    for (const Complex z : roots) {
        const double d1 = std::abs(z - c1);
        const double d2 = std::abs(z - c2);
        if (d1 > r1 + slack || d2 > r2 + slack || d1 == 0.0 || d2 == 0.0)
            continue;
        // recover eta from the quadric whose denominator is better conditioned
        const Complex eta = d1 >= d2 ? std::conj(c1) + r1 * r1 / (z - c1) : std::conj(c2) + r2 * r2 / (z - c2);
        out.points.push_back({z, eta});
    }
    return out;
}

bool region_T_membership(double zeta, double eta) noexcept
{
    return (zeta <= 0.0 && eta <= zeta) || (zeta >= 1.0 && eta >= zeta);
}

M0M1Regime m0_m1_regime(double r1, double r2) noexcept
{
    if (r2 >= r1 + 1.0)
        return M0M1Regime::outer;
    if (r1 - 1.0 > r2)
        return M0M1Regime::inner;
    if (r1 + r2 < 1.0)
        return M0M1Regime::disjoint;
    return M0M1Regime::complex;
}

std::optional<QuadricPoint> m0_m1_intersection_sample(double r1, double r2)
{
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw PreconditionError("m0_m1_intersection_sample: radii must be positive");
    const M0M1Regime regime = m0_m1_regime(r1, r2);
    if (regime != M0M1Regime::outer && regime != M0M1Regime::inner)
        return std::nullopt;

    // zeta and eta are the roots of x^2 - s x + R1^2; take the large one directly and the
    // small one from the product to avoid cancellation.
    const double s = r1 * r1 + 1.0 - r2 * r2;
    const double root = std::sqrt(std::max(0.0, s * s - 4.0 * r1 * r1));
    const double big = 0.5 * (s + std::copysign(root, s));
    const double small = r1 * r1 / big;
    // outer: s < 0, zeta is the smaller-modulus root; inner: s > 0, zeta again the smaller one
    return QuadricPoint{small, big};
}

void CenterNormalization::validate() const
{
    if (c1 == c2)
        throw PreconditionError("CenterNormalization: c1 = c2");
}

double CenterNormalization::min_modulus_on_circle(Complex center, double radius) const noexcept
{
    return std::abs(std::abs(c2 - c1) * radius - std::abs(to_plane(center)));
}

EZetaContour::EZetaContour(Complex zeta) : zeta_(zeta)
{
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()))
        throw PreconditionError("EZetaContour: zeta must be finite");
    if (zeta.imag() == 0.0)
        throw PreconditionError("EZetaContour: zeta real, the half-lines overlap");
}

double EZetaContour::parameter(int ray, Complex w) const noexcept
{
    const Complex v = direction(ray);
    return ((w - center(ray)) * std::conj(v)).real() / std::norm(v);
}

double EZetaContour::orientation(int ray) const noexcept
{
    const double up = zeta_.imag() > 0.0 ? 1.0 : -1.0;
    return ray == 0 ? up : -up;
}

double EZetaContour::distance(int ray, Complex w) const noexcept
{
    return std::abs(w - point(ray, std::max(1.0, parameter(ray, w))));
}

Complex h_tilde_on_ray(const PlaneFunction& h, Complex c, double lambda, Complex zeta, std::size_t nodes)
{
    if (!(lambda >= 1.0))
        throw PreconditionError("h_tilde_on_ray: lambda must be >= 1");
    const double r = std::abs(zeta - c);
    if (r == 0.0)
        throw PreconditionError("h_tilde_on_ray: zeta = c");
    if (lambda == 1.0)
        return h(zeta);
    // The projection onto nonnegative frequencies has no kernel singularity, so lambda
    // close to 1 needs no exclusion zone.
    const auto q = CircleQuadrature::sample(c, std::sqrt(lambda) * r, nodes, h);
    return BoundaryFourier(q).analytic_part(zeta);
}

ExtensionCallback plane_extension(PlaneFunction h, std::size_t nodes)
{
    return [h = std::move(h), nodes](Complex zeta, Complex w, int ray) {
        const double c = EZetaContour::center(ray);
        const Complex v = std::conj(zeta) - c;
        double lambda = ((w - c) * std::conj(v)).real() / std::norm(v);
        if (lambda < 1.0 && lambda > 1.0 - 1e-12)
            lambda = 1.0;
        return h_tilde_on_ray(h, c, lambda, zeta, nodes);
    };
}

RayMajorant induced_ray_majorant(Complex zeta, double sup_f, const CenterNormalization& n)
{
    n.validate();
    return {[zeta, sup_f, n](int ray, double lambda) {
        if (!(lambda > 1.0))
            return std::numeric_limits<double>::infinity();
        const double c = EZetaContour::center(ray);
        const double rho = std::sqrt(lambda) * std::abs(zeta - c);
        const double m = n.min_modulus_on_circle(c, rho);
        return decay_bound(0.5 * (1.0 + m * m), sup_f) / (1.0 - 1.0 / std::sqrt(lambda));
    }};
}

TransformResult cauchy_transform_F(const ExtensionCallback& h_ext, Complex zeta, Complex eta, const RayMajorant& decay,
                                   const TransformOptions& opts)
{
    if (!h_ext || !decay.bound)
        throw PreconditionError("cauchy_transform_F: missing extension or majorant");
    if (!(opts.budget.epsilon_tail > 0.0))
        throw PreconditionError("cauchy_transform_F: epsilon_tail must be positive");
    const EZetaContour contour(zeta);
    const double scale = std::max(1.0, std::abs(zeta));
    if (contour.distance(eta) < opts.delta * scale)
        throw PreconditionError("cauchy_transform_F: eta lies on or too close to E^zeta");

    TransformResult out;
    Complex sum{};
    double error = 0.0;
    double truncation = 0.0;
    for (int ray = 0; ray < 2; ++ray) {
        const Complex v = contour.direction(ray);
        const double speed = std::abs(v);
        const double gap = contour.distance(ray, eta);
        const double offset = std::abs(eta - EZetaContour::center(ray));

        // |w - eta| >= max(dist(eta, ray), lambda |v| - |eta - c|) along the ray
        const RealFunction majorant = [&](double lambda) {
            return decay.bound(ray, lambda) * speed / std::max(gap, lambda * speed - offset);
        };
        const RealFunction tail = [&](double x) {
            const double from = 1.0 + x;
            if (!std::isfinite(decay.bound(ray, from)))
                return std::numeric_limits<double>::infinity();
            return one_sided_tail(majorant, from);
        };
        const double lambda_max = 1.0 + solve_truncation(tail, 0.5 * opts.budget.epsilon_tail);
        out.lambda_max[static_cast<std::size_t>(ray)] = lambda_max;
        truncation += tail(lambda_max - 1.0);

        if (lambda_max > 1.0) {
            const auto integrand = [&](double lambda) {
                const Complex w = contour.point(ray, lambda);
                return h_ext(zeta, w, ray) * v / (w - eta);
            };
            std::vector<double> breaks;
            const double nearest = contour.parameter(ray, eta);
            if (nearest > 1.0 && nearest < lambda_max)
                breaks.push_back(nearest);
            const IntegralResult r = integrate(integrand, 1.0, lambda_max, opts.quadrature, breaks);
            sum += contour.orientation(ray) * r.value;
            error += r.error;
            out.evaluations += r.evaluations;
            out.converged = out.converged && r.converged;
        }
    }
    out.value = sum / Complex{0.0, kTwoPi};
    out.error = error / kTwoPi;
    out.truncation = truncation / kTwoPi;
    return out;
}

PlaneFunction normalized_induced_h(const BoundaryFunction& f, const CenterNormalization& n, const AveragingConfig& cfg)
{
    n.validate();
    return [f, n, cfg](Complex xi) { return induced_h(f, n.to_plane(xi), cfg).value; };
}

} // namespace disctest
