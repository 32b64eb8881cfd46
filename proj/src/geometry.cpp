#include "disctest/geometry.hpp"

#include <algorithm>
#include <limits>

namespace disctest {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

double Matrix2::unitarity_defect() const noexcept
{
    const Matrix2 p = (*this) * adjoint();
    const Matrix2 id = identity();
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(p.m[i] - id.m[i]));
    return worst;
}

ComplexLine::ComplexLine(const C2Point& base, const C2Point& direction) : base_(base)
{
    if (!base.finite() || !direction.finite())
        throw PreconditionError("ComplexLine: non-finite coordinates");
    const double len = norm(direction);
    if (len < kMinDirectionNorm)
        throw PreconditionError("ComplexLine: direction vector is zero");
    direction_ = Complex{1.0 / len} * direction;
}

ComplexLine ComplexLine::through(const C2Point& a, const C2Point& b)
{
    if (distance(a, b) < kMinDirectionNorm * std::max(1.0, norm(a)))
        throw PreconditionError("ComplexLine::through: the two points coincide");
    return ComplexLine(a, b - a);
}

std::optional<DiscChart> line_ball_intersection(const ComplexLine& line, double tangency_tol)
{
    const C2Point& base = line.base();
    const C2Point& v = line.direction();
    // |base + tau v|^2 = |tau - c|^2 - |c|^2 + |base|^2 with c = -conj(<v, base>).
    const Complex c = -std::conj(hermitian_inner(v, base));
    // R^2 = |c|^2 - |base|^2 + 1, evaluated through the foot point to limit cancellation.
    const C2Point foot = base - hermitian_inner(base, v) * v;
    double r2 = 1.0 - norm2(foot);
    if (std::abs(r2) <= 32.0 * kEps * std::max(1.0, norm(base)))
        r2 = 0.0;
    if (r2 < 0.0)
        return std::nullopt;
    double radius = std::sqrt(r2);
    if (radius < tangency_tol)
        radius = 0.0;
    return DiscChart{line, c, radius};
}

Tangency is_tangent(const ComplexLine& line, double tangency_tol)
{
    const auto chart = line_ball_intersection(line, tangency_tol);
    if (!chart || !chart->degenerate())
        return {};
    return {true, chart->at(chart->tau_center)};
}

NormalizedConfiguration normalize_configuration(const Configuration& cfg, double tangency_tol)
{
    const ComplexLine ab = ComplexLine::through(cfg.a, cfg.b);
    const Tangency tan = is_tangent(ab, tangency_tol);
    if (!tan.tangent)
        throw PreconditionError("normalize_configuration: the line through a and b is not tangent to the sphere");
    const C2Point p = *tan.point;

    // Unit complement of p; its phase makes the first row start with a positive real.
    C2Point q{-std::conj(p.z2), std::conj(p.z1)};
    const Complex lead = std::abs(q.z1) > 1e-12 ? q.z1 : q.z2;
    q = (std::abs(lead) / lead / norm(q)) * q;

    // Rows q*, p*: U z = (<z, q>, <z, p>), hence U p = (0, 1).
    Matrix2 u{{std::conj(q.z1), std::conj(q.z2), std::conj(p.z1), std::conj(p.z2)}};

    auto image = [&](const C2Point& x, const char* label) {
        C2Point y = u.apply(x);
        if (std::abs(y.z2 - 1.0) > 1e-8 * std::max(1.0, norm(x)))
            throw PreconditionError(std::string("normalize_configuration: ") + label + " is not on the tangent line");
        y.z2 = 1.0;
        if (std::abs(y.z1) < 1e-12)
            throw PreconditionError(std::string("normalize_configuration: ") + label + " coincides with the tangency point");
        return y;
    };

    NormalizedConfiguration out;
    out.unitary = u;
    out.config.a = image(cfg.a, "a");
    out.config.b = image(cfg.b, "b");
    if (cfg.c)
        out.config.c = u.apply(*cfg.c);
    out.config.tangency_point = C2Point{0.0, 1.0};
    out.t1 = out.config.a.z1;
    out.t2 = out.config.b.z1;
    return out;
}

GlobevnikReport globevnik_conditions(const Configuration& cfg, double tol)
{
    if (!cfg.c)
        throw PreconditionError("globevnik_conditions: the configuration has no third point c");
    const C2Point& a = cfg.a;
    const C2Point& b = cfg.b;
    const C2Point& c = *cfg.c;

    GlobevnikReport r;
    r.ab = hermitian_inner(a, b);
    r.ac = hermitian_inner(a, c);
    r.bc = hermitian_inner(b, c);
    r.ab_ne_1 = std::abs(r.ab - 1.0) > tol;
    r.ac_ne_1 = std::abs(r.ac - 1.0) > tol;
    r.bc_ne_1 = std::abs(r.bc - 1.0) > tol;
    r.verdict = r.ab_ne_1 && (r.ac_ne_1 || r.bc_ne_1);

    auto meets_open_ball = [](const C2Point& x, const C2Point& y) {
        try {
            const auto chart = line_ball_intersection(ComplexLine::through(x, y));
            return chart.has_value() && !chart->degenerate();
        } catch (const PreconditionError&) {
            return false;
        }
    };
    r.ac_line_meets_ball = meets_open_ball(a, c);
    r.bc_line_meets_ball = meets_open_ball(b, c);
    return r;
}

} // namespace disctest
