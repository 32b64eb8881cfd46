#include "doctest.h"

#include <random>

#include "disctest/complexification.hpp"

using namespace disctest;

namespace {

Complex random_complex(std::mt19937_64& rng, double scale)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

double quadric_residual(Complex c, double r, const QuadricPoint& p)
{
    return QuadricDisc{c, r}.residual(p);
}

} // namespace

TEST_CASE("quadric discs and membership")
{
    CHECK(mc_membership(0.0, {1.0, 1.0}));
    CHECK(mc_membership(0.0, {1.0, 4.0}));
    CHECK_FALSE(mc_membership(0.0, {1.0, kI}));
    // real product but |zeta|^2 > zeta eta: outside every chart
    CHECK_FALSE(mc_membership(0.0, {2.0, 1.0}));

    const QuadricDisc d{Complex{0.5, -1.0}, 2.0};
    CHECK_THROWS_AS((void)d.eta(d.c), PreconditionError);
    CHECK_THROWS_AS((void)d.eta(d.c + 2.5), PreconditionError);
    const Complex on_circle = d.c + std::polar(2.0, 0.7);
    CHECK(std::abs(d.eta(on_circle) - std::conj(on_circle)) < 1e-15);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int accepted = 0;
    int rejected = 0;
    for (int i = 0; i < 1000; ++i) {
        const QuadricDisc q{random_complex(rng, 3.0), 0.1 + 3.0 * u(rng)};
        const Complex zeta = q.c + std::polar(q.radius * (0.05 + 0.95 * u(rng)), kTwoPi * u(rng));
        const QuadricPoint p = q.at(zeta);
        CHECK(q.residual(p) < 1e-12 * std::max(1.0, q.radius * q.radius));
        accepted += LeviSet{q.c}.contains(p);

        const Complex kick = std::polar(1e-3 * (1.0 + u(rng)), kTwoPi * u(rng));
        const QuadricPoint off{p.zeta, p.eta + kick};
        // a kick parallel to the real direction of (eta - conj c) stays on a larger quadric
        const Complex ray = (p.zeta - q.c);
        if (std::abs((kick * ray).imag()) > 1e-6 * std::abs(ray))
            rejected += !mc_membership(q.c, off);
        else
            ++rejected;
    }
    CHECK(accepted == 1000);
    CHECK(rejected == 1000);
}

TEST_CASE("quadric intersection: worked cases")
{
    const auto tangent = quadric_intersection(0.0, 1.0, 1.0, 2.0);
    CHECK(tangent.double_root);
    REQUIRE(tangent.points.size() == 1);
    CHECK(std::abs(tangent.points[0].zeta + 1.0) < 1e-12);
    CHECK(std::abs(tangent.points[0].eta + 1.0) < 1e-12);

    const auto nested = quadric_intersection(0.0, 1.0, 1.0, 3.0);
    CHECK_FALSE(nested.double_root);
    CHECK(nested.candidate_roots == 2);
    REQUIRE(nested.points.size() == 1);
    CHECK(std::abs(nested.points[0].zeta - (-7.0 + std::sqrt(45.0)) / 2.0) < 1e-12);
    CHECK(std::abs(nested.points[0].eta - (-7.0 - std::sqrt(45.0)) / 2.0) < 1e-12);
    CHECK(std::abs(nested.points[0].zeta * nested.points[0].eta - 1.0) < 1e-12);

    // plane circles |z| = 1 and |z - 1| = 1 cross at 1/2 +- i sqrt(3)/2: the solutions sit on the diagonal
    const auto crossing = quadric_intersection(0.0, 1.0, 1.0, 1.0);
    REQUIRE(crossing.points.size() == 2);
    for (const auto& p : crossing.points) {
        CHECK(std::abs(p.zeta.real() - 0.5) < 1e-14);
        CHECK(std::abs(std::abs(p.zeta.imag()) - std::sqrt(3.0) / 2.0) < 1e-14);
        CHECK(std::abs(p.eta - std::conj(p.zeta)) < 1e-14);
    }

    CHECK_THROWS_AS((void)quadric_intersection(0.5, 1.0, 0.5, 2.0), PreconditionError);
    CHECK_THROWS_AS((void)quadric_intersection(0.0, 0.0, 1.0, 2.0), PreconditionError);
}

TEST_CASE("quadric intersection: random configurations")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 600; ++i) {
        const Complex c1 = random_complex(rng, 2.0);
        const Complex c2 = random_complex(rng, 2.0);
        const double r1 = 0.05 + 3.0 * u(rng);
        const double r2 = 0.05 + 3.0 * u(rng);
        const auto x = quadric_intersection(c1, r1, c2, r2);
        CHECK(x.points.size() <= 2);
        for (const auto& p : x.points) {
            CHECK(quadric_residual(c1, r1, p) < 1e-11);
            CHECK(quadric_residual(c2, r2, p) < 1e-11);
            CHECK(std::abs(p.zeta - c1) <= r1 * (1.0 + 1e-11));
            CHECK(std::abs(p.zeta - c2) <= r2 * (1.0 + 1e-11));
            CHECK(mc_membership(c1, p, 1e-10));
            CHECK(mc_membership(c2, p, 1e-10));
        }

        // two crossing plane circles: solutions are exactly the crossing points on the diagonal
        const double d = std::abs(c1 - c2);
        if (d > 1e-3 && d < r1 + r2 - 1e-3 && d > std::abs(r1 - r2) + 1e-3) {
            REQUIRE(x.points.size() == 2);
            for (const auto& p : x.points) {
                CHECK(std::abs(p.eta - std::conj(p.zeta)) < 1e-11);
                CHECK(std::abs(std::abs(p.zeta - c1) - r1) < 1e-11);
            }
        }
    }
}

TEST_CASE("M0 and M1: regimes, region T, transversality")
{
    CHECK(region_T_membership(-1.0, -2.0));
    CHECK(region_T_membership(2.0, 3.0));
    CHECK_FALSE(region_T_membership(0.5, 0.5));
    CHECK_FALSE(region_T_membership(-1.0, 0.0));
    CHECK_FALSE(region_T_membership(2.0, 1.5));

    CHECK(transversality_determinant({kI, -kI}) == Complex{0.0, 2.0});
    CHECK(transversality_determinant({0.7, 0.7}) == Complex{});
    CHECK(transversality_determinant({0.0, 1.0}) == Complex{-1.0});

    const auto s13 = m0_m1_intersection_sample(1.0, 3.0);
    REQUIRE(s13);
    CHECK(std::abs(s13->zeta - (-7.0 + std::sqrt(45.0)) / 2.0) < 1e-12);
    CHECK(std::abs(s13->eta - (-7.0 - std::sqrt(45.0)) / 2.0) < 1e-12);
    CHECK_FALSE(m0_m1_intersection_sample(0.3, 0.3));
    const auto s31 = m0_m1_intersection_sample(3.0, 1.0);
    REQUIRE(s31);
    CHECK(s31->zeta.real() >= 1.0);
    CHECK(s31->zeta.real() < s31->eta.real());

    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int regime = 0; regime < 3; ++regime) {
        for (int i = 0; i < 200; ++i) {
            double r1 = 0.0;
            double r2 = 0.0;
            if (regime == 0) {
                r1 = 0.01 + 4.0 * u(rng);
                r2 = r1 + 1.0 + 4.0 * u(rng);
            } else if (regime == 1) {
                r2 = 0.01 + 4.0 * u(rng);
                r1 = r2 + 1.0 + 1e-9 + 4.0 * u(rng);
            } else {
                r1 = 0.01 + 0.48 * u(rng);
                r2 = 0.01 + 0.48 * u(rng);
            }
            const M0M1Regime expected = regime == 0 ? M0M1Regime::outer
                                        : regime == 1 ? M0M1Regime::inner
                                                      : M0M1Regime::disjoint;
            CHECK(m0_m1_regime(r1, r2) == expected);
            const auto s = m0_m1_intersection_sample(r1, r2);
            if (regime == 2) {
                CHECK_FALSE(s);
                continue;
            }
            REQUIRE(s);
            const double z = s->zeta.real();
            const double e = s->eta.real();
            const double scale = std::max(1.0, r2 * r2);
            CHECK(std::abs(z * e - r1 * r1) < 1e-12 * scale);
            CHECK(std::abs((z - 1.0) * (e - 1.0) - r2 * r2) < 1e-11 * scale);
            CHECK(std::abs(z) <= r1 * (1.0 + 1e-12));
            CHECK(std::abs(z - 1.0) <= r2 * (1.0 + 1e-12));
            CHECK(region_T_membership(z, e));
            CHECK(mc_membership(0.0, *s, 1e-10));
            CHECK(mc_membership(1.0, *s, 1e-10));
            if (regime == 0)
                CHECK((z <= 0.0 && e <= z));
            else
                CHECK((z >= 1.0 && e >= z));

            // the general solver finds the same point
            const auto x = quadric_intersection(0.0, r1, 1.0, r2);
            bool found = false;
            for (const auto& p : x.points)
                found = found || (std::abs(p.zeta - s->zeta) < 1e-9 * scale && std::abs(p.eta - s->eta) < 1e-9 * scale);
            CHECK(found);
        }
    }
}

TEST_CASE("center normalization")
{
    const CenterNormalization n{-1.0, 1.0};
    CHECK(n.to_plane(0.0) == Complex{-1.0});
    CHECK(n.to_plane(1.0) == Complex{1.0});
    CHECK(std::abs(n.to_normalized(n.to_plane(Complex{0.3, 2.0})) - Complex{0.3, 2.0}) < 1e-15);
    // circle |xi| = 2 maps to |z + 1| = 4, whose closest point to 0 has modulus 3
    CHECK(n.min_modulus_on_circle(0.0, 2.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(CenterNormalization({1.0, 1.0}).validate(), PreconditionError);
}

TEST_CASE("E^zeta contour")
{
    CHECK_THROWS_AS(EZetaContour(2.0), PreconditionError);
    const EZetaContour e(Complex{0.3, 0.8});
    CHECK(e.point(0, 1.0) == e.apex());
    CHECK(std::abs(e.point(1, 1.0) - e.apex()) < 1e-16);
    CHECK(e.orientation(0) == 1.0);
    CHECK(e.orientation(1) == -1.0);
    CHECK(EZetaContour(Complex{0.3, -0.8}).orientation(0) == -1.0);
    CHECK(e.parameter(0, e.point(0, 3.5)) == doctest::Approx(3.5));
    CHECK(e.distance(e.point(1, 7.0)) < 1e-14);
    CHECK(e.distance(0.0) == doctest::Approx(std::abs(e.apex())));

    // (zeta, w) on ray j is exactly a point of M_j
    for (double lambda : {1.0, 1.5, 10.0}) {
        CHECK(mc_membership(0.0, {e.zeta(), e.point(0, lambda)}));
        CHECK(mc_membership(1.0, {e.zeta(), e.point(1, lambda)}));
    }
}

TEST_CASE("extension on the rays")
{
    const Complex zeta{0.4, 1.1};
    for (Complex c : {Complex{0.0}, Complex{1.0}}) {
        const PlaneFunction shift = [c](Complex w) { return w - c; };
        const PlaneFunction reflect = [c](Complex w) { return std::conj(w - c); };
        // |w - c|^2 (w - c) equals rho^2 (w - c) on each circle, extending inside with the radius built in
        const PlaneFunction radial = [c](Complex w) { return std::norm(w - c) * (w - c); };
        for (double lambda : {1.0, 1.01, 2.0, 9.0}) {
            CHECK(std::abs(h_tilde_on_ray(shift, c, lambda, zeta) - (zeta - c)) < 1e-13);
            CHECK(std::abs(h_tilde_on_ray(radial, c, lambda, zeta) - lambda * std::norm(zeta - c) * (zeta - c)) <
                  1e-12 * lambda);
            // conj(w - c) = rho^2 / (w - c) has no holomorphic extension inside: the interior integral vanishes
            const Complex r = h_tilde_on_ray(reflect, c, lambda, zeta);
            if (lambda == 1.0)
                CHECK(r == std::conj(zeta - c));
            else
                CHECK(std::abs(r) < 1e-13);
        }
        CHECK_THROWS_AS((void)h_tilde_on_ray(shift, c, 0.9, zeta), PreconditionError);
        CHECK_THROWS_AS((void)h_tilde_on_ray(shift, c, 2.0, c), PreconditionError);
    }

    const PlaneFunction radial0 = [](Complex w) { return std::norm(w) * w; };
    const auto ext = plane_extension(radial0, 256);
    const EZetaContour e(zeta);
    CHECK(std::abs(ext(zeta, e.point(0, 4.0), 0) - h_tilde_on_ray(radial0, 0.0, 4.0, zeta, 256)) < 1e-15);
    CHECK(std::abs(ext(zeta, e.apex(), 0) - radial0(zeta)) < 1e-15);
}

namespace {

// 1 / (w - w0)^2 on both rays; |w - w0| >= lambda |v| - |c - w0|.
struct ResidueOracle {
    Complex w0;

    ExtensionCallback extension() const
    {
        return [w0 = w0](Complex, Complex w, int) { return 1.0 / ((w - w0) * (w - w0)); };
    }
    RayMajorant majorant(const EZetaContour& e) const
    {
        return {[e, w0 = w0](int ray, double lambda) {
            const double m = lambda * std::abs(e.direction(ray)) - std::abs(EZetaContour::center(ray) - w0);
            return m > 0.0 ? 1.0 / (m * m) : std::numeric_limits<double>::infinity();
        }};
    }
};

} // namespace

TEST_CASE("Cauchy transform: residue oracle fixes the orientation")
{
    TransformOptions opts;
    opts.budget.epsilon_tail = 1e-11;
    for (double sign : {1.0, -1.0}) {
        const Complex zeta{0.3, 0.8 * sign};
        const EZetaContour e(zeta);
        // 3 conj(zeta) - 1 = apex + conj(zeta) + (conj(zeta) - 1) lies inside the sector between the rays,
        // away from the region containing the real line
        const Complex in_sector = 3.0 * std::conj(zeta) - 1.0;
        const Complex outside{1.0, 2.0 * sign};
        const Complex eta_outside{0.0, 2.0 * sign};

        SUBCASE("pole in the sector, eta in the real-line region")
        {
            const ResidueOracle o{in_sector};
            const auto r = cauchy_transform_F(o.extension(), zeta, eta_outside, o.majorant(e), opts);
            const Complex expected = 1.0 / ((eta_outside - in_sector) * (eta_outside - in_sector));
            CHECK(std::abs(r.value - expected) < 1e-9);
            CHECK(r.truncation <= 1e-11 / kTwoPi);
            CHECK(r.converged);
        }
        SUBCASE("pole and eta in the real-line region cancel")
        {
            const ResidueOracle o{outside};
            const auto r = cauchy_transform_F(o.extension(), zeta, eta_outside, o.majorant(e), opts);
            CHECK(std::abs(r.value) < 1e-9);
        }
        SUBCASE("eta in the sector")
        {
            const ResidueOracle o{outside};
            const Complex eta_in = 3.0 * std::conj(zeta) - 1.0;
            const auto r = cauchy_transform_F(o.extension(), zeta, eta_in, o.majorant(e), opts);
            CHECK(std::abs(r.value + 1.0 / ((outside - eta_in) * (outside - eta_in))) < 1e-9);
        }
    }
}

TEST_CASE("Cauchy transform: preconditions and the zero function")
{
    const ExtensionCallback zero = [](Complex, Complex, int) { return Complex{}; };
    const RayMajorant none{[](int, double) { return 0.0; }};
    const auto r = cauchy_transform_F(zero, Complex{0.5, 0.5}, Complex{0.0, 3.0}, none);
    CHECK(r.value == Complex{});
    CHECK(r.truncation == 0.0);

    const Complex zeta{0.5, 0.5};
    const EZetaContour e(zeta);
    CHECK_THROWS_AS((void)cauchy_transform_F(zero, 2.0, 3.0, none), PreconditionError);
    CHECK_THROWS_AS((void)cauchy_transform_F(zero, zeta, e.point(0, 2.0), none), PreconditionError);
    CHECK_THROWS_AS((void)cauchy_transform_F(zero, zeta, e.point(1, 5.0) + 1e-6, none), PreconditionError);
    CHECK_THROWS_AS((void)cauchy_transform_F(zero, zeta, Complex{0.0, 3.0}, RayMajorant{}), PreconditionError);
}

TEST_CASE("Cauchy transform: overlapping half-lines cancel as zeta becomes real")
{
    // exp(-|w|) on both rays: not holomorphic, so only the overlap makes F small
    const ExtensionCallback h = [](Complex, Complex w, int) { return Complex{std::exp(-std::abs(w))}; };
    const Complex eta{0.5, 2.0};
    TransformOptions opts;
    opts.budget.epsilon_tail = 1e-12;
    double previous = 1.0;
    for (double eps : {1e-1, 1e-3, 1e-6, 1e-10}) {
        const Complex zeta{3.0, eps};
        const EZetaContour e(zeta);
        const RayMajorant m{[e](int ray, double lambda) {
            return std::exp(-(lambda * std::abs(e.direction(ray)) - EZetaContour::center(ray)));
        }};
        const double f = std::abs(cauchy_transform_F(h, zeta, eta, m, opts).value);
        CHECK(f < previous);
        previous = f;
    }
    CHECK(previous < 1e-8);

    // at finite distance from the real axis the transform does not vanish
    const Complex zeta{0.5, 1.0};
    const EZetaContour e(zeta);
    const RayMajorant m{[e](int ray, double lambda) {
        return std::exp(-(lambda * std::abs(e.direction(ray)) - EZetaContour::center(ray)));
    }};
    CHECK(std::abs(cauchy_transform_F(h, zeta, eta, m, opts).value) > 1e-3);
}

TEST_CASE("Cauchy transform of the induced counterexample function")
{
    const Complex t1{1.0};
    const Complex t2{-1.0};
    const auto f = BoundaryFunction::counterexample(t1, t2);
    // circle images of the two line families are centred at -1/conj(t_j)
    const CenterNormalization n{-1.0 / std::conj(t1), -1.0 / std::conj(t2)};
    const auto h = normalized_induced_h(f, n);
    const auto ext = plane_extension(h, 256);
    for (Complex zeta : {Complex{0.4, 0.9}, Complex{-1.2, -0.7}}) {
        const Complex eta{0.3, 2.5 * (zeta.imag() > 0 ? 1.0 : -1.0)};
        const auto r = cauchy_transform_F(ext, zeta, eta, induced_ray_majorant(zeta, f.sup_bound(), n));
        CHECK(std::abs(r.value) < 1e-6);
        CHECK(r.truncation <= 1e-10);
    }
}
