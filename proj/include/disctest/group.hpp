#pragma once

// Ball automorphisms, the one-parameter group fixing the line z2 = 1 pointwise,
// the damped orbit average, the quotient coordinate and its induced function.

#include <optional>
#include <span>
#include <vector>

#include "disctest/functions.hpp"
#include "disctest/geometry.hpp"
#include "disctest/numerics.hpp"

namespace disctest {

/// z -> U (a - P_a z - s_a Q_a z) / (1 - <z, a>)
class BallAutomorphism {
public:
    /// Requires |a| < 1 and U unitary to 1e-12.
    BallAutomorphism(const C2Point& a, const Matrix2& u);

    /// Throws PoleError on the hyperplane <z, a> = 1.
    [[nodiscard]] C2Point apply(const C2Point& z) const;

    [[nodiscard]] const C2Point& a() const noexcept { return a_; }
    [[nodiscard]] const Matrix2& unitary() const noexcept { return u_; }

private:
    C2Point a_;
    Matrix2 u_;
};

/// nu(y) = iy / (1 + iy), a point of the circle |a|^2 = Re a.
[[nodiscard]] Complex nu(double y) noexcept;

/// (b - conj a) / (conj(a) b - 2 conj(a) + 1): parameter of phi_b o phi_a.
[[nodiscard]] Complex composition_parameter(Complex a, Complex b);

/// The group element Phi(y) = phi_{nu(y)}.
struct GElement {
    double y = 0.0;

    [[nodiscard]] Complex a2() const noexcept { return nu(y); }
    /// (z1 / d, (iy(z2 - 1) + z2) / d) with d = iy(z2 - 1) + 1; throws PoleError when d = 0.
    [[nodiscard]] C2Point apply(const C2Point& z) const;
    /// The same map in the general form: a = (0, nu(y)) and U = diag(U11, U22).
    [[nodiscard]] BallAutomorphism as_automorphism() const;
};

[[nodiscard]] inline C2Point g_element_apply(double y, const C2Point& z) { return GElement{y}.apply(z); }
[[nodiscard]] inline GElement g_compose(double y1, double y2) noexcept { return {y1 + y2}; }

/// Images of z under Phi(y) for each sample; rejects the fixed point (0, 1).
[[nodiscard]] std::vector<C2Point> orbit_points(const C2Point& z, std::span<const double> ys);

/// Re(1 / (1 - z2)) = (1 - x2) / |1 - z2|^2; rejects z2 = 1.
[[nodiscard]] double alpha(Complex z2);

/// zeta = z1 / (z2 - 1), absent on the line z2 = 1 (the point at infinity).
struct QuotientPoint {
    std::optional<Complex> zeta;

    [[nodiscard]] bool infinite() const noexcept { return !zeta.has_value(); }
};

[[nodiscard]] QuotientPoint quotient_coordinate(const C2Point& z) noexcept;

/// Sphere point with slope zeta and real, minimal z2: ((-2 zeta)/(1 + |zeta|^2), (|zeta|^2 - 1)/(|zeta|^2 + 1)).
[[nodiscard]] C2Point canonical_representative(Complex zeta) noexcept;

struct AveragingConfig {
    TailBudget budget{1e-12, 0.0};
    std::size_t circle_nodes = 512;
    AdaptiveOptions quadrature{1e-12, 1e-10, 4000};
};

/// Integral over y of (g f)(Phi(y) z), truncated with a certified tail.
/// Throws PreconditionError at (0, 1) and QuadratureError when the orbit
/// parametrisation is too close to (0, 1) to resolve.
[[nodiscard]] IntegralResult averaged_function(const BoundaryFunction& f, const C2Point& z,
                                               const AveragingConfig& cfg = {});

/// h(zeta): the average at the canonical representative.
[[nodiscard]] IntegralResult induced_h(const BoundaryFunction& f, Complex zeta, const AveragingConfig& cfg = {});

/// Bound on |h| for sup|f| <= c: 16 c exp(-sqrt(alpha) / 2).
[[nodiscard]] double decay_bound(double alpha_value, double sup_f) noexcept;

/// decay_bound at the canonical representative of zeta (alpha = (1 + |zeta|^2) / 2).
[[nodiscard]] double h_majorant(Complex zeta, double sup_f) noexcept;

/// Circle in the zeta-plane; `infinite` marks the radius-infinity case (lines with v2 = 0).
struct PlaneCircle {
    Complex center;
    double radius = 0.0;
    bool infinite = false;
};

/// Image under the quotient coordinate of the boundary of the disc cut by the line
/// (t, 1) + tau v: centre -1/conj(t). Throws when t = 0 or the line misses the ball.
[[nodiscard]] PlaneCircle circle_image_of_line(Complex t, const C2Point& v);

} // namespace disctest
