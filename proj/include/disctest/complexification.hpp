#pragma once

// Circles complexified as quadrics (zeta - c)(eta - conj c) = R^2, the Levi-flat
// sets M_c they sweep out, intersections of two families, and the Cauchy
// transform over the half-lines E^zeta = E^zeta_0 u E^zeta_1.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "disctest/functions.hpp"
#include "disctest/group.hpp"
#include "disctest/numerics.hpp"

namespace disctest {

using PlaneFunction = std::function<Complex(Complex)>;

/// A point (zeta, eta) of C^2 in the complexified coordinates.
struct QuadricPoint {
    Complex zeta;
    Complex eta;
};

/// The chart zeta -> (zeta, conj(c) + R^2 / (zeta - c)), 0 < |zeta - c| <= R.
struct QuadricDisc {
    Complex c;
    double radius = 1.0;

    /// Throws PreconditionError outside the chart domain (relative slack 1e-12 on the outer bound).
    [[nodiscard]] Complex eta(Complex zeta) const;
    [[nodiscard]] QuadricPoint at(Complex zeta) const { return {zeta, eta(zeta)}; }
    /// |(zeta - c)(eta - conj c) - R^2|
    [[nodiscard]] double residual(const QuadricPoint& p) const noexcept;
};

/// M_c = union over R >= 0 of the closed quadric discs centred at c.
struct LeviSet {
    Complex c;

    /// g_c = (zeta - c)(eta - conj c)
    [[nodiscard]] Complex g(const QuadricPoint& p) const noexcept { return (p.zeta - c) * (p.eta - std::conj(c)); }
    /// r_c = Im g_c, the local defining function.
    [[nodiscard]] double r(const QuadricPoint& p) const noexcept { return g(p).imag(); }
    [[nodiscard]] bool contains(const QuadricPoint& p, double tol = 1e-12) const noexcept;
};

/// g_c real and |zeta - c|^2 <= Re g_c, both up to tol * max(1, |zeta - c|^2, |g_c|).
[[nodiscard]] bool mc_membership(Complex c, const QuadricPoint& p, double tol = 1e-12) noexcept;

struct QuadricIntersection {
    std::vector<QuadricPoint> points;  // at most two, inside both chart bounds
    bool double_root = false;          // the quadratic in zeta has a (numerically) repeated root
    std::size_t candidate_roots = 0;   // roots before the chart-bound filter
};

/// Intersection of the quadric discs (c1, R1) and (c2, R2). Rejects c1 = c2.
[[nodiscard]] QuadricIntersection quadric_intersection(Complex c1, double r1, Complex c2, double r2);

/// T = {zeta <= 0, eta <= zeta} u {zeta >= 1, eta >= zeta} in R^2.
[[nodiscard]] bool region_T_membership(double zeta, double eta) noexcept;

/// Which real intersections the discs (0, R1) and (1, R2) have.
enum class M0M1Regime {
    outer,     // R2 >= R1 + 1: zeta <= 0, eta <= zeta
    inner,     // R1 - 1 > R2: zeta >= 1, eta >= zeta
    disjoint,  // R1 + R2 < 1: no real solutions
    complex,   // real quadratic with complex roots: only diagonal points
};

[[nodiscard]] M0M1Regime m0_m1_regime(double r1, double r2) noexcept;

/// The real off-diagonal point of the quadrics (0, R1) and (1, R2), if any.
[[nodiscard]] std::optional<QuadricPoint> m0_m1_intersection_sample(double r1, double r2);

/// det [[eta, zeta], [eta - 1, zeta - 1]] = zeta - eta; zero exactly where M_0 and M_1 are tangent on the diagonal.
[[nodiscard]] inline Complex transversality_determinant(const QuadricPoint& p) noexcept { return p.zeta - p.eta; }

/// Affine change of the plane taking 0, 1 to c1, c2.
struct CenterNormalization {
    Complex c1{0.0};
    Complex c2{1.0};

    /// Rejects c1 = c2.
    void validate() const;
    [[nodiscard]] Complex to_plane(Complex xi) const noexcept { return c1 + (c2 - c1) * xi; }
    [[nodiscard]] Complex to_normalized(Complex z) const noexcept { return (z - c1) / (c2 - c1); }
    /// min |to_plane(xi)| over |xi - center| = radius
    [[nodiscard]] double min_modulus_on_circle(Complex center, double radius) const noexcept;
};

/// E^zeta: the rays w = c_j + lambda (conj(zeta) - c_j), lambda >= 1, with c_0 = 0, c_1 = 1.
/// Both start at conj(zeta). Oriented as the boundary of the region containing the real line,
/// which for Im zeta > 0 means E_0 runs outward and E_1 inward.
class EZetaContour {
public:
    /// Rejects zeta real (the rays coincide or degenerate).
    explicit EZetaContour(Complex zeta);

    [[nodiscard]] Complex zeta() const noexcept { return zeta_; }
    [[nodiscard]] Complex apex() const noexcept { return std::conj(zeta_); }
    [[nodiscard]] static double center(int ray) noexcept { return ray == 0 ? 0.0 : 1.0; }
    [[nodiscard]] Complex direction(int ray) const noexcept { return apex() - center(ray); }
    [[nodiscard]] Complex point(int ray, double lambda) const noexcept { return center(ray) + lambda * direction(ray); }
    /// Real lambda of a point on the ray (projection for points off it).
    [[nodiscard]] double parameter(int ray, Complex w) const noexcept;
    /// +1 when the ray is traversed with increasing lambda.
    [[nodiscard]] double orientation(int ray) const noexcept;
    [[nodiscard]] double distance(int ray, Complex w) const noexcept;
    [[nodiscard]] double distance(Complex w) const noexcept { return std::min(distance(0, w), distance(1, w)); }

private:
    Complex zeta_;
};

/// h~(zeta, w) on ray `ray` of E^zeta.
using ExtensionCallback = std::function<Complex(Complex zeta, Complex w, int ray)>;

/// Interior Cauchy integral of h over |tau - c| = sqrt(lambda) |zeta - c| at zeta (FFT projection);
/// h(zeta) itself at lambda = 1. Rejects lambda < 1 and zeta = c.
[[nodiscard]] Complex h_tilde_on_ray(const PlaneFunction& h, Complex c, double lambda, Complex zeta,
                                     std::size_t nodes = 512);

/// The extension of a plane function on both rays, through h_tilde_on_ray with centres 0 and 1.
[[nodiscard]] ExtensionCallback plane_extension(PlaneFunction h, std::size_t nodes = 512);

/// Pointwise bound on |h~| along each ray; may be +infinity where no bound is available
/// (the truncation point is only searched where it is finite).
struct RayMajorant {
    std::function<double(int ray, double lambda)> bound;
};

/// Bound for h~ built from an induced h with sup|f| <= sup_f, read in normalized coordinates:
/// sup over the circle of decay_bound, divided by 1 - 1/sqrt(lambda).
[[nodiscard]] RayMajorant induced_ray_majorant(Complex zeta, double sup_f, const CenterNormalization& n = {});

struct TransformOptions {
    TailBudget budget{1e-10, 0.0};                // split evenly between the rays
    AdaptiveOptions quadrature{1e-12, 1e-10, 2000};
    double delta = 1e-3;                          // minimum distance of eta to E^zeta, relative to max(1, |zeta|)
};

struct TransformResult {
    Complex value{};
    double error = 0.0;
    double truncation = 0.0;
    std::array<double, 2> lambda_max{1.0, 1.0};
    std::size_t evaluations = 0;
    bool converged = true;

    [[nodiscard]] double total_error() const noexcept { return error + truncation; }
};

/// F(zeta, eta) = (1 / 2 pi i) integral over oriented E^zeta of h~(zeta, w) / (w - eta) dw, each ray
/// truncated at a lambda_max certified by `decay`. Rejects real zeta and eta within delta of E^zeta
/// (which covers (zeta, eta) in M_0 u M_1).
[[nodiscard]] TransformResult cauchy_transform_F(const ExtensionCallback& h_ext, Complex zeta, Complex eta,
                                                 const RayMajorant& decay, const TransformOptions& opts = {});

/// The plane function xi -> h(to_plane(xi)) for the h induced by f.
[[nodiscard]] PlaneFunction normalized_induced_h(const BoundaryFunction& f, const CenterNormalization& n,
                                                 const AveragingConfig& cfg = {});

} // namespace disctest
