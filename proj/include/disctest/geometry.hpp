#pragma once

// Complex-linear geometry of C^2 relative to the unit ball: lines, their
// intersection discs, tangency and the normalisation of a tangent pair.

#include <array>
#include <optional>

#include "disctest/types.hpp"

namespace disctest {

/// Lines whose intersection circle has radius below this are tangent.
inline constexpr double kTangencyTolerance = 1e-8;

/// Directions shorter than this cannot be normalised.
inline constexpr double kMinDirectionNorm = 1e-14;

/// 2x2 complex matrix, row-major.
struct Matrix2 {
    std::array<Complex, 4> m{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}};

    [[nodiscard]] static Matrix2 identity() noexcept { return {}; }
    [[nodiscard]] static Matrix2 diagonal(Complex d1, Complex d2) noexcept { return {{d1, Complex{}, Complex{}, d2}}; }

    [[nodiscard]] Complex operator()(int row, int col) const noexcept { return m[static_cast<std::size_t>(2 * row + col)]; }
    [[nodiscard]] C2Point apply(const C2Point& p) const noexcept
    {
        return {m[0] * p.z1 + m[1] * p.z2, m[2] * p.z1 + m[3] * p.z2};
    }
    [[nodiscard]] Matrix2 adjoint() const noexcept
    {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) noexcept
    {
        return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                 a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
    /// max |(M M*)_{ij} - I_{ij}|
    [[nodiscard]] double unitarity_defect() const noexcept;
};

/// Affine complex line base + tau * direction with unit direction.
class ComplexLine {
public:
    /// Normalises `direction`; throws PreconditionError when it is (numerically) zero.
    ComplexLine(const C2Point& base, const C2Point& direction);

    /// Line through two distinct points, based at `a`.
    [[nodiscard]] static ComplexLine through(const C2Point& a, const C2Point& b);

    [[nodiscard]] const C2Point& base() const noexcept { return base_; }
    [[nodiscard]] const C2Point& direction() const noexcept { return direction_; }
    [[nodiscard]] C2Point at(Complex tau) const noexcept { return base_ + tau * direction_; }

private:
    C2Point base_;
    C2Point direction_;
};

/// The analytic disc cut out of the ball by a line: tau ranges over |tau - center| <= radius.
struct DiscChart {
    ComplexLine line;
    Complex tau_center;
    double tau_radius = 0.0;

    [[nodiscard]] C2Point at(Complex tau) const noexcept { return line.at(tau); }
    [[nodiscard]] Complex boundary_parameter(double theta) const noexcept
    {
        return tau_center + tau_radius * std::polar(1.0, theta);
    }
    [[nodiscard]] C2Point boundary_point(double theta) const noexcept { return at(boundary_parameter(theta)); }
    [[nodiscard]] bool degenerate() const noexcept { return tau_radius == 0.0; }
};

/// Solves ||base + tau v|| = 1. Absent when the line misses the closed ball;
/// radius snapped to 0 when below `tangency_tol`.
[[nodiscard]] std::optional<DiscChart> line_ball_intersection(const ComplexLine& line,
                                                              double tangency_tol = kTangencyTolerance);

struct Tangency {
    bool tangent = false;
    std::optional<C2Point> point;
};

[[nodiscard]] Tangency is_tangent(const ComplexLine& line, double tangency_tol = kTangencyTolerance);

/// Points a, b (and optionally c) outside the ball, plus the tangency point of the a-b line.
struct Configuration {
    C2Point a;
    C2Point b;
    std::optional<C2Point> c;
    std::optional<C2Point> tangency_point;
};

struct NormalizedConfiguration {
    Configuration config;  // a = (t1, 1), b = (t2, 1), tangency point (0, 1)
    Matrix2 unitary;       // maps original coordinates to normalised ones
    Complex t1;
    Complex t2;
};

/// Rotates the configuration so the a-b line becomes z2 = 1 and touches the sphere at (0, 1).
[[nodiscard]] NormalizedConfiguration normalize_configuration(const Configuration& cfg,
                                                              double tangency_tol = kTangencyTolerance);

struct GlobevnikReport {
    Complex ab;
    Complex ac;
    Complex bc;
    bool ab_ne_1 = false;
    bool ac_ne_1 = false;
    bool bc_ne_1 = false;
    bool verdict = false;             // ab_ne_1 && (ac_ne_1 || bc_ne_1)
    bool ac_line_meets_ball = false;  // open ball
    bool bc_line_meets_ball = false;
};

/// Requires cfg.c; throws PreconditionError otherwise.
[[nodiscard]] GlobevnikReport globevnik_conditions(const Configuration& cfg, double tol = 1e-12);

} // namespace disctest
