#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace disctest {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a map is evaluated on its polar set.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a quadrature cannot meet its budget.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of C^2.
struct C2Point {
    Complex z1{};
    Complex z2{};

    friend C2Point operator+(const C2Point& a, const C2Point& b) { return {a.z1 + b.z1, a.z2 + b.z2}; }
    friend C2Point operator-(const C2Point& a, const C2Point& b) { return {a.z1 - b.z1, a.z2 - b.z2}; }
    friend C2Point operator*(Complex s, const C2Point& p) { return {s * p.z1, s * p.z2}; }
    friend bool operator==(const C2Point&, const C2Point&) = default;

    [[nodiscard]] bool finite() const noexcept
    {
        return std::isfinite(z1.real()) && std::isfinite(z1.imag()) && std::isfinite(z2.real()) &&
               std::isfinite(z2.imag());
    }
};

/// <u, w> = u1 conj(w1) + u2 conj(w2).
[[nodiscard]] inline Complex hermitian_inner(const C2Point& u, const C2Point& w) noexcept
{
    return u.z1 * std::conj(w.z1) + u.z2 * std::conj(w.z2);
}

[[nodiscard]] inline double norm2(const C2Point& p) noexcept { return std::norm(p.z1) + std::norm(p.z2); }
[[nodiscard]] inline double norm(const C2Point& p) noexcept { return std::sqrt(norm2(p)); }
[[nodiscard]] inline double distance(const C2Point& a, const C2Point& b) noexcept { return norm(a - b); }

} // namespace disctest
