#pragma once

// Boundary functions on the sphere: a small registry of closed forms plus
// user callbacks, with the derived forms the pipeline needs (damping, rotation).

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "disctest/geometry.hpp"

namespace disctest {

/// exp(-1 / sqrt(1 - z2)) with the principal root; 0 at z2 = 1.
[[nodiscard]] Complex damping_g(Complex z2) noexcept;
[[nodiscard]] inline Complex damping_g(const C2Point& z) noexcept { return damping_g(z.z2); }

/// c * z1^p * z2^q
struct Monomial {
    Complex coeff{1.0};
    int p = 0;
    int q = 0;
};

class BoundaryFunction {
public:
    using Callback = std::function<Complex(const C2Point&)>;

    enum class Kind { zero, constant, holomorphic_polynomial, antiholomorphic_monomial, counterexample, callback };

    [[nodiscard]] static BoundaryFunction zero();
    [[nodiscard]] static BoundaryFunction constant(Complex c);
    [[nodiscard]] static BoundaryFunction holomorphic_polynomial(std::vector<Monomial> terms);
    /// conj(z1)^p conj(z2)^q
    [[nodiscard]] static BoundaryFunction antiholomorphic_monomial(int p, int q);
    /// ((conj z1 - conj t1)/(conj z2 - 1)) (z1 conj t2 + z2 - 1) g(z) prod_k (z1 conj s_k + z2 - 1); 0 at (0, 1).
    [[nodiscard]] static BoundaryFunction counterexample(Complex t1, Complex t2, std::vector<Complex> extra = {});
    /// `sup_hint` <= 0 means unknown (estimated by sampling).
    [[nodiscard]] static BoundaryFunction callback(std::string name, Callback fn, double sup_hint = 0.0);

    [[nodiscard]] Complex operator()(const C2Point& z) const { return fn_(z); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] bool identically_zero() const noexcept { return kind_ == Kind::zero; }

    /// g * f
    [[nodiscard]] BoundaryFunction damped() const;
    /// z -> f(M z)
    [[nodiscard]] BoundaryFunction composed_with(const Matrix2& m) const;

    /// Largest |f| over 10^4 deterministic sphere samples (cached).
    [[nodiscard]] double sup_estimate() const;
    /// Constant used in decay majorants: a closed-form bound when one is known,
    /// otherwise twice the sampled sup.
    [[nodiscard]] double sup_bound() const;

private:
    BoundaryFunction(Kind kind, std::string name, Callback fn, double closed_bound);

    Kind kind_;
    std::string name_;
    Callback fn_;
    double closed_bound_;  // <= 0 when unknown
    std::shared_ptr<double> sampled_sup_;
};

/// Deterministic, roughly uniform points on the unit sphere (Halton sequence in Hopf coordinates).
[[nodiscard]] std::vector<C2Point> sphere_samples(std::size_t count, std::size_t skip = 1);

/// Van der Corput radical inverse of `index` in `base`.
[[nodiscard]] double radical_inverse(std::size_t index, unsigned base) noexcept;

} // namespace disctest
