#pragma once

// Data-parallel reductions behind the contour quadratures. Every kernel has a
// scalar reference and, on x86-64, an AVX2/FMA variant; the variant is chosen
// once at first use (CPU detection, overridable with DISCTEST_ISA=scalar|avx2).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "disctest/types.hpp"

namespace disctest::kernels {

/// Non-owning structure-of-arrays view of complex numbers.
struct SplitView {
    const double* re = nullptr;
    const double* im = nullptr;
    std::size_t size = 0;
};

/// Owning structure-of-arrays complex vector.
class SplitVector {
public:
    SplitVector() = default;
    explicit SplitVector(std::size_t n) : re_(n), im_(n) {}

    void resize(std::size_t n)
    {
        re_.resize(n);
        im_.resize(n);
    }
    void set(std::size_t i, Complex v) noexcept
    {
        re_[i] = v.real();
        im_[i] = v.imag();
    }
    [[nodiscard]] Complex get(std::size_t i) const noexcept { return {re_[i], im_[i]}; }
    [[nodiscard]] std::size_t size() const noexcept { return re_.size(); }
    [[nodiscard]] SplitView view() const noexcept { return {re_.data(), im_.data(), re_.size()}; }
    [[nodiscard]] double* re() noexcept { return re_.data(); }
    [[nodiscard]] double* im() noexcept { return im_.data(); }

private:
    std::vector<double> re_;
    std::vector<double> im_;
};

enum class Isa { scalar, avx2 };

[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;
[[nodiscard]] bool isa_available(Isa isa) noexcept;
[[nodiscard]] Isa active_isa() noexcept;
/// Selects the kernel set for subsequent calls; throws PreconditionError when unavailable.
void force_isa(Isa isa);

/// out[p] = sum_j x_j^p w_j for p = 0 .. out.size()-1.
void power_sums(SplitView x, SplitView w, std::span<Complex> out);

/// sum_j w_j / (x_j - zeta)
[[nodiscard]] Complex cauchy_sum(SplitView x, SplitView w, Complex zeta);

/// out_k = sum_j coeffs_j s_k^j (Horner), one value per point.
void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im);

// Direct access to each implementation, used by the equivalence tests.
namespace scalar {
void power_sums(SplitView x, SplitView w, std::span<Complex> out);
Complex cauchy_sum(SplitView x, SplitView w, Complex zeta);
void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im);
} // namespace scalar

namespace avx2 {
void power_sums(SplitView x, SplitView w, std::span<Complex> out);
Complex cauchy_sum(SplitView x, SplitView w, Complex zeta);
void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im);
} // namespace avx2

} // namespace disctest::kernels
