#include "doctest.h"

#include <random>

#include "disctest/kernels.hpp"

using namespace disctest;
using namespace disctest::kernels;

namespace {

SplitVector random_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    SplitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        v.set(i, {u(rng), u(rng)});
    return v;
}

SplitVector unit_circle(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    SplitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        v.set(i, std::polar(1.0, u(rng)));
    return v;
}

// Sizes chosen to exercise the 4-wide blocks and every remainder length.
constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 16, 31, 512, 1027};

} // namespace

TEST_CASE("dispatcher reports a usable instruction set")
{
    CHECK(isa_available(Isa::scalar));
    CHECK(isa_available(active_isa()));
    CHECK(isa_name(Isa::scalar) == "scalar");
    CHECK(isa_name(Isa::avx2) == "avx2");

    const Isa before = active_isa();
    force_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    force_isa(before);
    if (!isa_available(Isa::avx2))
        CHECK_THROWS_AS(force_isa(Isa::avx2), PreconditionError);
}

TEST_CASE("power sums: vector variant matches scalar reference")
{
    std::mt19937_64 rng(3);
    for (std::size_t n : kSizes) {
        const SplitVector x = unit_circle(rng, n);
        const SplitVector w = random_vector(rng, n);
        std::vector<Complex> ref(25);
        std::vector<Complex> vec(25);
        scalar::power_sums(x.view(), w.view(), ref);
        avx2::power_sums(x.view(), w.view(), vec);
        double mass = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            mass += std::abs(w.get(j));
        for (std::size_t p = 0; p < ref.size(); ++p)
            CHECK(std::abs(ref[p] - vec[p]) <= 1e-14 * std::max(1.0, mass));
    }
}

TEST_CASE("power sums agree with std::complex arithmetic")
{
    std::mt19937_64 rng(5);
    const SplitVector x = random_vector(rng, 37, 1.2);
    const SplitVector w = random_vector(rng, 37);
    std::vector<Complex> out(9);
    power_sums(x.view(), w.view(), out);
    for (int p = 0; p < 9; ++p) {
        Complex expect{};
        for (std::size_t j = 0; j < 37; ++j)
            expect += std::pow(x.get(j), p) * w.get(j);
        CHECK(std::abs(out[static_cast<std::size_t>(p)] - expect) < 1e-12);
    }
}

TEST_CASE("cauchy sums: vector variant matches scalar reference")
{
    std::mt19937_64 rng(7);
    for (std::size_t n : kSizes) {
        const SplitVector x = unit_circle(rng, n);
        const SplitVector w = random_vector(rng, n);
        for (Complex zeta : {Complex{0.0}, Complex{0.3, -0.2}, Complex{3.0, 1.0}}) {
            const Complex ref = scalar::cauchy_sum(x.view(), w.view(), zeta);
            const Complex vec = avx2::cauchy_sum(x.view(), w.view(), zeta);
            CHECK(std::abs(ref - vec) <= 1e-13 * std::max(1.0, static_cast<double>(n)));
        }
    }
}

TEST_CASE("horner: vector variant matches scalar reference and std::complex")
{
    std::mt19937_64 rng(9);
    for (std::size_t n : kSizes) {
        const SplitVector coeffs = random_vector(rng, 20);
        const SplitVector pts = random_vector(rng, n, 0.9);
        SplitVector ref(n);
        SplitVector vec(n);
        scalar::horner(coeffs.view(), pts.view(), ref.re(), ref.im());
        avx2::horner(coeffs.view(), pts.view(), vec.re(), vec.im());
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(std::abs(ref.get(k) - vec.get(k)) < 1e-13);
            Complex direct{};
            for (std::size_t j = 20; j-- > 0;)
                direct = direct * pts.get(k) + coeffs.get(j);
            CHECK(std::abs(direct - ref.get(k)) < 1e-13);
        }
    }
}
