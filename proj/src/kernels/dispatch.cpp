#include <atomic>
#include <cstdlib>
#include <string_view>

#include "disctest/kernels.hpp"

namespace disctest::kernels {

namespace {

bool cpu_has_avx2() noexcept
{
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() noexcept
{
    if (const char* env = std::getenv("DISCTEST_ISA")) {
        const std::string_view want(env);
        if (want == "scalar")
            return Isa::scalar;
        if (want == "avx2" && cpu_has_avx2())
            return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa)
{
    if (!isa_available(isa))
        throw PreconditionError("force_isa: instruction set not supported by this CPU");
    current().store(isa, std::memory_order_relaxed);
}

void power_sums(SplitView x, SplitView w, std::span<Complex> out)
{
    if (active_isa() == Isa::avx2)
        avx2::power_sums(x, w, out);
    else
        scalar::power_sums(x, w, out);
}

Complex cauchy_sum(SplitView x, SplitView w, Complex zeta)
{
    return active_isa() == Isa::avx2 ? avx2::cauchy_sum(x, w, zeta) : scalar::cauchy_sum(x, w, zeta);
}

void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im)
{
    if (active_isa() == Isa::avx2)
        avx2::horner(coeffs, points, out_re, out_im);
    else
        scalar::horner(coeffs, points, out_re, out_im);
}

} // namespace disctest::kernels
