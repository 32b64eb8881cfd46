// Compiled with -mavx2 -mfma; only reached after the dispatcher has checked CPU support.

#include "disctest/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <vector>

namespace disctest::kernels::avx2 {

namespace {

inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (ar + i ai)(br + i bi)
inline void cmul(__m256d ar, __m256d ai, __m256d br, __m256d bi, __m256d& rr, __m256d& ri)
{
    rr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
    ri = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
}

// Wrapper so accumulators can live in a std::vector without dropping alignment attributes.
struct Lane {
    __m256d v;
};

} // namespace

void power_sums(SplitView x, SplitView w, std::span<Complex> out)
{
    const std::size_t count = out.size();
    std::vector<Lane> acc_re(count, Lane{_mm256_setzero_pd()});
    std::vector<Lane> acc_im(count, Lane{_mm256_setzero_pd()});
    const std::size_t blocked = x.size - x.size % 4;

    for (std::size_t j = 0; j < blocked; j += 4) {
        const __m256d xr = _mm256_loadu_pd(x.re + j);
        const __m256d xi = _mm256_loadu_pd(x.im + j);
        __m256d cr = _mm256_loadu_pd(w.re + j);
        __m256d ci = _mm256_loadu_pd(w.im + j);
        for (std::size_t p = 0; p < count; ++p) {
            acc_re[p].v = _mm256_add_pd(acc_re[p].v, cr);
            acc_im[p].v = _mm256_add_pd(acc_im[p].v, ci);
            __m256d nr;
            __m256d ni;
            cmul(cr, ci, xr, xi, nr, ni);
            cr = nr;
            ci = ni;
        }
    }

    for (std::size_t p = 0; p < count; ++p)
        out[p] = {hsum(acc_re[p].v), hsum(acc_im[p].v)};

    if (blocked < x.size) {
        std::vector<Complex> tail(count);
        scalar::power_sums({x.re + blocked, x.im + blocked, x.size - blocked},
                           {w.re + blocked, w.im + blocked, w.size - blocked}, tail);
        for (std::size_t p = 0; p < count; ++p)
            out[p] += tail[p];
    }
}

Complex cauchy_sum(SplitView x, SplitView w, Complex zeta)
{
    const __m256d zr = _mm256_set1_pd(zeta.real());
    const __m256d zi = _mm256_set1_pd(zeta.imag());
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    const std::size_t blocked = x.size - x.size % 4;

    for (std::size_t j = 0; j < blocked; j += 4) {
        const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(x.re + j), zr);
        const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(x.im + j), zi);
        const __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
        const __m256d wr = _mm256_loadu_pd(w.re + j);
        const __m256d wi = _mm256_loadu_pd(w.im + j);
        sr = _mm256_fmadd_pd(_mm256_fmadd_pd(wr, dr, _mm256_mul_pd(wi, di)), inv, sr);
        si = _mm256_fmadd_pd(_mm256_fmsub_pd(wi, dr, _mm256_mul_pd(wr, di)), inv, si);
    }

    Complex total{hsum(sr), hsum(si)};
    if (blocked < x.size)
        total += scalar::cauchy_sum({x.re + blocked, x.im + blocked, x.size - blocked},
                                    {w.re + blocked, w.im + blocked, w.size - blocked}, zeta);
    return total;
}

void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im)
{
    const std::size_t n = coeffs.size;
    const std::size_t blocked = points.size - points.size % 4;

    for (std::size_t k = 0; k < blocked; k += 4) {
        const __m256d sr = _mm256_loadu_pd(points.re + k);
        const __m256d si = _mm256_loadu_pd(points.im + k);
        __m256d ar = _mm256_setzero_pd();
        __m256d ai = _mm256_setzero_pd();
        for (std::size_t j = n; j-- > 0;) {
            __m256d nr;
            __m256d ni;
            cmul(ar, ai, sr, si, nr, ni);
            ar = _mm256_add_pd(nr, _mm256_set1_pd(coeffs.re[j]));
            ai = _mm256_add_pd(ni, _mm256_set1_pd(coeffs.im[j]));
        }
        _mm256_storeu_pd(out_re + k, ar);
        _mm256_storeu_pd(out_im + k, ai);
    }

    if (blocked < points.size)
        scalar::horner(coeffs, {points.re + blocked, points.im + blocked, points.size - blocked}, out_re + blocked,
                       out_im + blocked);
}

} // namespace disctest::kernels::avx2

#else

namespace disctest::kernels::avx2 {

void power_sums(SplitView x, SplitView w, std::span<Complex> out) { scalar::power_sums(x, w, out); }
Complex cauchy_sum(SplitView x, SplitView w, Complex zeta) { return scalar::cauchy_sum(x, w, zeta); }
void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im)
{
    scalar::horner(coeffs, points, out_re, out_im);
}

} // namespace disctest::kernels::avx2

#endif
