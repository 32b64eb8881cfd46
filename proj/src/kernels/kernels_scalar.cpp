#include "disctest/kernels.hpp"

#include <algorithm>

namespace disctest::kernels::scalar {

void power_sums(SplitView x, SplitView w, std::span<Complex> out)
{
    const std::size_t count = out.size();
    std::vector<double> acc_re(count, 0.0);
    std::vector<double> acc_im(count, 0.0);
    for (std::size_t j = 0; j < x.size; ++j) {
        const double xr = x.re[j];
        const double xi = x.im[j];
        double cr = w.re[j];
        double ci = w.im[j];
        for (std::size_t p = 0; p < count; ++p) {
            acc_re[p] += cr;
            acc_im[p] += ci;
            const double nr = cr * xr - ci * xi;
            ci = cr * xi + ci * xr;
            cr = nr;
        }
    }
    for (std::size_t p = 0; p < count; ++p)
        out[p] = {acc_re[p], acc_im[p]};
}

Complex cauchy_sum(SplitView x, SplitView w, Complex zeta)
{
    double sr = 0.0;
    double si = 0.0;
    for (std::size_t j = 0; j < x.size; ++j) {
        const double dr = x.re[j] - zeta.real();
        const double di = x.im[j] - zeta.imag();
        const double inv = 1.0 / (dr * dr + di * di);
        // w * conj(d) / |d|^2
        sr += (w.re[j] * dr + w.im[j] * di) * inv;
        si += (w.im[j] * dr - w.re[j] * di) * inv;
    }
    return {sr, si};
}

void horner(SplitView coeffs, SplitView points, double* out_re, double* out_im)
{
    const std::size_t n = coeffs.size;
    for (std::size_t k = 0; k < points.size; ++k) {
        const double sr = points.re[k];
        const double si = points.im[k];
        double ar = 0.0;
        double ai = 0.0;
        for (std::size_t j = n; j-- > 0;) {
            const double nr = ar * sr - ai * si + coeffs.re[j];
            ai = ar * si + ai * sr + coeffs.im[j];
            ar = nr;
        }
        out_re[k] = ar;
        out_im[k] = ai;
    }
}

} // namespace disctest::kernels::scalar
