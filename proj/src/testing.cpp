#include "disctest/testing.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

namespace disctest {

namespace {

const C2Point kP{0.0, 1.0};

std::string describe(const char* what, std::size_t index, double value, int n = -1)
{
    std::ostringstream s;
    s << what << " #" << index << ": " << value;
    if (n >= 0)
        s << " at n = " << n;
    return s.str();
}

} // namespace

MomentReport moment_test(const CircleQuadrature& samples, const DiscChart& disc, const MomentOptions& opts)
{
    if (opts.n_max < 8)
        throw PreconditionError("moment_test: n_max must be at least 8");
    if (!(opts.threshold > 0.0))
        throw PreconditionError("moment_test: threshold must be positive");
    MomentReport r;
    r.disc = disc;
    r.threshold = opts.threshold;
    r.nodes = samples.nodes();
    r.moments = circle_moments(samples, opts.n_max);
    for (int n = 0; n <= opts.n_max; ++n) {
        const double a = std::abs(r.moments[static_cast<std::size_t>(n)]);
        if (a > r.max_abs || !std::isfinite(a)) {
            r.max_abs = std::isfinite(a) ? a : std::numeric_limits<double>::infinity();
            r.worst_n = n;
        }
    }
    r.pass = r.max_abs < opts.threshold;
    return r;
}

MomentReport moment_test(const BoundaryFunction& f, const DiscChart& disc, const MomentOptions& opts)
{
    if (disc.degenerate() || !(disc.tau_radius > 0.0))
        throw PreconditionError("moment_test: degenerate disc");
    const auto q = CircleQuadrature::sample(disc.tau_center, disc.tau_radius, opts.nodes,
                                            [&](Complex tau) { return f(disc.at(tau)); });
    return moment_test(q, disc, opts);
}

ProbeResult cr_violation_probe(const BoundaryFunction& f, const std::vector<DiscChart>& samples,
                               const MomentOptions& opts)
{
    if (samples.empty())
        throw PreconditionError("cr_violation_probe: no discs");
    ProbeResult out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        MomentReport r = moment_test(f, samples[i], opts);
        ++out.tested;
        out.failures += r.pass ? 0 : 1;
        if (i == 0 || r.max_abs > out.worst.max_abs) {
            out.worst = std::move(r);
            out.worst_index = i;
        }
    }
    return out;
}

C2Point halton_direction(std::size_t index, double min_v2)
{
    if (!(min_v2 >= 0.0) || !(min_v2 < 1.0))
        throw PreconditionError("halton_direction: min_v2 must lie in [0, 1)");
    const double psi_min = std::asin(min_v2);
    const double psi = psi_min + (0.5 * kPi - psi_min) * radical_inverse(index, 2);
    const double chi = kTwoPi * radical_inverse(index, 3);
    return {std::polar(std::cos(psi), chi), std::sin(psi)};
}

std::vector<DiscChart> line_family_through(const C2Point& q, std::size_t count, std::size_t offset, double min_radius)
{
    std::vector<DiscChart> out;
    out.reserve(count);
    for (std::size_t k = offset; out.size() < count; ++k) {
        if (k - offset > 1000 * (count + 1))
            throw PreconditionError("line_family_through: too few lines through the point meet the ball");
        const auto chart = line_ball_intersection(ComplexLine(q, halton_direction(k)));
        if (chart && chart->tau_radius >= min_radius)
            out.push_back(*chart);
    }
    return out;
}

std::vector<DiscChart> generic_discs(std::size_t count, std::span<const C2Point> avoid, std::size_t offset,
                                     double min_radius, double clearance)
{
    std::vector<DiscChart> out;
    out.reserve(count);
    for (std::size_t k = offset; out.size() < count; ++k) {
        if (k - offset > 1000 * (count + 1))
            throw PreconditionError("generic_discs: too few admissible discs");
        const double u = radical_inverse(k, 5);
        const double scale = 0.9 * radical_inverse(k, 13);
        const C2Point base{scale * std::polar(std::sqrt(u), kTwoPi * radical_inverse(k, 7)),
                           scale * std::polar(std::sqrt(1.0 - u), kTwoPi * radical_inverse(k, 11))};
        const ComplexLine line(base, halton_direction(k));
        bool clear = true;
        for (const C2Point& x : avoid) {
            const C2Point d = x - line.base();
            const C2Point perp = d - hermitian_inner(d, line.direction()) * line.direction();
            clear = clear && norm(perp) >= clearance;
        }
        if (!clear)
            continue;
        const auto chart = line_ball_intersection(line);
        if (chart && chart->tau_radius >= min_radius)
            out.push_back(*chart);
    }
    return out;
}

PointedDisc::PointedDisc(const C2Point& direction) : v(direction)
{
    if (std::abs(norm(v) - 1.0) > 1e-12)
        throw PreconditionError("PointedDisc: direction must be a unit vector");
    if (std::abs(v.z2) < 1e-14)
        throw PreconditionError("PointedDisc: lines with v2 = 0 are tangent at p");
}

PointedDisc PointedDisc::through(const C2Point& z)
{
    const C2Point d = z - kP;
    const double n = norm(d);
    if (n < 1e-12)
        throw PreconditionError("PointedDisc::through: z coincides with p");
    return PointedDisc(Complex{1.0 / n} * d);
}

C2Point PointedDisc::at(Complex sigma) const noexcept
{
    const Complex s = std::conj(v.z2) * (sigma - 1.0);
    return {s * v.z1, 1.0 + s * v.z2};
}

Complex PointedDisc::damping(Complex sigma) const noexcept
{
    const Complex w = gap(sigma);
    if (w == Complex{})
        return {};
    return std::exp(-1.0 / std::sqrt(w));
}

DiscChart PointedDisc::chart() const
{
    return {ComplexLine(kP, v), -std::conj(v.z2), std::abs(v.z2)};
}

std::vector<PointedDisc> discs_through_p(std::size_t count, std::size_t offset, double min_v2)
{
    std::vector<PointedDisc> out;
    out.reserve(count);
    for (std::size_t k = offset; out.size() < count; ++k)
        out.emplace_back(halton_direction(k, min_v2));
    return out;
}

std::vector<Complex> ray_points(double angle, int k_max)
{
    std::vector<Complex> out;
    for (int k = 1; k <= k_max; ++k)
        out.push_back(1.0 - std::ldexp(1.0, -k) * std::polar(1.0, angle));
    return out;
}

GrowthCertificate growth_probe(const std::vector<RaySamples>& rays, const GrowthOptions& opts)
{
    // Growth is read off the running maximum of log|f| along each ray: a decaying ray is flat.
    // For log|f| ~ C |w|^rho on samples with geometric |w|, the increments scale like |w|^rho,
    // so rho is the common slope of log(increment) against log|w| (one intercept per ray).
    GrowthCertificate cert;
    std::vector<std::vector<std::pair<double, double>>> fits;
    std::size_t usable_rays = 0;
    for (const auto& ray : rays) {
        if (ray.sigma.size() != ray.values.size())
            throw PreconditionError("growth_probe: sigma and values differ in length");
        std::vector<std::pair<double, double>> pts;  // (log|w|, running max of log|f|)
        double running = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ray.sigma.size(); ++i) {
            const double a = std::abs(ray.values[i]);
            if (!std::isfinite(a) || ray.sigma[i] == Complex{1.0})
                continue;
            cert.sup = std::max(cert.sup, a);
            const double w = std::abs((1.0 + ray.sigma[i]) / (1.0 - ray.sigma[i]));
            running = std::max(running, a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity());
            pts.emplace_back(std::log(w), running);
        }
        cert.samples += pts.size();
        if (pts.size() < 3)
            continue;
        ++usable_rays;
        std::vector<std::pair<double, double>> inc;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double d = pts[i + 1].second - pts[i].second;
            if (std::isfinite(d) && d > 1e-9 * std::max(1.0, std::abs(pts[i].second)))
                inc.emplace_back(0.5 * (pts[i].first + pts[i + 1].first), std::log(d));
        }
        if (inc.size() >= 2)
            fits.push_back(std::move(inc));
    }
    if (usable_rays == 0)
        throw PreconditionError("growth_probe: fewer than 3 usable samples on every ray");

    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& f : fits) {
        double mx = 0.0;
        double my = 0.0;
        for (const auto& [x, y] : f) {
            mx += x;
            my += y;
        }
        mx /= static_cast<double>(f.size());
        my /= static_cast<double>(f.size());
        for (const auto& [x, y] : f) {
            sxy += (x - mx) * (y - my);
            sxx += (x - mx) * (x - mx);
        }
    }
    double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    if (sxx > 0.0) {
        double ss = 0.0;
        std::size_t n = 0;
        for (const auto& f : fits) {
            double mx = 0.0;
            double my = 0.0;
            for (const auto& [x, y] : f) {
                mx += x;
                my += y;
            }
            mx /= static_cast<double>(f.size());
            my /= static_cast<double>(f.size());
            for (const auto& [x, y] : f) {
                const double r = (y - my) - slope * (x - mx);
                ss += r * r;
                ++n;
            }
        }
        cert.fit_error = std::sqrt(ss / static_cast<double>(n));
    }
    cert.exponent = std::max(0.0, slope);
    cert.bounded = cert.exponent <= opts.slack;
    cert.within_lemma = cert.exponent <= opts.lemma_exponent + opts.slack;
    return cert;
}

namespace {

MomentReport damped_moment_test(const BoundaryFunction& f, const PointedDisc& disc, const MomentOptions& opts)
{
    const DiscChart chart = disc.chart();
    // on the chart 1 - z2 = -tau v2 exactly
    const auto q = CircleQuadrature::sample(chart.tau_center, chart.tau_radius, opts.nodes, [&](Complex tau) {
        const Complex w = -tau * disc.v.z2;
        if (w == Complex{})
            return Complex{};
        return std::exp(-1.0 / std::sqrt(w)) * f(chart.at(tau));
    });
    return moment_test(q, chart, opts);
}

} // namespace

ReconstructionProbe reconstruct_on_disc(const BoundaryFunction& f, const PointedDisc& disc,
                                        const ReconstructionOptions& opts)
{
    ReconstructionProbe probe;
    probe.disc = disc;
    probe.gf_moments = damped_moment_test(f, disc, opts.moments);
    if (!probe.gf_moments.pass)
        throw PreconditionError("reconstruct_on_disc: g f does not pass the moment test on the disc");

    std::vector<Complex> fa(opts.nodes);
    const auto q = CircleQuadrature::sample(0.0, 1.0, opts.nodes, [&](Complex sigma) { return disc.damping(sigma) * f(disc.at(sigma)); });
    for (std::size_t k = 0; k < opts.nodes; ++k) {
        fa[k] = f(disc.at(q.node(k)));
        probe.sup_boundary_f = std::max(probe.sup_boundary_f, std::abs(fa[k]));
    }
    const BoundaryFourier extension(q);
    probe.noise = 8.0 * DBL_EPSILON * (extension.l1_norm() + q.sup()) + extension.negative_norm();
    const double floor = opts.noise_factor * probe.noise;

    // F / g where g is resolved; nullopt elsewhere
    const auto bold = [&](Complex sigma) -> std::optional<Complex> {
        const Complex g = disc.damping(sigma);
        if (!(std::abs(g) >= floor))
            return std::nullopt;
        return extension.analytic_part(sigma) / g;
    };

    for (std::size_t k = 0; k < opts.nodes; ++k) {
        const Complex sigma = q.node(k);
        if (std::abs(sigma - 1.0) < opts.away_from_one)
            continue;
        if (const auto b = bold(sigma))
            probe.boundary_mismatch = std::max(probe.boundary_mismatch, std::abs(*b - fa[k]));
        else
            ++probe.skipped;
    }

    const auto take = [&](Complex sigma) -> std::optional<Complex> {
        const auto b = bold(sigma);
        if (!b) {
            ++probe.skipped;
            return std::nullopt;
        }
        ++probe.interior_samples;
        probe.sup_bold_f = std::max(probe.sup_bold_f, std::abs(*b));
        return b;
    };
    for (std::size_t i = 1; i <= opts.interior_radii; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(opts.interior_radii + 1);
        for (std::size_t j = 0; j < opts.interior_angles; ++j)
            (void)take(std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(opts.interior_angles)));
    }
    for (double angle : opts.growth.angles) {
        RaySamples ray;
        ray.angle = angle;
        for (const Complex sigma : ray_points(angle, opts.growth.k_max)) {
            if (const auto b = take(sigma)) {
                ray.sigma.push_back(sigma);
                ray.values.push_back(*b);
            }
        }
        probe.rays.push_back(std::move(ray));
    }
    probe.growth = growth_probe(probe.rays, opts.growth);
    probe.passed = probe.sup_bold_f <= probe.sup_boundary_f + opts.sup_tolerance &&
                   probe.boundary_mismatch < opts.mismatch_tolerance && probe.growth.within_lemma;
    return probe;
}

ReconstructionProbe reconstruct_on_disc(const BoundaryFunction& f, const C2Point& z, const ReconstructionOptions& opts)
{
    return reconstruct_on_disc(f, PointedDisc::through(z), opts);
}

const char* outcome_name(PipelineOutcome o) noexcept
{
    switch (o) {
    case PipelineOutcome::pass:
        return "pass";
    case PipelineOutcome::hypothesis_not_met:
        return "hypothesis_not_met";
    case PipelineOutcome::theorem_failure:
        return "theorem_failure";
    }
    return "unknown";
}

std::vector<Complex> PipelineConfig::default_zeta_grid()
{
    std::vector<Complex> grid;
    for (int m = 1; m <= 5; ++m)
        for (int j = 0; j < 5; ++j)
            grid.push_back(std::polar(static_cast<double>(m), (j + 0.5) * kTwoPi / 5.0));
    return grid;
}

PipelineVerdict theorem1_pipeline(const BoundaryFunction& f, const Configuration& cfg, const PipelineConfig& run)
{
    PipelineVerdict v;
    v.normalized = normalize_configuration(cfg);
    const BoundaryFunction fn = f.composed_with(v.normalized.unitary.adjoint());
    const C2Point& a = v.normalized.config.a;
    const C2Point& b = v.normalized.config.b;
    if (cfg.c)
        v.globevnik = globevnik_conditions(cfg);
    if (run.cr_probe_discs > 0) {
        const C2Point avoid[] = {a, b, kP};
        v.cr_probe = cr_violation_probe(fn, generic_discs(run.cr_probe_discs, avoid, run.sample_offset), run.moments);
    }

    v.stages = {{"hypothesis: lines through a and b", false, false, 0.0, {}},
                {"averaged function vanishes", false, false, 0.0, {}},
                {"g f extends on discs through p", false, false, 0.0, {}},
                {"f reconstructed from g f", false, false, 0.0, {}}};

    // (i)
    {
        StageReport& s = v.stages[0];
        s.ran = true;
        s.passed = true;
        const auto run_family = [&](const C2Point& q, std::vector<MomentReport>& out, const char* label) {
            const auto discs = line_family_through(q, run.line_samples, run.sample_offset);
            for (std::size_t i = 0; i < discs.size(); ++i) {
                out.push_back(moment_test(fn, discs[i], run.moments));
                const MomentReport& r = out.back();
                if (r.max_abs > s.worst || (!r.pass && s.passed)) {
                    s.worst = std::max(s.worst, r.max_abs);
                    if (!r.pass && s.passed) {
                        s.passed = false;
                        s.detail = describe(label, i, r.max_abs, r.worst_n);
                    }
                }
            }
        };
        run_family(a, v.hypothesis_a, "line through a");
        run_family(b, v.hypothesis_b, "line through b");
        if (!s.passed) {
            v.outcome = PipelineOutcome::hypothesis_not_met;
            return v;
        }
    }

    bool theorem_ok = true;
    // (ii)
    {
        StageReport& s = v.stages[1];
        s.ran = true;
        s.passed = true;
        const double c = fn.sup_bound();
        for (std::size_t i = 0; i < run.zeta_grid.size(); ++i) {
            const Complex zeta = run.zeta_grid[i];
            HSample h{zeta, {}, h_majorant(zeta, c)};
            try {
                h.h = induced_h(fn, zeta, run.averaging);
            } catch (const QuadratureError& e) {
                s.passed = false;
                s.detail = describe("zeta", i, std::abs(zeta)) + ": " + e.what();
                v.h_grid.push_back(h);
                continue;
            }
            const double mag = std::abs(h.h.value);
            s.worst = std::max(s.worst, mag);
            if (!(mag < run.h_tolerance) && s.passed) {
                s.passed = false;
                std::ostringstream d;
                d << "zeta = (" << zeta.real() << ", " << zeta.imag() << "): |h| = " << mag;
                s.detail = d.str();
            }
            v.h_grid.push_back(h);
        }
        theorem_ok = theorem_ok && s.passed;
    }

    // (iii)
    const auto discs = discs_through_p(run.disc_samples, run.sample_offset, run.min_v2);
    {
        StageReport& s = v.stages[2];
        s.ran = true;
        s.passed = true;
        for (std::size_t i = 0; i < discs.size(); ++i) {
            v.through_p.push_back(damped_moment_test(fn, discs[i], run.reconstruction.moments));
            const MomentReport& r = v.through_p.back();
            s.worst = std::max(s.worst, r.max_abs);
            if (!r.pass && s.passed) {
                s.passed = false;
                s.detail = describe("disc through p", i, r.max_abs, r.worst_n);
            }
        }
        theorem_ok = theorem_ok && s.passed;
    }

    // (iv)
    if (v.stages[2].passed) {
        StageReport& s = v.stages[3];
        s.ran = true;
        s.passed = true;
        for (std::size_t i = 0; i < discs.size(); ++i) {
            v.reconstructions.push_back(reconstruct_on_disc(fn, discs[i], run.reconstruction));
            const ReconstructionProbe& r = v.reconstructions.back();
            s.worst = std::max(s.worst, r.boundary_mismatch);
            if (!r.passed && s.passed) {
                s.passed = false;
                std::ostringstream d;
                d << "disc through p #" << i << ": sup|F/g| = " << r.sup_bold_f << " vs sup|f| = " << r.sup_boundary_f
                  << ", mismatch = " << r.boundary_mismatch << ", growth exponent = " << r.growth.exponent;
                s.detail = d.str();
            }
        }
        theorem_ok = theorem_ok && s.passed;
    }

    v.outcome = theorem_ok ? PipelineOutcome::pass : PipelineOutcome::theorem_failure;
    return v;
}

} // namespace disctest
