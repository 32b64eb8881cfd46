#pragma once

// Extension tests on analytic discs: moment criteria, sampled disc families,
// the staged tangent-pair pipeline and the reconstruction f = F / g on discs
// through the tangency point.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disctest/complexification.hpp"
#include "disctest/functions.hpp"
#include "disctest/geometry.hpp"
#include "disctest/group.hpp"

namespace disctest {

struct MomentOptions {
    int n_max = 24;
    double threshold = 1e-7;
    std::size_t nodes = 512;
};

struct MomentReport {
    DiscChart disc{ComplexLine({}, {1.0, 0.0}), {}, 0.0};
    std::vector<Complex> moments;  // m_n, n = 0..n_max, in the centred normalised power
    double max_abs = 0.0;
    int worst_n = 0;
    double threshold = 0.0;
    std::size_t nodes = 0;
    bool pass = false;
};

/// m_n = contour integral of ((tau - c)/R)^n f(A(tau)) d tau over the chart circle.
/// Rejects degenerate discs and n_max < 8.
[[nodiscard]] MomentReport moment_test(const BoundaryFunction& f, const DiscChart& disc, const MomentOptions& opts = {});

/// Same test on precomputed boundary samples.
[[nodiscard]] MomentReport moment_test(const CircleQuadrature& samples, const DiscChart& disc,
                                       const MomentOptions& opts = {});

struct ProbeResult {
    MomentReport worst;
    std::size_t worst_index = 0;
    std::size_t failures = 0;
    std::size_t tested = 0;
};

/// Runs moment_test on every disc and keeps the one with the largest max_abs.
[[nodiscard]] ProbeResult cr_violation_probe(const BoundaryFunction& f, const std::vector<DiscChart>& samples,
                                             const MomentOptions& opts = {});

/// Direction (cos psi e^{i chi}, sin psi) from the Halton pair of `index` (bases 2, 3),
/// with sin psi restricted to [min_v2, 1].
[[nodiscard]] C2Point halton_direction(std::size_t index, double min_v2 = 0.0);

/// `count` discs cut by lines through q along Halton directions, skipping lines whose disc
/// radius is below `min_radius`. Throws when too few directions qualify.
[[nodiscard]] std::vector<DiscChart> line_family_through(const C2Point& q, std::size_t count, std::size_t offset = 1,
                                                         double min_radius = 0.05);

/// Discs of lines through Halton points of the open ball, at distance >= `clearance`
/// from every point in `avoid`.
[[nodiscard]] std::vector<DiscChart> generic_discs(std::size_t count, std::span<const C2Point> avoid,
                                                   std::size_t offset = 1, double min_radius = 0.05,
                                                   double clearance = 1e-2);

/// The disc of the line through p = (0, 1) with unit direction v, parametrised so that
/// A(1) = p: A(sigma) = p + conj(v2) (sigma - 1) v, |sigma| <= 1.
struct PointedDisc {
    C2Point v{0.0, 1.0};

    PointedDisc() = default;
    /// Requires |v| = 1 and v2 != 0.
    explicit PointedDisc(const C2Point& direction);
    /// The disc through p and a sphere point z != p.
    [[nodiscard]] static PointedDisc through(const C2Point& z);

    [[nodiscard]] C2Point at(Complex sigma) const noexcept;
    /// 1 - z2 along the disc, |v2|^2 (1 - sigma), without cancellation.
    [[nodiscard]] Complex gap(Complex sigma) const noexcept { return std::norm(v.z2) * (1.0 - sigma); }
    [[nodiscard]] Complex damping(Complex sigma) const noexcept;
    /// The same disc as a chart of the line (tau = conj(v2)(sigma - 1)).
    [[nodiscard]] DiscChart chart() const;
};

/// `count` discs through p along Halton directions with |v2| >= min_v2.
[[nodiscard]] std::vector<PointedDisc> discs_through_p(std::size_t count, std::size_t offset = 1, double min_v2 = 0.2);

struct GrowthOptions {
    int k_max = 40;
    std::vector<double> angles{0.0, kPi / 6.0, -kPi / 6.0};
    double lemma_exponent = 0.5;
    double slack = 0.1;
};

struct RaySamples {
    double angle = 0.0;
    std::vector<Complex> sigma;
    std::vector<Complex> values;
};

struct GrowthCertificate {
    double exponent = 0.0;   // fitted rho in log|f| ~ C |w|^rho, w = (1 + sigma) / (1 - sigma); 0 when flat
    double fit_error = 0.0;  // rms residual of the log-log fit
    std::size_t samples = 0;
    double sup = 0.0;
    bool bounded = false;       // exponent <= slack
    bool within_lemma = false;  // exponent <= lemma_exponent + slack
};

/// Fits the growth of |f| along the rays toward sigma = 1. Throws when fewer than 3
/// usable samples exist on every ray.
[[nodiscard]] GrowthCertificate growth_probe(const std::vector<RaySamples>& rays, const GrowthOptions& opts = {});

/// Samples sigma = 1 - 2^-k e^{i angle}, k = 1..k_max.
[[nodiscard]] std::vector<Complex> ray_points(double angle, int k_max);

struct ReconstructionOptions {
    std::size_t nodes = 4096;
    MomentOptions moments{24, 1e-7, 4096};
    GrowthOptions growth;
    double away_from_one = 1.0;   // boundary mismatch measured where |sigma - 1| >= this
    double noise_factor = 1e5;    // samples need |g| >= noise_factor * noise, so noise / |g| <= 1e-5
    std::size_t interior_radii = 16;
    std::size_t interior_angles = 64;
    double sup_tolerance = 1e-5;       // sup |F / g| may exceed the boundary sup of |f| by this much
    double mismatch_tolerance = 1e-7;
};

struct ReconstructionProbe {
    PointedDisc disc;
    MomentReport gf_moments;
    double noise = 0.0;              // roundoff level of the extension of g f
    double sup_boundary_f = 0.0;     // max |f o A| over the boundary nodes
    double sup_bold_f = 0.0;         // max |F / g| over the resolved interior samples
    double boundary_mismatch = 0.0;  // max |F / g - f o A| on the arc |sigma - 1| >= away_from_one
    std::size_t interior_samples = 0;
    std::size_t skipped = 0;         // samples where g is below the resolution limit
    std::vector<RaySamples> rays;
    GrowthCertificate growth;
    bool passed = false;  // bounded by the boundary sup, matching f on the arc, growth within the lemma
};

/// Reconstructs f on the disc through p: F is the holomorphic extension of (g f) o A
/// (Fourier projection), f = F / (g o A). Throws PreconditionError when g f fails
/// the moment test on the disc.
[[nodiscard]] ReconstructionProbe reconstruct_on_disc(const BoundaryFunction& f, const PointedDisc& disc,
                                                      const ReconstructionOptions& opts = {});
[[nodiscard]] ReconstructionProbe reconstruct_on_disc(const BoundaryFunction& f, const C2Point& z,
                                                      const ReconstructionOptions& opts = {});

enum class PipelineOutcome { pass, hypothesis_not_met, theorem_failure };

[[nodiscard]] const char* outcome_name(PipelineOutcome o) noexcept;

struct PipelineConfig {
    std::size_t line_samples = 32;
    std::size_t disc_samples = 32;
    std::size_t sample_offset = 1;  // Halton index of the first sample
    MomentOptions moments;
    std::vector<Complex> zeta_grid = default_zeta_grid();
    double h_tolerance = 1e-6;
    AveragingConfig averaging;
    ReconstructionOptions reconstruction;
    double min_v2 = 0.2;
    std::size_t cr_probe_discs = 50;  // informational; 0 disables

    /// 5 x 5 polar grid: |zeta| = 1..5, arguments (j + 1/2) 2 pi / 5.
    [[nodiscard]] static std::vector<Complex> default_zeta_grid();
};

struct HSample {
    Complex zeta;
    IntegralResult h;
    double bound = 0.0;
};

struct StageReport {
    std::string name;
    bool ran = false;
    bool passed = false;
    double worst = 0.0;  // largest test statistic of the stage
    std::string detail;  // offending disc or zeta when failed
};

struct PipelineVerdict {
    PipelineOutcome outcome = PipelineOutcome::pass;
    NormalizedConfiguration normalized;
    std::vector<StageReport> stages;  // (i) .. (iv), in order
    std::vector<MomentReport> hypothesis_a;
    std::vector<MomentReport> hypothesis_b;
    std::vector<HSample> h_grid;
    std::vector<MomentReport> through_p;
    std::vector<ReconstructionProbe> reconstructions;
    std::optional<GlobevnikReport> globevnik;
    std::optional<ProbeResult> cr_probe;
};

/// (i) f extends on the line families through a and b; (ii) the averaged h vanishes on the grid;
/// (iii) g f extends on discs through p; (iv) f = F / g reconstructs f on those discs.
/// f is given in the coordinates of cfg; the pipeline works in normalised coordinates.
/// Throws PreconditionError when the a-b line is not tangent to the sphere.
[[nodiscard]] PipelineVerdict theorem1_pipeline(const BoundaryFunction& f, const Configuration& cfg,
                                                const PipelineConfig& run = {});

} // namespace disctest
