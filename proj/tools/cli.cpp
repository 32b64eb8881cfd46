#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "disctest/complexification.hpp"
#include "disctest/testing.hpp"

namespace disctest::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// A failure of the inputs rather than of the mathematics; maps to exit 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Overrides {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t nodes = 0;
    int moments = 0;
    double threshold = 0.0;
    std::string grid;
    std::string line;
    std::vector<std::string> pairs;
    bool has_seed = false;
    bool has_nodes = false;
    bool has_moments = false;
    bool has_threshold = false;
};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size())
        throw ConfigError("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }
json to_json(const C2Point& p) { return json::array({to_json(p.z1), to_json(p.z2)}); }

Complex complex_from(const json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string())
        return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError("expected a complex number ([re, im], a number or a string), got " + j.dump());
}

C2Point point_from(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("expected a point [z1, z2], got " + j.dump());
    return {complex_from(j[0]), complex_from(j[1])};
}

std::string timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

// ---------------------------------------------------------------------------------------------
// Effective configuration

struct RunConfig {
    json effective;
    fs::path out_dir;
    std::uint64_t seed = 0;
};

template <class T>
T positive(const json& section, const char* key, T fallback)
{
    const T v = section.value(key, fallback);
    if (!(v > T{}))
        throw ConfigError(std::string("budget '") + key + "' must be positive");
    return v;
}

RunConfig load(const Overrides& o, const std::string& command)
{
    std::ifstream in(o.config, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file '" + o.config + "'");
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in '") + o.config + "': " + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");

    RunConfig rc;
    rc.seed = o.has_seed ? o.seed : fnv1a(bytes);

    json q = j.value("quadrature", json::object());
    if (o.has_nodes)
        q["nodes"] = o.nodes;
    if (o.has_moments)
        q["n_max"] = o.moments;
    if (o.has_threshold)
        q["threshold"] = o.threshold;
    q["nodes"] = positive<std::size_t>(q, "nodes", 512);
    q["n_max"] = positive<int>(q, "n_max", 24);
    q["threshold"] = positive<double>(q, "threshold", 1e-7);
    q["epsilon_tail"] = positive<double>(q, "epsilon_tail", 1e-12);
    q["circle_nodes"] = positive<std::size_t>(q, "circle_nodes", 512);
    j["quadrature"] = q;

    json g = j.value("grid", json::object());
    if (!o.grid.empty())
        g["zeta"] = o.grid;
    if (!g.contains("zeta"))
        g["zeta"] = "ring:1:5,ring:2:5,ring:3:5,ring:4:5,ring:5:5";
    g["disc_samples"] = positive<std::size_t>(g, "disc_samples", 32);
    g["line_samples"] = positive<std::size_t>(g, "line_samples", 32);
    g["cr_probe_discs"] = g.value("cr_probe_discs", std::size_t{50});
    j["grid"] = g;

    if (!o.line.empty())
        j["line"] = o.line;
    if (!o.pairs.empty()) {
        json pairs = json::array();
        for (const auto& p : o.pairs) {
            const auto parts = split(p, ',');
            if (parts.size() != 4)
                throw ConfigError("--pair expects c1,r1,c2,r2, got '" + p + "'");
            pairs.push_back({{"c1", to_json(parse_complex(parts[0]))},
                             {"r1", parse_real(parts[1])},
                             {"c2", to_json(parse_complex(parts[2]))},
                             {"r2", parse_real(parts[3])}});
        }
        j["quadric"] = pairs;
    }

    std::string out = o.out;
    if (out.empty() && j.contains("output") && j["output"].contains("dir"))
        out = j["output"]["dir"].get<std::string>();
    if (out.empty()) {
        const char* env = std::getenv("DISCTEST_OUT");
        out = env && *env ? env : "disctest_out";
    }
    j["output"] = {{"dir", out}};
    j["seed"] = rc.seed;
    j["command"] = command;

    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out))
        throw ConfigError("output directory '" + out + "' is not writable");
    rc.out_dir = out;
    rc.effective = std::move(j);
    return rc;
}

std::optional<Configuration> configuration_from(const json& j)
{
    if (!j.contains("configuration"))
        return std::nullopt;
    const json& c = j["configuration"];
    Configuration cfg;
    cfg.a = point_from(c.at("a"));
    cfg.b = point_from(c.at("b"));
    if (c.contains("c"))
        cfg.c = point_from(c["c"]);
    if (c.contains("tangency_point"))
        cfg.tangency_point = point_from(c["tangency_point"]);
    return cfg;
}

// t1, t2 of the counterexample default to the normalised configuration when there is one
BoundaryFunction function_from(const json& j, const std::optional<NormalizedConfiguration>& n = std::nullopt)
{
    if (!j.contains("function"))
        throw ConfigError("config has no 'function' section");
    const json& f = j["function"];
    const std::string name = f.is_string() ? f.get<std::string>() : f.at("name").get<std::string>();
    const json params = f.is_object() ? f : json::object();
    if (name == "zero")
        return BoundaryFunction::zero();
    if (name == "constant")
        return BoundaryFunction::constant(complex_from(params.value("value", json(1.0))));
    if (name == "holo-poly") {
        std::vector<Monomial> terms;
        if (params.contains("terms")) {
            for (const json& t : params["terms"])
                terms.push_back({complex_from(t.value("coeff", json(1.0))), t.value("p", 0), t.value("q", 0)});
        } else {
            terms.push_back({1.0, 2, 1});
        }
        return BoundaryFunction::holomorphic_polynomial(std::move(terms));
    }
    if (name == "zbar1")
        return BoundaryFunction::antiholomorphic_monomial(1, 0);
    if (name == "zbar2")
        return BoundaryFunction::antiholomorphic_monomial(0, 1);
    if (name == "antiholo")
        return BoundaryFunction::antiholomorphic_monomial(params.value("p", 0), params.value("q", 0));
    if (name == "counterexample") {
        std::vector<Complex> extra;
        for (const json& s : params.value("extra", json::array()))
            extra.push_back(complex_from(s));
        const Complex t1 = params.contains("t1") ? complex_from(params["t1"]) : n ? n->t1 : Complex{1.0};
        const Complex t2 = params.contains("t2") ? complex_from(params["t2"]) : n ? n->t2 : Complex{-1.0};
        return BoundaryFunction::counterexample(t1, t2, std::move(extra));
    }
    throw ConfigError("unknown function '" + name + "'");
}

// f as given, or pulled back when it is written in normalised coordinates
BoundaryFunction function_in_original_frame(const json& j, const std::optional<NormalizedConfiguration>& n)
{
    BoundaryFunction f = function_from(j, n);
    const json& spec = j["function"];
    if (spec.is_object() && spec.value("frame", std::string("original")) == "normalized") {
        if (!n)
            throw ConfigError("function frame 'normalized' needs a tangent configuration");
        f = f.composed_with(n->unitary);
    }
    return f;
}

MomentOptions moment_options(const json& j)
{
    const json& q = j["quadrature"];
    return {q["n_max"].get<int>(), q["threshold"].get<double>(), q["nodes"].get<std::size_t>()};
}

AveragingConfig averaging_options(const json& j)
{
    AveragingConfig a;
    a.budget.epsilon_tail = j["quadrature"]["epsilon_tail"].get<double>();
    a.circle_nodes = j["quadrature"]["circle_nodes"].get<std::size_t>();
    return a;
}

// ---------------------------------------------------------------------------------------------
// Report writing

void write_json(const fs::path& path, json report)
{
    report["generated_at"] = timestamp();
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << report.dump(2) << '\n';
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const json& config, const std::vector<std::string>& columns) : out_(path)
    {
        if (!out_)
            throw ConfigError("cannot write '" + path.string() + "'");
        out_ << "# " << config.dump() << '\n';
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << '\n';
        out_ << std::setprecision(17);
    }

    template <class... T>
    void row(const T&... values)
    {
        std::size_t i = 0;
        ((out_ << (i++ ? "," : "") << values), ...);
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

json disc_json(const DiscChart& d)
{
    return {{"base", to_json(d.line.base())},
            {"direction", to_json(d.line.direction())},
            {"tau_center", to_json(d.tau_center)},
            {"tau_radius", d.tau_radius}};
}

json moment_json(const MomentReport& r)
{
    json m = json::array();
    for (const Complex z : r.moments)
        m.push_back(to_json(z));
    return {{"disc", disc_json(r.disc)}, {"moments", m},         {"max_abs", r.max_abs},
            {"worst_n", r.worst_n},      {"threshold", r.threshold}, {"nodes", r.nodes},
            {"pass", r.pass}};
}

void moment_csv(const fs::path& path, const json& config, const std::vector<MomentReport>& reports)
{
    CsvWriter csv(path, config, {"index", "tau_radius", "max_abs", "worst_n", "pass"});
    for (std::size_t i = 0; i < reports.size(); ++i)
        csv.row(i, reports[i].disc.tau_radius, reports[i].max_abs, reports[i].worst_n, reports[i].pass ? 1 : 0);
}

// ---------------------------------------------------------------------------------------------
// Commands

DiscChart line_from(const json& j, std::uint64_t seed)
{
    const json spec = j.value("line", json("random"));
    if (spec.is_object()) {
        const auto chart = line_ball_intersection(ComplexLine(point_from(spec.at("base")), point_from(spec.at("direction"))));
        if (!chart || chart->degenerate())
            throw ConfigError("the line does not cut a disc out of the ball");
        return *chart;
    }
    const std::string s = spec.get<std::string>();
    if (s == "z1-axis")
        return *line_ball_intersection(ComplexLine({0.0, 0.0}, {1.0, 0.0}));
    if (s == "z2-axis")
        return *line_ball_intersection(ComplexLine({0.0, 0.0}, {0.0, 1.0}));
    if (s == "random") {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n;
        std::uniform_real_distribution<double> u(0.0, 0.8);
        for (;;) {
            C2Point base{{n(rng), n(rng)}, {n(rng), n(rng)}};
            base = Complex{u(rng) / norm(base)} * base;
            const C2Point dir{{n(rng), n(rng)}, {n(rng), n(rng)}};
            const auto chart = line_ball_intersection(ComplexLine(base, dir));
            if (chart && chart->tau_radius >= 0.05)
                return *chart;
        }
    }
    // "b1,b2;d1,d2"
    const auto halves = split(s, ';');
    if (halves.size() == 2) {
        const auto b = split(halves[0], ',');
        const auto d = split(halves[1], ',');
        if (b.size() == 2 && d.size() == 2) {
            json obj{{"base", {to_json(parse_complex(b[0])), to_json(parse_complex(b[1]))}},
                     {"direction", {to_json(parse_complex(d[0])), to_json(parse_complex(d[1]))}}};
            return line_from(json{{"line", obj}}, seed);
        }
    }
    throw ConfigError("unknown line spec '" + s + "' (random, z1-axis, z2-axis or 'b1,b2;d1,d2')");
}

int cmd_moment_test(const RunConfig& rc, std::ostream& out)
{
    const json& j = rc.effective;
    const BoundaryFunction f = function_from(j);
    const DiscChart disc = line_from(j, rc.seed);
    const MomentReport r = moment_test(f, disc, moment_options(j));
    write_json(rc.out_dir / "moment_test.json", {{"config", j}, {"report", moment_json(r)}});
    out << "moment-test: " << (r.pass ? "pass" : "fail") << "  max|m_n| = " << r.max_abs << " at n = " << r.worst_n
        << '\n';
    return r.pass ? exit_pass : exit_failed;
}

int cmd_verify_theorem1(const RunConfig& rc, std::ostream& out)
{
    const json& j = rc.effective;
    const auto cfg = configuration_from(j);
    if (!cfg)
        throw ConfigError("verify-theorem1 needs a 'configuration' section");
    // surfaces the tangency diagnostic as a precondition error
    const NormalizedConfiguration n = normalize_configuration(*cfg);
    const BoundaryFunction f = function_in_original_frame(j, n);

    PipelineConfig run;
    run.line_samples = j["grid"]["line_samples"].get<std::size_t>();
    run.disc_samples = j["grid"]["disc_samples"].get<std::size_t>();
    run.cr_probe_discs = j["grid"]["cr_probe_discs"].get<std::size_t>();
    run.sample_offset = 1 + rc.seed % 4096;
    run.moments = moment_options(j);
    run.reconstruction.moments.n_max = run.moments.n_max;
    run.reconstruction.moments.threshold = run.moments.threshold;
    run.averaging = averaging_options(j);
    run.zeta_grid.clear();
    for (const auto& z : parse_zeta_grid(j["grid"]["zeta"].get<std::string>()))
        if (z)
            run.zeta_grid.push_back(*z);

    const PipelineVerdict v = theorem1_pipeline(f, *cfg, run);

    json stages = json::array();
    for (const StageReport& s : v.stages)
        stages.push_back({{"name", s.name}, {"ran", s.ran}, {"passed", s.passed}, {"worst", s.worst}, {"detail", s.detail}});
    json report{{"config", j},
                {"outcome", outcome_name(v.outcome)},
                {"normalized",
                 {{"t1", to_json(v.normalized.t1)},
                  {"t2", to_json(v.normalized.t2)},
                  {"unitary", json::array({to_json(v.normalized.unitary(0, 0)), to_json(v.normalized.unitary(0, 1)),
                                           to_json(v.normalized.unitary(1, 0)), to_json(v.normalized.unitary(1, 1))})}}},
                {"stages", stages}};
    if (v.globevnik)
        report["globevnik"] = {{"ab", to_json(v.globevnik->ab)},
                               {"ac", to_json(v.globevnik->ac)},
                               {"bc", to_json(v.globevnik->bc)},
                               {"verdict", v.globevnik->verdict}};
    if (v.cr_probe)
        report["cr_probe"] = {{"tested", v.cr_probe->tested},
                              {"failures", v.cr_probe->failures},
                              {"worst_index", v.cr_probe->worst_index},
                              {"worst", moment_json(v.cr_probe->worst)}};
    write_json(rc.out_dir / "verdict.json", report);

    moment_csv(rc.out_dir / "moments_a.csv", j, v.hypothesis_a);
    moment_csv(rc.out_dir / "moments_b.csv", j, v.hypothesis_b);
    if (v.stages[1].ran) {
        CsvWriter csv(rc.out_dir / "decay.csv", j, {"zeta_re", "zeta_im", "abs_zeta", "abs_h", "bound", "error"});
        for (const HSample& h : v.h_grid)
            csv.row(h.zeta.real(), h.zeta.imag(), std::abs(h.zeta), std::abs(h.h.value), h.bound, h.h.total_error());
    }
    if (v.stages[2].ran)
        moment_csv(rc.out_dir / "moments_p.csv", j, v.through_p);
    if (v.stages[3].ran) {
        CsvWriter csv(rc.out_dir / "reconstruction.csv", j,
                      {"index", "sup_bold_f", "sup_boundary_f", "boundary_mismatch", "noise", "growth_exponent", "passed"});
        for (std::size_t i = 0; i < v.reconstructions.size(); ++i) {
            const ReconstructionProbe& r = v.reconstructions[i];
            csv.row(i, r.sup_bold_f, r.sup_boundary_f, r.boundary_mismatch, r.noise, r.growth.exponent, r.passed ? 1 : 0);
        }
    }

    out << "verify-theorem1: " << outcome_name(v.outcome) << '\n';
    for (const StageReport& s : v.stages)
        out << "  " << (s.ran ? (s.passed ? "pass " : "FAIL ") : "skip ") << s.name << "  worst = " << s.worst
            << (s.detail.empty() ? "" : "  (" + s.detail + ")") << '\n';
    switch (v.outcome) {
    case PipelineOutcome::pass:
        return exit_pass;
    case PipelineOutcome::hypothesis_not_met:
        return exit_hypothesis;
    case PipelineOutcome::theorem_failure:
        return exit_failed;
    }
    return exit_error;
}

int cmd_decay_table(const RunConfig& rc, std::ostream& out)
{
    const json& j = rc.effective;
    const auto cfg = configuration_from(j);
    std::optional<NormalizedConfiguration> n;
    if (cfg)
        n = normalize_configuration(*cfg);
    BoundaryFunction f = function_in_original_frame(j, n);
    if (n)
        f = f.composed_with(n->unitary.adjoint());
    const double c = f.sup_bound();
    const AveragingConfig avg = averaging_options(j);

    CsvWriter csv(rc.out_dir / "decay.csv", j,
                  {"zeta_re", "zeta_im", "abs_zeta", "abs_h", "bound", "error", "status"});
    bool all_within = true;
    std::size_t rows = 0;
    for (const auto& z : parse_zeta_grid(j["grid"]["zeta"].get<std::string>())) {
        if (!z) {
            csv.row("inf", "inf", "inf", "", "", "", "skipped: zeta = infinity is the orbit of (0, 1)");
            continue;
        }
        const double bound = h_majorant(*z, c);
        try {
            const IntegralResult h = induced_h(f, *z, avg);
            const bool ok = std::abs(h.value) <= bound;
            all_within = all_within && ok;
            csv.row(z->real(), z->imag(), std::abs(*z), std::abs(h.value), bound, h.total_error(),
                    ok ? "ok" : "exceeds bound");
        } catch (const QuadratureError& e) {
            all_within = false;
            csv.row(z->real(), z->imag(), std::abs(*z), "", bound, "", std::string("averaging failed: ") + e.what());
        }
        ++rows;
    }
    out << "decay-table: " << rows << " rows, " << (all_within ? "all within bound" : "bound violated or unresolved")
        << " -> " << (rc.out_dir / "decay.csv").string() << '\n';
    return all_within ? exit_pass : exit_failed;
}

int cmd_quadric(const RunConfig& rc, std::ostream& out)
{
    const json& j = rc.effective;
    if (!j.contains("quadric") || !j["quadric"].is_array() || j["quadric"].empty())
        throw ConfigError("quadric needs a non-empty 'quadric' array of {c1, r1, c2, r2} (or --pair)");
    json results = json::array();
    bool error = false;
    for (std::size_t i = 0; i < j["quadric"].size(); ++i) {
        const json& p = j["quadric"][i];
        const Complex c1 = complex_from(p.at("c1"));
        const Complex c2 = complex_from(p.at("c2"));
        const double r1 = p.at("r1").get<double>();
        const double r2 = p.at("r2").get<double>();
        json entry{{"pair", {{"c1", to_json(c1)}, {"r1", r1}, {"c2", to_json(c2)}, {"r2", r2}}}};
        try {
            const QuadricIntersection q = quadric_intersection(c1, r1, c2, r2);
            const CenterNormalization norm_map{c1, c2};
            const double scale = std::abs(c2 - c1);
            const M0M1Regime regime = m0_m1_regime(r1 / scale, r2 / scale);
            static const char* names[] = {"outer: R2 >= R1 + 1", "inner: R1 - 1 > R2", "disjoint: R1 + R2 < 1",
                                          "complex roots"};
            json points = json::array();
            bool tangent = q.double_root;
            for (const QuadricPoint& x : q.points) {
                // the affine change taking c1, c2 to 0, 1 (conjugated on the eta side)
                const Complex xi = norm_map.to_normalized(x.zeta);
                const Complex eta_n = (x.eta - std::conj(c1)) / std::conj(c2 - c1);
                const Complex det = transversality_determinant({xi, eta_n});
                const double tol = 1e-12 * std::max({1.0, std::abs(xi), std::abs(eta_n)});
                const bool real = std::abs(xi.imag()) <= tol && std::abs(eta_n.imag()) <= tol;
                tangent = tangent || std::abs(det) <= 1e-9 * std::max(1.0, std::abs(xi));
                json pt{{"zeta", to_json(x.zeta)},
                        {"eta", to_json(x.eta)},
                        {"normalized", {to_json(xi), to_json(eta_n)}},
                        {"on_diagonal", std::abs(x.eta - std::conj(x.zeta)) <= 1e-12 * std::max(1.0, std::abs(x.zeta))},
                        {"real", real},
                        {"determinant", to_json(det)},
                        {"residuals", {QuadricDisc{c1, r1}.residual(x), QuadricDisc{c2, r2}.residual(x)}}};
                if (real)
                    pt["in_T"] = region_T_membership(xi.real(), eta_n.real());
                points.push_back(pt);
            }
            entry["points"] = points;
            entry["double_root"] = q.double_root;
            entry["tangent"] = tangent;
            entry["candidate_roots"] = q.candidate_roots;
            entry["regime"] = names[static_cast<int>(regime)];
        } catch (const PreconditionError& e) {
            entry["error"] = {{"kind", "precondition"}, {"message", e.what()}};
            error = true;
        }
        results.push_back(entry);
    }
    write_json(rc.out_dir / "quadric.json", {{"config", j}, {"pairs", results}});
    out << results.dump(2) << '\n';
    return error ? exit_error : exit_pass;
}

} // namespace

Complex parse_complex(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t')
            s += ch;
    if (s.empty())
        throw ConfigError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j')
        return parse_real(s);
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t cut = 0;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    const std::string re = s.substr(0, cut);
    std::string im = s.substr(cut);
    if (im.empty() || im == "+" || im == "-")
        im += "1";
    return {re.empty() ? 0.0 : parse_real(re), parse_real(im)};
}

std::vector<std::optional<Complex>> parse_zeta_grid(std::string_view spec)
{
    std::vector<std::optional<Complex>> out;
    for (const std::string& item : split(spec, ',')) {
        if (item.empty())
            throw ConfigError("empty item in grid spec");
        if (item == "inf") {
            out.emplace_back(std::nullopt);
        } else if (item.rfind("ring:", 0) == 0) {
            const auto parts = split(item, ':');
            if (parts.size() != 3)
                throw ConfigError("ring item must be ring:<radius>:<count>, got '" + item + "'");
            const double r = parse_real(parts[1]);
            const double n = parse_real(parts[2]);
            if (!(r > 0.0) || !(n >= 1.0) || n != std::floor(n))
                throw ConfigError("ring item needs a positive radius and count, got '" + item + "'");
            for (int k = 0; k < static_cast<int>(n); ++k)
                out.emplace_back(std::polar(r, (k + 0.5) * kTwoPi / n));
        } else if (const auto at = item.find('@'); at != std::string::npos) {
            out.emplace_back(std::polar(parse_real(item.substr(0, at)), parse_real(item.substr(at + 1))));
        } else {
            out.emplace_back(parse_complex(item));
        }
    }
    return out;
}

std::uint64_t fnv1a(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Extension tests on analytic discs in the unit ball of C^2"};
    app.require_subcommand(1);
    Overrides o;

    const auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON run configuration")->required();
        sub->add_option("--out", o.out, "output directory (default: config, then $DISCTEST_OUT, then ./disctest_out)");
        sub->add_option("--seed", o.seed, "sampling seed (default: FNV-1a hash of the config file)");
        sub->add_option("--nodes", o.nodes, "circle nodes for moment tests");
        sub->add_option("--moments", o.moments, "highest moment index N_max");
        sub->add_option("--threshold", o.threshold, "moment pass threshold");
        sub->add_option("--grid", o.grid, "zeta grid, e.g. '2,4,6,8', 'ring:3:5', '1@0.5', 'inf'");
    };
    CLI::App* moment = app.add_subcommand("moment-test", "moment test of f on one disc");
    common(moment);
    moment->add_option("--line", o.line, "random | z1-axis | z2-axis | 'b1,b2;d1,d2'");
    CLI::App* verify = app.add_subcommand("verify-theorem1", "staged verification for a tangent pair a, b");
    common(verify);
    CLI::App* decay = app.add_subcommand("decay-table", "|h| against its decay bound on a zeta grid");
    common(decay);
    CLI::App* quadric = app.add_subcommand("quadric", "intersections of complexified circles");
    common(quadric);
    quadric->add_option("--pair", o.pairs, "c1,r1,c2,r2 (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_error;
    }
    const CLI::App* sub = app.get_subcommands().front();
    o.has_seed = sub->count("--seed") > 0;
    o.has_nodes = sub->count("--nodes") > 0;
    o.has_moments = sub->count("--moments") > 0;
    o.has_threshold = sub->count("--threshold") > 0;

    try {
        if (moment->parsed())
            return cmd_moment_test(load(o, "moment-test"), out);
        if (verify->parsed())
            return cmd_verify_theorem1(load(o, "verify-theorem1"), out);
        if (decay->parsed())
            return cmd_decay_table(load(o, "decay-table"), out);
        return cmd_quadric(load(o, "quadric"), out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << '\n';
    } catch (const json::exception& e) {
        err << "config: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_error;
}

} // namespace disctest::cli
