// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"

#include "sraembed/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace sraembed;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

FiniteMetricSpace line(std::size_t n) { return generate(GenSpec{Family::Line, n, {}, {}, 0}); }

const double kAlphas[] = {0.3, 0.5, 0.75};

Outcome sra_oracle_equivalence() {
    const auto t0 = Clock::now();
    Outcome out;
    std::size_t found = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t n = 3 + mix64(1, i) % 10;
        const double alpha = kAlphas[mix64(2, i) % 3];
        const std::size_t k = 3 + mix64(3, i) % 3;
        GenSpec spec;
        spec.n = n;
        spec.seed = i;
        switch (i % 3) {
        case 0: spec.family = Family::Line; break;
        case 1:
            spec.family = Family::SnowflakeLine;
            spec.exponent = kAlphas[mix64(4, i) % 3];
            break;
        default:
            spec.family = Family::EuclideanCloud;
            spec.dim = 1 + mix64(5, i) % 3;
        }
        const auto s = generate(spec);
        const auto fast = find_sra_subspace(s, SraParams{alpha, k});
        const auto slow = oracle::first_sra_subset(s, k, alpha);
        if (fast.has_value() != slow.has_value()) {
            out.pass = false;
            out.detail = "existence mismatch on instance " + std::to_string(i);
            return out;
        }
        if (fast) {
            ++found;
            if (!oracle::is_sra(s, fast->indices(), alpha) || fast->size() != k || fast->indices() != *slow) {
                out.pass = false;
                out.detail = "witness mismatch on instance " + std::to_string(i);
                return out;
            }
        }
    }
    const double t = seconds_since(t0);
    out.pass = t < 30.0;
    out.detail = std::to_string(found) + "/200 with witnesses, " + fmt("%.2fs (< 30s)", t);
    return out;
}

Outcome snowflake_witness() {
    const auto t0 = Clock::now();
    Outcome out;
    for (std::size_t k = 3; k <= 5; ++k) {
        for (double alpha : {0.5, 0.75}) {
            const auto s = generate(GenSpec{Family::SnowflakeLine, k, alpha, {}, 0});
            const auto w = find_sra_subspace(s, SraParams{alpha, k});
            std::vector<std::size_t> all(k);
            for (std::size_t i = 0; i < k; ++i) all[i] = i;
            if (!w || w->indices() != all || !oracle::is_sra(s, all, alpha)) {
                out.pass = false;
                out.detail = "k=" + std::to_string(k) + fmt(" alpha=%.2f: full set not returned", alpha);
                return out;
            }
        }
    }
    const double t = seconds_since(t0);
    out.pass = t < 1.0;
    out.detail = fmt("6 configurations, %.4fs (< 1s)", t);
    return out;
}

Outcome mcshane_contract() {
    Outcome out;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 6 + mix64(10, seed) % 30;
        const std::size_t dim = 1 + mix64(11, seed) % 3;
        const auto s = generate(GenSpec{Family::EuclideanCloud, n, {}, dim, seed});
        std::vector<std::size_t> dom;
        for (std::size_t i = 0; i < n; ++i)
            if (unit_double(seed + 1000, i) < 0.4) dom.push_back(i);
        if (dom.empty()) dom.push_back(0);
        const std::size_t m = 1 + mix64(12, seed) % 4;
        // Random values made L-Lipschitz per coordinate by taking an infimal convolution on the domain.
        const double L = 0.5 + 2.0 * unit_double(13, seed);
        PointMap partial(Subset::from_indices(dom), m);
        for (std::size_t c = 0; c < m; ++c) {
            std::vector<double> raw(dom.size());
            for (std::size_t a = 0; a < dom.size(); ++a) raw[a] = L * s.diameter() * unit_double(seed * 7 + c, a);
            for (std::size_t a = 0; a < dom.size(); ++a) {
                double v = raw[a];
                for (std::size_t b = 0; b < dom.size(); ++b) v = std::min(v, std::fma(L, s.d(dom[a], dom[b]), raw[b]));
                partial.row(a)[c] = v;
            }
        }
        const auto F = mcshane_extend(s, partial, L);
        for (std::size_t a = 0; a < dom.size(); ++a)
            for (std::size_t c = 0; c < m; ++c)
                if (!oracle::bitwise_equal(F.value(PointId{dom[a]})[c], partial.row(a)[c])) {
                    out.pass = false;
                    out.detail = "domain value differs on seed " + std::to_string(seed);
                    return out;
                }
        const double bound = std::sqrt(double(m)) * L;
        const double lip = oracle::ratios(s, F).lip;
        worst = std::max(worst, lip / bound);
        if (lip > bound * (1 + 1e-12)) {
            out.pass = false;
            out.detail = "Lipschitz bound exceeded on seed " + std::to_string(seed) + fmt(": %.17g > %.17g", lip, bound);
            return out;
        }
    }
    out.detail = fmt("100 instances, worst Lip/(sqrt(m) L) - 1 = %.3g", worst - 1.0);
    return out;
}

Outcome far_pair_bound() {
    Outcome out;
    std::size_t pairs = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 20 + mix64(20, seed) % 30;
        const std::size_t ysize = 2 + mix64(21, seed) % 6;
        const auto inst = oracle::planar_instance(n, ysize, seed);
        const double alpha = kAlphas[seed % 3];
        const auto Y = restrict_to(inst.space, inst.anchor);
        const auto base = base_case_embed(Y, alpha).map;
        PointMap phi(inst.anchor, base.dim(), base.values());
        const double s = base.scale;
        const double D = base.claimed_distortion;
        const auto F = mcshane_extend(inst.space, phi, D * s);
        const double reach = 5.0 * D * std::sqrt(double(phi.dim()));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                const double d = inst.space.d(a, b);
                const double da = distance_to_set(inst.space, PointId{a}, inst.anchor);
                const double db = distance_to_set(inst.space, PointId{b}, inst.anchor);
                if (!(d > reach * std::max(da, db))) continue;
                ++pairs;
                const double gap = euclidean_distance(F.row(a), F.row(b));
                if (gap < s / 5.0 * d * (1 - 1e-9)) {
                    out.pass = false;
                    out.detail = "seed " + std::to_string(seed) + " pair " + std::to_string(a) + "," +
                                 std::to_string(b);
                    return out;
                }
            }
        }
    }
    out.pass = pairs > 0;
    out.detail = std::to_string(pairs) + " qualifying pairs over 100 instances";
    return out;
}

struct PlanarRun {
    oracle::PlanarInstance inst;
    PointMap phi;
    double theta = 0.5;
    ExtensionResult ext;
    AssouadMap tight; // same scale function with a small zeta, so blocks are shared
};

std::vector<PlanarRun> planar_runs() {
    std::vector<PlanarRun> runs;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        PlanarRun r;
        const std::size_t n = 12 + mix64(30, seed) % 49;
        const std::size_t ysize = 2 + mix64(31, seed) % 5;
        r.inst = oracle::planar_instance(n, ysize, 500 + seed);
        r.theta = 0.25 + 0.5 * unit_double(32, seed);
        const auto Y = restrict_to(r.inst.space, r.inst.anchor);
        const auto base = base_case_embed(Y, 0.5).map;
        r.phi = PointMap(r.inst.anchor, base.dim(), base.values());
        r.phi.scale = base.scale;
        r.phi.claimed_distortion = base.claimed_distortion;
        const auto f = build_scale_function(r.inst.space, r.inst.anchor, r.theta);
        const auto provider = coordinate_chart_provider(r.inst.space, r.inst.coords, 2,
                                                        [f](PointId x) { return f.values[x.value]; });
        r.ext = extend_embedding(r.inst.space, r.inst.anchor, r.phi, provider, r.theta, 1.0, 2);
        r.tight = assemble_phi(r.inst.space, f, provider, 1.0, 2, 1.0 + 2.0 * unit_double(33, seed));
        runs.push_back(std::move(r));
    }
    return runs;
}

Outcome assouad_conclusions(const std::vector<PlanarRun>& runs, double build_seconds) {
    const auto t0 = Clock::now();
    Outcome out;
    auto fail = [&](std::size_t i, const std::string& what) {
        out.pass = false;
        out.detail = "instance " + std::to_string(i) + ": " + what;
        return out;
    };
    double worst_lip = 0.0, worst_colip = std::numeric_limits<double>::infinity();
    double worst_sep = std::numeric_limits<double>::infinity();
    std::size_t separated_pairs = 0;
    for (std::size_t t = 0; t < 2 * runs.size(); ++t) {
        const std::size_t i = t / 2;
        const auto& s = runs[i].inst.space;
        const auto& A = t % 2 == 0 ? runs[i].ext.assouad : runs[i].tight;
        const auto& f = runs[i].ext.scale_function.values;
        // (a) vanishing where f does
        for (std::size_t x = 0; x < s.size(); ++x)
            if (f[x] == 0.0)
                for (double v : A.phi.row(x))
                    if (v != 0.0) return fail(i, "Phi nonzero where f = 0");
        // (b) and (c) by double loop
        const double lip_bound = 110.0 * A.distortion * std::sqrt(double(A.block_dim() * A.block_count()));
        const double colip_bound = 9.0 / (40.0 * A.zeta);
        for (std::size_t a = 0; a < s.size(); ++a) {
            for (std::size_t b = a + 1; b < s.size(); ++b) {
                const double d = s.d(a, b);
                const double gap = euclidean_distance(A.phi.row(a), A.phi.row(b));
                worst_lip = std::max(worst_lip, gap / d / lip_bound);
                if (gap > lip_bound * d * (1 + 1e-9)) return fail(i, "Lipschitz bound exceeded");
                if (d <= A.zeta * std::max(f[a], f[b])) {
                    worst_colip = std::min(worst_colip, gap / d / colip_bound);
                    if (gap < colip_bound * d * (1 - 1e-9)) return fail(i, "near-pair lower bound violated");
                }
            }
        }
        // (d) support separation, exhaustive over same-block bump pairs
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < A.bumps.size(); ++p) {
            for (std::size_t q = p + 1; q < A.bumps.size(); ++q) {
                const auto& B1 = A.bumps[p];
                const auto& B2 = A.bumps[q];
                if (B1.block != B2.block) continue;
                ++separated_pairs;
                const double r1 = 1.1 * std::ldexp(1.0, B1.k - 1);
                const double r2 = 1.1 * std::ldexp(1.0, B2.k - 1);
                const double unit = std::ldexp(1.0, std::max(B1.k, B2.k));
                for (std::size_t z1 = 0; z1 < s.size(); ++z1) {
                    if (s.d(B1.center.value, z1) > r1) continue;
                    for (std::size_t z2 = 0; z2 < s.size(); ++z2)
                        if (s.d(B2.center.value, z2) <= r2) sep = std::min(sep, s.d(z1, z2) / unit);
                }
            }
        }
        worst_sep = std::min(worst_sep, sep);
        if (sep < 0.4 * (1 - 1e-9)) return fail(i, "support separation below 2/5");
    }
    const double t = seconds_since(t0) + build_seconds;
    out.pass = t < 120.0 && separated_pairs > 0;
    out.detail = fmt("worst Lip ratio %.3g, worst near-pair ratio %.3g, ", worst_lip, worst_colip) +
                 fmt("min separation %.3g over %.0f same-block pairs, %.2fs (< 120s)", worst_sep, double(separated_pairs), t);
    return out;
}

Outcome composite_extension(const std::vector<PlanarRun>& runs) {
    Outcome out;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& r = runs[i];
        const auto& M = r.ext.map;
        for (PointId y : r.inst.anchor) {
            const auto row = M.value(y);
            for (std::size_t c = 0; c < row.size(); ++c) {
                const bool ok = c < r.phi.dim() ? oracle::bitwise_equal(row[c], r.phi.value(y)[c]) : row[c] == 0.0;
                if (!ok) {
                    out.pass = false;
                    out.detail = "instance " + std::to_string(i) + ": anchor row differs from (phi, 0)";
                    return out;
                }
            }
        }
        const double s = r.phi.scale;
        const double bound = std::min(s / 5.0, 9.0 * r.theta * s /
                                                   (200.0 * r.phi.claimed_distortion * std::sqrt(double(r.phi.dim()))));
        const double colip = oracle::ratios(r.inst.space, M).colip;
        worst = std::min(worst, colip / bound);
        if (colip < bound * (1 - 1e-9)) {
            out.pass = false;
            out.detail = "instance " + std::to_string(i) + fmt(": co-Lipschitz %.3g < %.3g", colip, bound);
            return out;
        }
    }
    out.detail = fmt("50 instances, worst colip/bound = %.3g", worst);
    return out;
}

Outcome base_case_lines() {
    Outcome out;
    for (std::size_t n = 3; n <= 40; ++n) {
        for (double alpha : {0.3, 0.5}) {
            const auto s = line(n);
            const auto b = base_case_embed(s, alpha);
            const auto e = oracle::ratios(s, b.map);
            if (e.colip < std::min(0.1, alpha) * (1 - 1e-9) || e.lip > std::sqrt(double(b.net.size())) * (1 + 1e-12)) {
                out.pass = false;
                out.detail = "n=" + std::to_string(n) + fmt(" alpha=%.1f: colip %.4g lip %.4g", alpha, e.colip, e.lip);
                return out;
            }
        }
    }
    out.detail = "76 line instances";
    return out;
}

// Chart checks need spaces free of k-point SRA(alpha) subsets that still carry
// (k-1)-point SRA(alpha/2) configurations: collinear sets for k = 3, small planar
// clouds for k = 4, larger clouds for k = 5.
struct ChartCase {
    FiniteMetricSpace space;
    double alpha;
    std::size_t k;
};

std::vector<ChartCase> chart_cases() {
    std::vector<ChartCase> cases;
    for (double alpha : {0.3, 0.5, 0.75}) {
        for (std::size_t n : {4, 8, 12}) cases.push_back({line(n), alpha, 3});
        for (std::uint64_t seed = 0; seed < 4; ++seed)
            cases.push_back({generate(GenSpec{Family::EuclideanCloud, 15, {}, 1, seed}), alpha, 3});
        for (std::size_t n : {6, 10})
            for (std::uint64_t seed = 0; seed < 6; ++seed)
                cases.push_back({generate(GenSpec{Family::EuclideanCloud, n, {}, 2, seed}), alpha, 4});
    }
    for (double alpha : {0.5, 0.75})
        for (std::uint64_t seed = 0; seed < 6; ++seed)
            cases.push_back({generate(GenSpec{Family::EuclideanCloud, 30, {}, 2, seed}), alpha, 5});
    return cases;
}

Outcome local_charts() {
    Outcome out;
    std::size_t charts[6] = {};
    double worst = 0.0;
    for (const auto& c : chart_cases()) {
        const auto& s = c.space;
        const double alpha = c.alpha;
        const std::size_t k = c.k;
        if (find_sra_subspace(s, {alpha, k})) continue; // outside the hypothesis
        for (std::size_t x = 0; x < s.size(); ++x) {
            const auto e = critical_radius(s, PointId{x}, {alpha, k});
            if (!e.witness) continue;
            const auto chart = local_chart_from_config(s, *e.witness, PointId{x}, alpha, k);
            const auto& m = chart.map;
            ++charts[k];
            for (std::size_t a = 0; a < m.size(); ++a)
                for (std::size_t b = a + 1; b < m.size(); ++b) {
                    double best = 0.0;
                    for (std::size_t i = 0; i < m.dim(); ++i)
                        best = std::max(best, std::fabs(m.row(a)[i] - m.row(b)[i]));
                    if (best < alpha * s.d(m.domain()[a], m.domain()[b]) * (1 - 1e-9)) {
                        out.pass = false;
                        out.detail = "coordinate bound fails at k=" + std::to_string(k);
                        return out;
                    }
                }
            if (m.size() >= 2) {
                const auto r = oracle::ratios(s, m);
                const double bound = std::sqrt(double(k - 2)) / alpha;
                worst = std::max(worst, r.lip / r.colip / bound);
                if (r.lip / r.colip > bound * (1 + 1e-9)) {
                    out.pass = false;
                    out.detail = "chart distortion too large at k=" + std::to_string(k);
                    return out;
                }
            }
        }
    }
    out.pass = charts[3] > 0 && charts[4] > 0 && charts[5] > 0;
    out.detail = "charts checked: k=3: " + std::to_string(charts[3]) + ", k=4: " + std::to_string(charts[4]) +
                 ", k=5: " + std::to_string(charts[5]) + fmt(", worst distortion/bound %.3g", worst);
    return out;
}

std::vector<GenSpec> end_to_end_specs() {
    std::vector<GenSpec> specs;
    for (std::size_t n : {2, 5, 12, 25}) specs.push_back(GenSpec{Family::Line, n, {}, {}, 0});
    for (double e : {0.3, 0.5, 0.8}) specs.push_back(GenSpec{Family::SnowflakeLine, 10, e, {}, 0});
    for (std::uint64_t seed = 0; seed < 8; ++seed)
        specs.push_back(GenSpec{Family::EuclideanCloud, 10 + 4 * seed, {}, 1 + seed % 3, seed});
    specs.push_back(GenSpec{Family::GridL1, 3, {}, 2, 0});
    specs.push_back(GenSpec{Family::GridL1, 2, {}, 3, 0});
    return specs;
}

Outcome end_to_end(Clock::time_point suite_start) {
    Outcome out;
    std::size_t runs = 0, nontrivial = 0;
    double worst = 0.0;
    for (const auto& spec : end_to_end_specs()) {
        const auto s = generate(spec);
        for (double alpha : {0.5, 0.75}) {
            const std::size_t k = sra_free_parameter(s, alpha);
            const auto e = embed(s, k, alpha);
            ++runs;
            if (s.size() < 2) continue;
            for (const auto& lv : e.constants.levels) nontrivial += (!lv.base && !lv.degenerate);
            const double measured = distortion_audit(s, e.map).distortion;
            const double bound = theoretical_bounds(e.constants);
            worst = std::max(worst, measured / bound);
            if (measured > bound * (1 + 1e-9)) {
                out.pass = false;
                out.detail = to_string(spec.family) + " n=" + std::to_string(spec.n) +
                             fmt(": distortion %.4g > bound %.4g", measured, bound);
                return out;
            }
        }
    }
    const double t = seconds_since(suite_start);
    out.pass = t < 300.0 && nontrivial > 0;
    out.detail = std::to_string(runs) + " embeddings, " + std::to_string(nontrivial) +
                 " non-degenerate extension levels, " + fmt("worst measured/bound %.3g, suite %.1fs (< 300s)", worst, t);
    return out;
}

Outcome determinism() {
    Outcome out;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("sraembed_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string space = (dir / "space.json").string();
    io::write_file(space, io::space_to_json(generate(GenSpec{Family::EuclideanCloud, 30, {}, 2, 7})));
    std::string contents[2][2];
    for (int run = 0; run < 2; ++run) {
        const std::string csv = (dir / ("e" + std::to_string(run) + ".csv")).string();
        const std::string led = (dir / ("l" + std::to_string(run) + ".json")).string();
        std::ostringstream o, e;
        const int code = run_cli({"sraembed", "embed", space, "--alpha", "0.75", "-o", csv, "--ledger", led}, o, e);
        if (code != 0) {
            out.pass = false;
            out.detail = "embed exited " + std::to_string(code) + ": " + e.str();
            fs::remove_all(dir);
            return out;
        }
        contents[run][0] = io::read_file(csv);
        contents[run][1] = io::read_file(led);
    }
    fs::remove_all(dir);
    out.pass = contents[0][0] == contents[1][0] && contents[0][1] == contents[1][1] && !contents[0][0].empty();
    out.detail = out.pass ? "CSV and ledger byte-identical across two runs" : "outputs differ between runs";
    return out;
}

} // namespace

int main() {
    const auto suite_start = Clock::now();
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "sra-search-matches-exhaustive", sra_oracle_equivalence);
    report(2, "snowflake-full-witness", snowflake_witness);
    report(3, "mcshane-contract", mcshane_contract);
    report(4, "far-pair-lower-bound", far_pair_bound);

    std::vector<PlanarRun> runs;
    double build_seconds = 0.0;
    try {
        const auto t0 = Clock::now();
        runs = planar_runs();
        build_seconds = seconds_since(t0);
    } catch (const std::exception& e) {
        std::printf("planar instance construction failed: %s\n", e.what());
    }
    report(5, "assouad-map-guarantees", [&] {
        if (runs.size() != 50) return Outcome{false, "planar instances unavailable"};
        return assouad_conclusions(runs, build_seconds);
    });
    report(6, "extension-anchor-and-colipschitz", [&] {
        if (runs.size() != 50) return Outcome{false, "planar instances unavailable"};
        return composite_extension(runs);
    });
    report(7, "base-case-lines", base_case_lines);
    report(8, "local-chart-bounds", local_charts);
    report(9, "end-to-end-distortion", [&] { return end_to_end(suite_start); });
    report(10, "determinism", determinism);

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
