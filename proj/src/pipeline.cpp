#include "sraembed/pipeline.hpp"

#include "sraembed/audit.hpp"
#include "sraembed/errors.hpp"
#include "sraembed/lipschitz.hpp"

#include <algorithm>
#include <cmath>

namespace sraembed {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0,1)");
}

std::vector<std::size_t> indices_of(const Subset& s) { return s.indices(); }

void record_measurements(const FiniteMetricSpace& space, const PointMap& map, LevelRecord& rec) {
    if (map.size() < 2) return;
    const AuditReport audit = distortion_audit(space, map);
    rec.measured_lipschitz = audit.lipschitz;
    rec.measured_colipschitz = audit.colipschitz;
    rec.measured_distortion = audit.distortion;
}

} // namespace

BaseEmbedding base_case_embed(const FiniteMetricSpace& space, double alpha) {
    check_alpha(alpha);
    const std::size_t n = space.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "base case needs a nonempty space");
    if (auto witness = find_sra_subspace(space, SraParams{alpha, 3}))
        throw Error(ErrorKind::NotSraFree, "space contains a 3-point SRA(alpha) subset",
                    indices_of(*witness), 3);

    BaseEmbedding out;
    if (n == 1) {
        out.net = Subset::all(1);
    } else {
        out.net = greedy_maximal_separated(space, Subset::all(n), space.diameter() / 10.0);
    }
    const std::size_t m = out.net.size();
    out.map = PointMap(Subset::all(n), m);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t i = 0; i < m; ++i) out.map.row(y)[i] = space.d(PointId{y}, out.net[i]);
    out.map.scale = std::min(0.1, alpha);
    out.map.claimed_distortion = base_distortion_bound(m, alpha);
    out.map.verified = true;
    return out;
}

LocalChart local_chart_from_config(const FiniteMetricSpace& space, const Subset& config, PointId x,
                                   double alpha, std::optional<std::size_t> k) {
    check_alpha(alpha);
    check_subset(space, config);
    if (k && config.size() + 1 != *k)
        throw Error(ErrorKind::ConfigWrongSize,
                    "configuration has " + std::to_string(config.size()) + " points, expected " +
                        std::to_string(*k - 1),
                    config.indices());
    if (config.size() < 2 || !config.contains(x))
        throw Error(ErrorKind::ConfigWrongSize, "configuration needs >= 2 points including the center",
                    config.indices());
    if (!subset_is_sra(space, config, alpha / 2.0))
        throw Error(ErrorKind::ConfigNotSra, "configuration is not SRA(alpha/2)", config.indices());

    const double R = min_pairwise_distance(space, config);
    const double theta = alpha / 6.0;
    std::vector<PointId> others;
    for (PointId c : config)
        if (c != x) others.push_back(c);

    LocalChart chart;
    chart.center = x;
    chart.radius = theta * R;
    chart.dim = others.size();
    const Subset dom = ball(space, x, chart.radius, BallKind::Open);
    PointMap map(dom, chart.dim);
    for (std::size_t a = 0; a < dom.size(); ++a)
        for (std::size_t c = 0; c < others.size(); ++c) map.row(a)[c] = space.d(dom[a], others[c]);
    map.scale = alpha;
    map.claimed_distortion = std::sqrt(static_cast<double>(chart.dim)) / alpha;
    chart.distortion = map.claimed_distortion;
    chart.map = std::move(map);
    return chart;
}

ExtensionResult extend_embedding(const FiniteMetricSpace& space, const Subset& anchor,
                                 const PointMap& phi, const ChartProvider& provider, double theta,
                                 double chart_distortion, std::size_t nbar,
                                 std::optional<std::size_t> lambda, std::optional<double> zeta_override) {
    if (!(phi.domain() == anchor))
        throw Error(ErrorKind::InvalidArgument, "map domain must equal the anchor set");
    if (phi.dim() == 0) throw Error(ErrorKind::InvalidArgument, "map dimension must be >= 1");
    const double s = phi.scale;
    const double dist_phi = phi.claimed_distortion;
    const double root_n = std::sqrt(static_cast<double>(phi.dim()));

    ExtensionResult out;
    out.input_scale = s;
    out.input_distortion = dist_phi;
    out.degenerate = anchor.size() == space.size();
    out.zeta = 5.0 * dist_phi * root_n / theta;
    if (zeta_override) {
        if (*zeta_override < out.zeta)
            throw Error(ErrorKind::InvalidArgument, "zeta override below 5 dist(phi) sqrt(n) / theta");
        out.zeta = *zeta_override;
    }
    out.mcshane_part = mcshane_extend(space, phi, dist_phi * s);
    out.scale_function = build_scale_function(space, anchor, theta);
    out.assouad = assemble_phi(space, out.scale_function, provider, chart_distortion, nbar, out.zeta, lambda);
    out.map = concatenate(out.mcshane_part, scaled(out.assouad.phi, s));

    if (out.degenerate) {
        out.map.scale = s;
        out.map.claimed_distortion = dist_phi;
    } else {
        const StepBound step = extension_step_bound(s, dist_phi, phi.dim(), out.zeta, chart_distortion,
                                                    nbar, out.assouad.M, out.assouad.j);
        out.map.scale = step.scale;
        out.map.claimed_distortion = step.distortion;
    }
    out.map.verified = phi.verified;
    return out;
}

double base_distortion_bound(std::size_t net_size, double alpha) {
    return std::sqrt(static_cast<double>(net_size)) * std::max(10.0, 1.0 / alpha);
}

StepBound extension_step_bound(double scale, double distortion, std::size_t input_dim, double zeta,
                               double chart_distortion, std::size_t nbar, int M, int j) {
    const double root_n = std::sqrt(static_cast<double>(input_dim));
    StepBound b;
    b.scale = std::min(scale / 5.0, 9.0 * scale / (40.0 * zeta));
    const double lip_mcshane = root_n * distortion * scale;
    const double lip_phi = scale * 110.0 * chart_distortion *
                           std::sqrt(static_cast<double>((nbar + 1) * static_cast<std::size_t>(M) *
                                                         static_cast<std::size_t>(j)));
    b.lipschitz = std::hypot(lip_mcshane, lip_phi);
    b.distortion = b.lipschitz / b.scale;
    return b;
}

double theoretical_bounds(const PipelineConstants& constants) {
    if (constants.levels.empty() || !constants.levels.front().base)
        throw Error(ErrorKind::InvalidArgument, "constants must start with a base level");
    const LevelRecord& base = constants.levels.front();
    double scale = std::min(0.1, base.alpha);
    double distortion = base_distortion_bound(base.base_net_size, base.alpha);
    for (std::size_t i = 1; i < constants.levels.size(); ++i) {
        const LevelRecord& lv = constants.levels[i];
        if (lv.degenerate) continue;
        const StepBound step = extension_step_bound(scale, distortion, lv.input_dim, lv.zeta,
                                                    lv.chart_distortion, lv.nbar, lv.M, lv.j);
        scale = step.scale;
        distortion = step.distortion;
    }
    return distortion;
}

EmbedResult embed(const FiniteMetricSpace& space, std::size_t k, double alpha) {
    check_alpha(alpha);
    if (k < 3) throw Error(ErrorKind::InvalidArgument, "k must be >= 3");
    if (space.size() == 0) throw Error(ErrorKind::InvalidArgument, "cannot embed an empty space");

    EmbedResult out;
    out.constants.k = k;
    out.constants.alpha = alpha;

    if (k == 3) {
        BaseEmbedding base = base_case_embed(space, alpha);
        LevelRecord rec;
        rec.k = 3;
        rec.alpha = alpha;
        rec.points = space.size();
        rec.base = true;
        rec.base_net_size = base.net.size();
        rec.output_dim = base.map.dim();
        rec.scale = base.map.scale;
        rec.claimed_distortion = base.map.claimed_distortion;
        record_measurements(space, base.map, rec);
        out.map = std::move(base.map);
        out.constants.levels.push_back(std::move(rec));
        out.constants.levels.back().theoretical_bound = theoretical_bounds(out.constants);
        return out;
    }

    if (auto witness = find_sra_subspace(space, SraParams{alpha, k}))
        throw Error(ErrorKind::NotSraFree,
                    "space contains a " + std::to_string(k) + "-point SRA(alpha) subset",
                    witness->indices(), static_cast<int>(k));

    const SraParams params{alpha, k};
    const CoreSubset core = build_core_subset(space, params);
    const FiniteMetricSpace sub = restrict_to(space, core.members);
    EmbedResult inner;
    try {
        inner = embed(sub, k - 1, alpha / 2.0);
    } catch (const Error& e) {
        // Report witnesses in this level's indices.
        std::vector<std::size_t> witness;
        for (std::size_t i : e.witness())
            witness.push_back(i < core.members.size() ? core.members[i].value : i);
        throw Error(e.kind(), e.message(), std::move(witness), e.level());
    }

    // Lift the recursive map from indices of the restriction to indices of `space`.
    PointMap lifted(core.members, inner.map.dim(), inner.map.values());
    lifted.scale = inner.map.scale;
    lifted.claimed_distortion = inner.map.claimed_distortion;
    lifted.verified = inner.map.verified;

    const std::size_t nbar = k - 2;
    const double theta = alpha / 6.0;
    const double chart_distortion = std::sqrt(static_cast<double>(nbar)) / alpha;
    const ChartProvider provider = [&](PointId x) {
        if (core.members.contains(x)) return constant_chart(x, nbar);
        const auto& entry = core.radii[x.value];
        if (!entry.witness)
            throw Error(ErrorKind::InvalidArgument, "excluded point has no critical configuration",
                        {x.value}, static_cast<int>(k));
        return local_chart_from_config(space, *entry.witness, x, alpha, k);
    };

    ExtensionResult ext =
        extend_embedding(space, core.members, lifted, provider, theta, chart_distortion, nbar);

    out.constants.levels = std::move(inner.constants.levels);
    LevelRecord rec;
    rec.k = k;
    rec.alpha = alpha;
    rec.points = space.size();
    rec.core_size = core.members.size();
    rec.degenerate = ext.degenerate;
    rec.theta = theta;
    rec.zeta = ext.zeta;
    rec.M = ext.assouad.M;
    rec.j = ext.assouad.j;
    rec.nbar = nbar;
    rec.chart_distortion = chart_distortion;
    rec.input_dim = lifted.dim();
    rec.output_dim = ext.map.dim();
    rec.scale = ext.map.scale;
    rec.claimed_distortion = ext.map.claimed_distortion;
    rec.warnings = core.warnings;
    rec.warnings.insert(rec.warnings.end(), ext.assouad.warnings.begin(), ext.assouad.warnings.end());
    record_measurements(space, ext.map, rec);
    out.constants.levels.push_back(std::move(rec));
    out.constants.levels.back().theoretical_bound = theoretical_bounds(out.constants);
    out.map = std::move(ext.map);
    return out;
}

} // namespace sraembed
