#include "sraembed/assouad.hpp"

#include "sraembed/errors.hpp"
#include "sraembed/lipschitz.hpp"
#include "sraembed/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace sraembed {

namespace {

constexpr double kChartSlack = 1e-12;

double pow2(int k) { return std::ldexp(1.0, k); }

int floor_log2(double v) { return std::ilogb(v); }

int ceil_log2(double v) {
    const int e = std::ilogb(v);
    return v == pow2(e) ? e : e + 1;
}

int residue(int k, int M) { return ((k % M) + M) % M; }

} // namespace

ScaleFunction make_scale_function(const FiniteMetricSpace& space, std::vector<double> values,
                                  double gamma) {
    if (values.size() != space.size())
        throw Error(ErrorKind::InvalidArgument, "scale function needs one value per point");
    if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be > 0");
    for (std::size_t a = 0; a < values.size(); ++a) {
        if (!(values[a] >= 0.0) || !std::isfinite(values[a]))
            throw Error(ErrorKind::InvalidArgument, "scale function must be finite and >= 0", {a});
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            if (std::fabs(values[a] - values[b]) > gamma * space.d(a, b) * (1.0 + kChartSlack))
                throw Error(ErrorKind::InvalidArgument, "scale function is not gamma-Lipschitz",
                            {a, b});
        }
    }
    return ScaleFunction{std::move(values), gamma};
}

ScaleFunction build_scale_function(const FiniteMetricSpace& space, const Subset& anchor,
                                   double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "theta must lie in (0,1]");
    if (anchor.empty()) throw Error(ErrorKind::InvalidArgument, "anchor set must be nonempty");
    check_subset(space, anchor);
    std::vector<double> values(space.size());
    for (std::size_t x = 0; x < space.size(); ++x)
        values[x] = theta * distance_to_set(space, PointId{x}, anchor);
    return make_scale_function(space, std::move(values), 1.0);
}

std::vector<ScaleNet> build_scale_nets(const FiniteMetricSpace& space, const ScaleFunction& f) {
    double fmin = std::numeric_limits<double>::infinity();
    double fmax = 0.0;
    for (double v : f.values) {
        if (v > 0.0) {
            fmin = std::min(fmin, v);
            fmax = std::max(fmax, v);
        }
    }
    std::vector<ScaleNet> nets;
    if (fmax == 0.0) return nets;
    const int k_lo = floor_log2(fmin) - 2;
    const int k_hi = ceil_log2(fmax);
    for (int k = k_lo; k <= k_hi; ++k) {
        const double lo = pow2(k);
        const double hi = pow2(k + 2);
        std::vector<std::size_t> layer;
        for (std::size_t x = 0; x < f.values.size(); ++x)
            if (f.values[x] >= lo && f.values[x] <= hi) layer.push_back(x);
        if (layer.empty()) continue;
        nets.push_back(ScaleNet{k, greedy_maximal_separated(space, Subset::from_indices(layer), lo / 10.0)});
    }
    return nets;
}

ColoredScaleNets color_nets(const FiniteMetricSpace& space, std::vector<ScaleNet> nets, double zeta,
                            std::optional<std::size_t> lambda) {
    if (!(zeta >= 1.0)) throw Error(ErrorKind::InvalidArgument, "zeta must be >= 1");
    ColoredScaleNets out;
    out.colors.resize(nets.size());
    for (std::size_t i = 0; i < nets.size(); ++i) {
        const auto& members = nets[i].members;
        const double threshold = 10.0 * pow2(nets[i].k) * zeta;
        auto& colors = out.colors[i];
        colors.assign(members.size(), 0);
        for (std::size_t m = 0; m < members.size(); ++m) {
            std::vector<bool> used(m + 2, false);
            for (std::size_t p = 0; p < m; ++p)
                if (space.d(members[m], members[p]) < threshold &&
                    static_cast<std::size_t>(colors[p]) < used.size())
                    used[static_cast<std::size_t>(colors[p])] = true;
            int c = 1;
            while (used[static_cast<std::size_t>(c)]) ++c;
            colors[m] = c;
            out.palette = std::max(out.palette, c);
        }
    }
    if (lambda) {
        const double limit =
            std::ceil(std::pow(static_cast<double>(*lambda), 2.0 + std::log2(100.0 * zeta)));
        if (static_cast<double>(out.palette) > limit) {
            std::ostringstream os;
            os << "palette " << out.palette << " exceeds doubling bound " << limit;
            out.warnings.push_back(os.str());
        }
    }
    out.nets = std::move(nets);
    return out;
}

int modulus(double distortion, std::size_t nbar) {
    if (!(distortion >= 1.0)) throw Error(ErrorKind::InvalidArgument, "distortion must be >= 1");
    if (nbar < 1) throw Error(ErrorKind::InvalidArgument, "chart dimension must be >= 1");
    const double target = 440.0 * distortion * std::sqrt(static_cast<double>(nbar + 1));
    int M = static_cast<int>(std::ceil(std::log2(target)));
    while (pow2(M) < target) ++M;
    while (pow2(M - 1) >= target) --M;
    return std::max(8, M);
}

LocalChart normalize_chart(const LocalChart& chart) {
    if (!(chart.map.scale > 0.0))
        throw Error(ErrorKind::InvalidArgument, "chart scale must be > 0", {chart.center.value});
    LocalChart out = chart;
    if (chart.map.scale != 1.0) {
        out.map = scaled(chart.map, 1.0 / chart.map.scale);
        out.map.scale = 1.0;
    }
    return out;
}

LocalChart constant_chart(PointId x, std::size_t dim) {
    LocalChart chart;
    chart.center = x;
    chart.radius = 0.0;
    chart.dim = dim;
    chart.map = PointMap(Subset::from_ids({x}), dim);
    chart.distortion = 1.0;
    return chart;
}

ChartProvider coordinate_chart_provider(const FiniteMetricSpace& space,
                                        std::vector<double> coordinates, std::size_t coord_dim,
                                        std::function<double(PointId)> radius_of) {
    if (coordinates.size() != space.size() * coord_dim)
        throw Error(ErrorKind::InvalidArgument, "coordinate count does not match space size");
    return [&space, coords = std::move(coordinates), coord_dim,
            radius_of = std::move(radius_of)](PointId x) {
        LocalChart chart;
        chart.center = x;
        chart.radius = radius_of(x);
        chart.dim = coord_dim;
        const Subset dom = ball(space, x, chart.radius, BallKind::Closed);
        std::vector<double> values;
        values.reserve(dom.size() * coord_dim);
        for (PointId z : dom)
            for (std::size_t c = 0; c < coord_dim; ++c) values.push_back(coords[z.value * coord_dim + c]);
        chart.map = PointMap(dom, coord_dim, std::move(values));
        chart.distortion = 1.0;
        return chart;
    };
}

ChartProvider distance_chart_provider(const FiniteMetricSpace& space, std::size_t dim,
                                      std::function<double(PointId)> radius_of) {
    return [&space, dim, radius_of = std::move(radius_of)](PointId x) {
        LocalChart chart;
        chart.center = x;
        chart.radius = radius_of(x);
        chart.dim = dim;
        const Subset dom = ball(space, x, chart.radius, BallKind::Closed);
        if (dom.size() > dim)
            throw Error(ErrorKind::InvalidArgument,
                        "ball of " + std::to_string(dom.size()) + " points exceeds chart dimension " +
                            std::to_string(dim),
                        {x.value});
        PointMap map(dom, dim);
        for (std::size_t a = 0; a < dom.size(); ++a)
            for (std::size_t b = 0; b < dom.size(); ++b) map.row(a)[b] = space.d(dom[a], dom[b]);
        chart.map = std::move(map);
        chart.distortion = std::sqrt(static_cast<double>(dim));
        return chart;
    };
}

std::vector<double> hyperplane_isometry(std::size_t nbar) {
    const std::size_t rows = nbar + 1;
    std::vector<double> basis(rows * nbar, 0.0);
    std::vector<std::vector<double>> done;
    for (std::size_t c = 0; c < nbar; ++c) {
        std::vector<double> v(rows, 0.0);
        v[c] = 1.0;
        v[c + 1] = -1.0;
        for (const auto& u : done) {
            double dot = 0.0;
            for (std::size_t r = 0; r < rows; ++r) dot += v[r] * u[r];
            for (std::size_t r = 0; r < rows; ++r) v[r] -= dot * u[r];
        }
        const double norm = euclidean_norm(v);
        for (double& e : v) e /= norm;
        for (std::size_t r = 0; r < rows; ++r) basis[r * nbar + c] = v[r];
        done.push_back(std::move(v));
    }
    return basis;
}

PointMap build_bump_chart(const FiniteMetricSpace& space, PointId x, int k, const LocalChart& chart,
                          double distortion) {
    check_point(space, x);
    const std::size_t nbar = chart.dim;
    if (nbar < 1 || chart.map.dim() != nbar)
        throw Error(ErrorKind::InvalidArgument, "chart dimension mismatch", {x.value});
    const double inner_r = pow2(k - 1);
    if (chart.radius < inner_r || !chart.map.has(x))
        throw Error(ErrorKind::ChartTooSmall,
                    "chart radius " + std::to_string(chart.radius) + " < " + std::to_string(inner_r),
                    {x.value});

    const Subset inner = ball(space, x, inner_r, BallKind::Closed);
    for (PointId z : inner)
        if (!chart.map.has(z))
            throw Error(ErrorKind::ChartTooSmall, "chart domain misses a point of the inner ball",
                        {x.value, z.value});
    for (std::size_t a = 0; a < inner.size(); ++a) {
        for (std::size_t b = a + 1; b < inner.size(); ++b) {
            const double dist = space.d(inner[a], inner[b]);
            const double img = euclidean_distance(chart.map.value(inner[a]), chart.map.value(inner[b]));
            if (img < dist * (1.0 - kChartSlack))
                throw Error(ErrorKind::ChartNotNoncontracting, "chart contracts a pair",
                            {inner[a].value, inner[b].value});
            if (img > distortion * dist * (1.0 + kChartSlack))
                throw Error(ErrorKind::ChartDistortionExceeded, "chart expands a pair beyond D",
                            {inner[a].value, inner[b].value});
        }
    }

    const std::size_t out_dim = nbar + 1;
    const std::vector<double> A = hyperplane_isometry(nbar);
    const double center_coord = pow2(k) / std::sqrt(static_cast<double>(out_dim));
    const auto psi_x = chart.map.value(x);
    const double outer_r = 1.1 * inner_r;

    std::vector<std::size_t> dom;
    std::vector<double> values;
    for (std::size_t z = 0; z < space.size(); ++z) {
        const double dz = space.d(x.value, z);
        if (dz <= inner_r) {
            const auto psi_z = chart.map.value(PointId{z});
            dom.push_back(z);
            for (std::size_t r = 0; r < out_dim; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < nbar; ++c) acc += A[r * nbar + c] * (psi_z[c] - psi_x[c]);
                values.push_back(z == x.value ? center_coord : center_coord + acc);
            }
        } else if (dz >= outer_r) {
            dom.push_back(z);
            values.insert(values.end(), out_dim, 0.0);
        }
    }
    const PointMap partial(Subset::from_indices(dom), out_dim, std::move(values));
    return mcshane_extend(space, partial, 40.0 * distortion);
}

AssouadMap assemble_phi(const FiniteMetricSpace& space, const ScaleFunction& f,
                        const ChartProvider& provider, double distortion, std::size_t nbar,
                        double zeta, std::optional<std::size_t> lambda) {
    if (f.values.size() != space.size())
        throw Error(ErrorKind::InvalidArgument, "scale function size mismatch");
    if (f.gamma > 1.0)
        throw Error(ErrorKind::InvalidArgument, "rescale the scale function to gamma <= 1 first");
    if (!(zeta >= 1.0)) throw Error(ErrorKind::InvalidArgument, "zeta must be >= 1");

    AssouadMap out;
    out.nbar = nbar;
    out.distortion = distortion;
    out.zeta = zeta;
    out.M = modulus(distortion, nbar);
    out.coloring = color_nets(space, build_scale_nets(space, f), zeta, lambda);
    out.j = std::max(1, out.coloring.palette);
    out.warnings = out.coloring.warnings;

    // One chart per distinct center, shared by every scale the center appears in.
    std::map<std::size_t, std::size_t> chart_slot;
    std::vector<PointId> centers;
    for (const auto& net : out.coloring.nets)
        for (PointId x : net.members)
            if (chart_slot.emplace(x.value, centers.size()).second) centers.push_back(x);
    std::vector<LocalChart> charts(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        LocalChart chart = normalize_chart(provider(centers[i]));
        if (chart.center != centers[i] || chart.dim != nbar)
            throw Error(ErrorKind::InvalidArgument, "provider returned a chart for the wrong point or dimension",
                        {centers[i].value});
        if (chart.distortion > distortion * (1.0 + kChartSlack))
            throw Error(ErrorKind::ChartDistortionExceeded, "provider chart distortion exceeds D",
                        {centers[i].value});
        charts[i] = std::move(chart);
    }

    for (std::size_t i = 0; i < out.coloring.nets.size(); ++i) {
        const auto& net = out.coloring.nets[i];
        for (std::size_t m = 0; m < net.members.size(); ++m) {
            BumpChart b;
            b.k = net.k;
            b.center = net.members[m];
            b.color = out.coloring.colors[i][m];
            b.block = static_cast<std::size_t>(residue(net.k, out.M)) * static_cast<std::size_t>(out.j) +
                      static_cast<std::size_t>(b.color - 1);
            out.bumps.push_back(std::move(b));
        }
    }
    parallel_for(out.bumps.size(), [&](std::size_t i) {
        auto& b = out.bumps[i];
        b.values = build_bump_chart(space, b.center, b.k, charts[chart_slot.at(b.center.value)], distortion);
    });

    const std::size_t bd = out.block_dim();
    out.phi = PointMap(Subset::all(space.size()), bd * out.block_count());
    for (const auto& b : out.bumps) {
        for (std::size_t z = 0; z < space.size(); ++z) {
            auto dst = out.phi.row(z);
            const auto src = b.values.row(z);
            for (std::size_t c = 0; c < bd; ++c) dst[b.block * bd + c] += src[c];
        }
    }
    out.phi.scale = 1.0;
    out.phi.claimed_distortion = 1.0;
    return out;
}

double min_support_separation(const FiniteMetricSpace& space, const AssouadMap& result) {
    std::map<std::size_t, std::vector<std::size_t>> by_block;
    for (std::size_t i = 0; i < result.bumps.size(); ++i) by_block[result.bumps[i].block].push_back(i);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& [block, ids] : by_block) {
        for (std::size_t a = 0; a < ids.size(); ++a) {
            for (std::size_t b = a + 1; b < ids.size(); ++b) {
                const auto& p = result.bumps[ids[a]];
                const auto& q = result.bumps[ids[b]];
                const Subset sp = ball(space, p.center, 1.1 * pow2(p.k - 1), BallKind::Closed);
                const Subset sq = ball(space, q.center, 1.1 * pow2(q.k - 1), BallKind::Closed);
                const double scale = pow2(std::max(p.k, q.k));
                for (PointId z1 : sp)
                    for (PointId z2 : sq) worst = std::min(worst, space.d(z1, z2) / scale);
            }
        }
    }
    return worst;
}

std::vector<CheckRecord> audit_assouad(const FiniteMetricSpace& space, const ScaleFunction& f,
                                       const AssouadMap& result) {
    std::vector<CheckRecord> checks;
    const std::size_t n = space.size();
    const auto& nets = result.coloring.nets;

    double layer_violations = 0, maximality_violations = 0;
    double min_sep = std::numeric_limits<double>::infinity();
    double min_color_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nets.size(); ++i) {
        const int k = nets[i].k;
        const double r = pow2(k) / 10.0;
        const auto& members = nets[i].members;
        for (PointId x : members)
            if (!(f.values[x.value] >= pow2(k) && f.values[x.value] <= pow2(k + 2))) ++layer_violations;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const double dist = space.d(members[a], members[b]);
                min_sep = std::min(min_sep, dist / r);
                if (result.coloring.colors[i][a] == result.coloring.colors[i][b])
                    min_color_sep = std::min(min_color_sep, dist / (10.0 * pow2(k) * result.zeta));
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            if (!(f.values[x] >= pow2(k) && f.values[x] <= pow2(k + 2))) continue;
            if (!(distance_to_set(space, PointId{x}, members) < r)) ++maximality_violations;
        }
    }
    checks.push_back(check_inequality("net-layer-membership", 0.0, layer_violations, Direction::AtMost));
    checks.push_back(check_inequality("net-separation", 1.0, min_sep, Direction::AtLeast));
    checks.push_back(check_inequality("net-maximality", 0.0, maximality_violations, Direction::AtMost));
    checks.push_back(check_inequality("coloring-separation", 1.0, min_color_sep, Direction::AtLeast));

    const std::size_t bd = result.block_dim();
    double max_bump_center_error = 0.0;
    for (const auto& b : result.bumps)
        max_bump_center_error = std::max(
            max_bump_center_error,
            std::fabs(euclidean_norm(b.values.row(b.center.value)) - pow2(b.k)) / pow2(b.k));
    checks.push_back(
        check_inequality("bump-center-norm-relative-error", 1e-12, max_bump_center_error, Direction::AtMost));

    double zero_norm = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        if (f.values[x] == 0.0) zero_norm = std::max(zero_norm, euclidean_norm(result.phi.row(x)));
    checks.push_back(check_inequality("Phi-zero-where-f-zero", 0.0, zero_norm, Direction::AtMost));

    const std::size_t blocks = result.block_count();
    std::vector<double> block_lip(blocks, 0.0);
    double phi_lip = 0.0;
    double near_min = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double dist = space.d(a, b);
            const auto ra = result.phi.row(a);
            const auto rb = result.phi.row(b);
            double total = 0.0;
            for (std::size_t q = 0; q < blocks; ++q) {
                double acc = 0.0;
                for (std::size_t c = 0; c < bd; ++c) {
                    const double diff = ra[q * bd + c] - rb[q * bd + c];
                    acc += diff * diff;
                }
                total += acc;
                block_lip[q] = std::max(block_lip[q], std::sqrt(acc) / dist);
            }
            const double ratio = std::sqrt(total) / dist;
            phi_lip = std::max(phi_lip, ratio);
            if (dist <= result.zeta * std::max(f.values[a], f.values[b]))
                near_min = std::min(near_min, ratio);
        }
    }
    const double sq_bd = std::sqrt(static_cast<double>(bd));
    const double D = result.distortion;
    checks.push_back(check_inequality("block-Lipschitz", 110.0 * D * sq_bd,
                                      *std::max_element(block_lip.begin(), block_lip.end()),
                                      Direction::AtMost));
    checks.push_back(check_inequality(
        "Phi-Lipschitz", 110.0 * D * std::sqrt(static_cast<double>(bd * blocks)), phi_lip,
        Direction::AtMost));
    checks.push_back(check_inequality("near-pair-co-Lipschitz", 9.0 / (40.0 * result.zeta), near_min,
                                      Direction::AtLeast));
    checks.push_back(check_inequality("support-separation", 0.4, min_support_separation(space, result),
                                      Direction::AtLeast));
    return checks;
}

} // namespace sraembed
