#include "sraembed/lipschitz.hpp"

#include "sraembed/errors.hpp"
#include "sraembed/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sraembed {

namespace {

// Relative slack on the coordinate Lipschitz precondition; inputs typically come
// from floating-point distance maps whose exact constants are attained.
constexpr double kPreconditionSlack = 1e-12;

} // namespace

PointMap mcshane_extend(const FiniteMetricSpace& space, const PointMap& partial, double lip) {
    if (!(lip > 0.0)) throw Error(ErrorKind::InvalidArgument, "Lipschitz constant must be > 0");
    if (partial.size() == 0) throw Error(ErrorKind::InvalidArgument, "cannot extend an empty map");
    check_subset(space, partial.domain());

    const std::size_t m = partial.size();
    const std::size_t dim = partial.dim();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const double limit =
                lip * space.d(partial.domain()[a], partial.domain()[b]) * (1.0 + kPreconditionSlack);
            for (std::size_t c = 0; c < dim; ++c) {
                if (std::fabs(partial.row(a)[c] - partial.row(b)[c]) > limit)
                    throw Error(ErrorKind::CoordinateNotLipschitz,
                                "coordinate " + std::to_string(c) + " of the partial map is not " +
                                    std::to_string(lip) + "-Lipschitz",
                                {partial.domain()[a].value, partial.domain()[b].value, c});
            }
        }
    }

    const std::size_t n = space.size();
    PointMap out(Subset::all(n), dim);
    parallel_for(n, [&](std::size_t x) {
        auto dst = out.row(x);
        if (partial.has(PointId{x})) {
            const auto src = partial.value(PointId{x});
            std::copy(src.begin(), src.end(), dst.begin());
            return;
        }
        std::fill(dst.begin(), dst.end(), std::numeric_limits<double>::infinity());
        for (std::size_t a = 0; a < m; ++a) {
            const double d = space.d(PointId{x}, partial.domain()[a]);
            const auto src = partial.row(a);
            // fma keeps one rounding per candidate, which matters for close pairs.
            for (std::size_t c = 0; c < dim; ++c) dst[c] = std::min(dst[c], std::fma(lip, d, src[c]));
        }
    });
    out.scale = partial.scale;
    out.claimed_distortion = partial.claimed_distortion;
    out.verified = false;
    return out;
}

FarPairReport far_pair_colipschitz_report(const FiniteMetricSpace& space, const PointMap& extended,
                                          const Subset& anchor, double s, double distortion,
                                          double nu, double K) {
    if (extended.size() != space.size())
        throw Error(ErrorKind::InvalidArgument, "far-pair report needs a total map");
    if (anchor.empty()) throw Error(ErrorKind::InvalidArgument, "anchor set must be nonempty");
    const std::size_t n = space.size();
    std::vector<double> to_anchor(n);
    for (std::size_t x = 0; x < n; ++x) to_anchor[x] = distance_to_set(space, PointId{x}, anchor);

    FarPairReport report;
    report.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double dist = space.d(a, b);
            if (!(dist > K * nu * std::max(to_anchor[a], to_anchor[b]))) continue;
            ++report.qualifying_pairs;
            const double ratio = euclidean_distance(extended.row(a), extended.row(b)) / (s * dist);
            if (ratio < report.min_ratio) {
                report.min_ratio = ratio;
                report.witness = std::make_pair(PointId{a}, PointId{b});
            }
        }
    }
    const double bound = 1.0 - 2.0 / (K * nu) - 2.0 * distortion / K;
    report.check = check_inequality("far-pair co-Lipschitz", bound, report.min_ratio,
                                    Direction::AtLeast);
    return report;
}

} // namespace sraembed
