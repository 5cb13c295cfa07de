#include "sraembed/audit.hpp"

#include "sraembed/errors.hpp"
#include "sraembed/parallel.hpp"

#include <cmath>
#include <limits>

namespace sraembed {

CheckRecord check_inequality(std::string name, double bound, double measured, Direction direction,
                             double slack) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.bound = bound;
    rec.measured = measured;
    rec.direction = direction;
    const double tol = slack * std::fabs(bound);
    rec.pass = direction == Direction::AtMost ? measured <= bound + tol : measured >= bound - tol;
    return rec;
}

bool AuditReport::all_checks_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

struct RowExtremes {
    double max_ratio = -1.0;
    double min_ratio = std::numeric_limits<double>::infinity();
    std::size_t max_j = 0;
    std::size_t min_j = 0;
};

} // namespace

AuditReport distortion_audit(const FiniteMetricSpace& space, const PointMap& map) {
    const std::size_t m = map.size();
    if (m < 2) throw Error(ErrorKind::DegenerateDomain, "audit needs at least two domain points");
    check_subset(space, map.domain());

    std::vector<RowExtremes> rows(m);
    parallel_for(m - 1, [&](std::size_t i) {
        RowExtremes& r = rows[i];
        for (std::size_t j = i + 1; j < m; ++j) {
            const double ratio = euclidean_distance(map.row(i), map.row(j)) /
                                 space.d(map.domain()[i], map.domain()[j]);
            if (ratio > r.max_ratio) {
                r.max_ratio = ratio;
                r.max_j = j;
            }
            if (ratio < r.min_ratio) {
                r.min_ratio = ratio;
                r.min_j = j;
            }
        }
    });

    AuditReport report;
    report.lipschitz = -1.0;
    report.colipschitz = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (rows[i].max_ratio > report.lipschitz) {
            report.lipschitz = rows[i].max_ratio;
            report.witness_max = {map.domain()[i], map.domain()[rows[i].max_j]};
        }
        if (rows[i].min_ratio < report.colipschitz) {
            report.colipschitz = rows[i].min_ratio;
            report.witness_min = {map.domain()[i], map.domain()[rows[i].min_j]};
        }
    }
    report.distortion = report.colipschitz > 0.0 ? report.lipschitz / report.colipschitz
                                                 : std::numeric_limits<double>::infinity();
    return report;
}

} // namespace sraembed
