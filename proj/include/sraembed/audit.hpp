#pragma once

#include "sraembed/metric_space.hpp"
#include "sraembed/point_map.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sraembed {

enum class Direction { AtMost, AtLeast };

/// Relative slack applied to proved inequalities; absorbs floating-point rounding only.
inline constexpr double kBoundSlack = 1e-9;

struct CheckRecord {
    std::string name;
    double bound = 0.0;
    double measured = 0.0;
    Direction direction = Direction::AtMost;
    bool pass = false;
};

/// measured <= bound (AtMost) or measured >= bound (AtLeast), with relative slack.
CheckRecord check_inequality(std::string name, double bound, double measured, Direction direction,
                             double slack = kBoundSlack);

struct AuditReport {
    double lipschitz = 0.0;
    double colipschitz = 0.0;
    double distortion = 1.0;
    std::pair<PointId, PointId> witness_max{};
    std::pair<PointId, PointId> witness_min{};
    std::vector<CheckRecord> checks;

    bool all_checks_pass() const;
};

/// Exhaustive scan of |f(x)-f(y)| / d(x,y) over all domain pairs. Ties keep the
/// first pair in (i, j) row-major order. Throws DegenerateDomain for < 2 points.
AuditReport distortion_audit(const FiniteMetricSpace& space, const PointMap& map);

} // namespace sraembed
