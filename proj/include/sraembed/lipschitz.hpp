#pragma once

#include "sraembed/audit.hpp"
#include "sraembed/metric_space.hpp"
#include "sraembed/point_map.hpp"

#include <optional>
#include <utility>

namespace sraembed {

/// Coordinate-wise McShane extension of `partial` to the whole space:
///   F_i(x) = min_{y in dom} (partial_i(y) + L d(x, y)),
/// with F == partial on the domain (copied bitwise). The result is sqrt(dim) L-Lipschitz.
/// Throws CoordinateNotLipschitz (witness: i, j, coordinate) if some coordinate of
/// `partial` is not L-Lipschitz on its domain, and InvalidArgument for L <= 0 or an
/// empty domain.
PointMap mcshane_extend(const FiniteMetricSpace& space, const PointMap& partial, double lip);

/// Lower co-Lipschitz ratio over far pairs, i.e. pairs with
/// d(x1,x2) > K nu max{d(x1,Y), d(x2,Y)}; compared against 1 - 2/(K nu) - 2D/K.
struct FarPairReport {
    std::size_t qualifying_pairs = 0;
    double min_ratio = 0.0; // min |dF| / (s d) over qualifying pairs, +inf if none
    std::optional<std::pair<PointId, PointId>> witness;
    CheckRecord check;
};

FarPairReport far_pair_colipschitz_report(const FiniteMetricSpace& space, const PointMap& extended,
                                          const Subset& anchor, double s, double distortion,
                                          double nu, double K);

} // namespace sraembed
