#pragma once

#include "sraembed/audit.hpp"
#include "sraembed/metric_space.hpp"
#include "sraembed/point_map.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sraembed {

/// Nonnegative function on the points with Lipschitz constant `gamma`.
struct ScaleFunction {
    std::vector<double> values;
    double gamma = 1.0;
};

/// Validates |f(x) - f(y)| <= gamma d(x,y) on all pairs; throws InvalidArgument otherwise.
ScaleFunction make_scale_function(const FiniteMetricSpace& space, std::vector<double> values,
                                  double gamma);

/// f(x) = theta dist(x, Y), gamma = 1.
ScaleFunction build_scale_function(const FiniteMetricSpace& space, const Subset& anchor,
                                   double theta);

/// Maximal 2^k/10-separated subset of the layer {x : 2^k <= f(x) <= 2^(k+2)}.
struct ScaleNet {
    int k = 0;
    Subset members;
};

/// Nets for every dyadic scale whose layer is nonempty, ascending in k.
std::vector<ScaleNet> build_scale_nets(const FiniteMetricSpace& space, const ScaleFunction& f);

struct ColoredScaleNets {
    std::vector<ScaleNet> nets;
    std::vector<std::vector<int>> colors; // colors[i][m]: color of nets[i].members[m], 1-based
    int palette = 0;                      // largest color used
    std::vector<std::string> warnings;
};

/// Greedy coloring of each net's conflict graph (edge iff d < 10 2^k zeta). When a
/// doubling constant is given, warns if the palette exceeds ceil(lambda^(2+log2(100 zeta))).
ColoredScaleNets color_nets(const FiniteMetricSpace& space, std::vector<ScaleNet> nets, double zeta,
                            std::optional<std::size_t> lambda = std::nullopt);

/// max{8, ceil(log2(440 D sqrt(nbar+1)))}, so that 2^-M 44 D sqrt(nbar+1) <= 1/10.
int modulus(double distortion, std::size_t nbar);

/// A chart of the ball around `center`: `map` is defined on the ball, has `dim`
/// coordinates, lower factor map.scale, and distortion at most `distortion`.
struct LocalChart {
    PointId center{};
    double radius = 0.0;
    std::size_t dim = 0;
    PointMap map;
    double distortion = 1.0;
};

/// Supplies a chart for every point; all charts share one dimension.
using ChartProvider = std::function<LocalChart(PointId)>;

/// Divides chart values by their lower factor so the chart is non-contracting.
LocalChart normalize_chart(const LocalChart& chart);

/// Chart on the singleton {x} with zero coordinates.
LocalChart constant_chart(PointId x, std::size_t dim);

/// Charts from explicit Euclidean coordinates (row-major, `coord_dim` per point),
/// on the closed ball of radius `radius_of(x)`. Distortion 1 when the space metric
/// is the Euclidean distance of the coordinates.
ChartProvider coordinate_chart_provider(const FiniteMetricSpace& space,
                                        std::vector<double> coordinates, std::size_t coord_dim,
                                        std::function<double(PointId)> radius_of);

/// Distance-map charts z -> (d(z, b))_{b in B} on the closed ball B of radius
/// radius_of(x), zero-padded to `dim` coordinates. Each chart is non-contracting
/// with distortion at most sqrt(|B|) <= sqrt(dim); throws InvalidArgument if a ball
/// has more than `dim` points.
ChartProvider distance_chart_provider(const FiniteMetricSpace& space, std::size_t dim,
                                      std::function<double(PointId)> radius_of);

/// Orthonormal basis (columns, row-major (nbar+1) x nbar) of the hyperplane
/// {sum y_i = 0} in R^(nbar+1), by Gram-Schmidt on e_i - e_(i+1).
std::vector<double> hyperplane_isometry(std::size_t nbar);

/// The bump map P_x for x in N_k, total on the space, into R^(nbar+1):
/// c + A (psi(z) - psi(x)) on the closed ball of radius 2^(k-1) (c = 2^k/sqrt(nbar+1) (1,...,1)),
/// zero where d(x,z) >= (11/10) 2^(k-1), McShane-filled (constant 40 D per coordinate) between.
/// The chart must already be non-contracting.
PointMap build_bump_chart(const FiniteMetricSpace& space, PointId x, int k, const LocalChart& chart,
                          double distortion);

struct BumpChart {
    int k = 0;
    PointId center{};
    int color = 1;
    std::size_t block = 0; // residue(k) * palette + (color - 1)
    PointMap values;       // total map into R^(nbar+1)
};

struct AssouadMap {
    PointMap phi; // total, dimension (nbar+1) * M * j
    ColoredScaleNets coloring;
    int M = 8;
    int j = 1; // palette size, at least 1
    std::size_t nbar = 1;
    double distortion = 1.0;
    double zeta = 1.0;
    std::vector<BumpChart> bumps;
    std::vector<std::string> warnings;

    std::size_t block_count() const { return static_cast<std::size_t>(M) * static_cast<std::size_t>(j); }
    std::size_t block_dim() const { return nbar + 1; }
};

/// Builds nets, colors, bump charts, and sums them into M*j blocks of dimension nbar+1.
AssouadMap assemble_phi(const FiniteMetricSpace& space, const ScaleFunction& f,
                        const ChartProvider& provider, double distortion, std::size_t nbar,
                        double zeta, std::optional<std::size_t> lambda = std::nullopt);

/// Exhaustive audits of the construction's guarantees, each as a check record:
/// net layer/separation/maximality, coloring separation, Phi = 0 where f = 0,
/// block and total Lipschitz bounds, near-pair co-Lipschitz bound, and support
/// separation of same-block bump charts.
std::vector<CheckRecord> audit_assouad(const FiniteMetricSpace& space, const ScaleFunction& f,
                                       const AssouadMap& result);

/// Smallest d(z1,z2) / 2^max(k1,k2) over same-block bump pairs with distinct (k, center)
/// keys, z_i ranging over the closed support balls of radius (11/10) 2^(k_i - 1).
/// +inf when no such pair exists.
double min_support_separation(const FiniteMetricSpace& space, const AssouadMap& result);

} // namespace sraembed
