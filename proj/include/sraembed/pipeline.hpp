#pragma once

#include "sraembed/assouad.hpp"
#include "sraembed/metric_space.hpp"
#include "sraembed/point_map.hpp"
#include "sraembed/sra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sraembed {

/// Distance map to the greedy maximal (diam/10)-separated net. Requires the space to
/// be free of 3-point SRA(alpha) subsets (NotSraFree otherwise). The returned map
/// has scale min{1/10, alpha} and claimed distortion sqrt(|net|) / scale.
struct BaseEmbedding {
    PointMap map;
    Subset net;
};

BaseEmbedding base_case_embed(const FiniteMetricSpace& space, double alpha);

/// Chart z -> (d(z, c))_{c in config, c != x} on the open ball B_{alpha R / 6}(x), where
/// R is the minimum pairwise distance of `config`. Requires x in config and config
/// SRA(alpha/2); `k`, when given, must equal |config| + 1 (ConfigWrongSize otherwise).
/// Scale alpha, distortion sqrt(k-2)/alpha.
LocalChart local_chart_from_config(const FiniteMetricSpace& space, const Subset& config, PointId x,
                                   double alpha, std::optional<std::size_t> k = std::nullopt);

struct ExtensionResult {
    PointMap map; // (phi_1, s * Phi), total
    PointMap mcshane_part;
    AssouadMap assouad;
    ScaleFunction scale_function;
    double zeta = 1.0;
    double input_scale = 1.0;
    double input_distortion = 1.0;
    bool degenerate = false; // anchor set is the whole space
};

/// Extends a bi-Lipschitz map on `anchor` to the whole space as (phi_1, s Phi), with
/// phi_1 the McShane extension (constant dist(phi) s), f = theta dist(., anchor), and
/// zeta = 5 dist(phi) sqrt(n) / theta. The result claims scale
/// min{s/5, 9 theta s / (200 dist(phi) sqrt(n))}; when the anchor is the whole space the
/// input constants carry over unchanged. A zeta override must not be smaller than
/// the default (InvalidArgument).
ExtensionResult extend_embedding(const FiniteMetricSpace& space, const Subset& anchor,
                                 const PointMap& phi, const ChartProvider& provider, double theta,
                                 double chart_distortion, std::size_t nbar,
                                 std::optional<std::size_t> lambda = std::nullopt,
                                 std::optional<double> zeta_override = std::nullopt);

/// One recursion level of the pipeline, from the base (k = 3) upwards.
struct LevelRecord {
    std::size_t k = 3;
    double alpha = 0.5;
    std::size_t points = 0;
    bool base = false;
    std::size_t base_net_size = 0; // base level only
    std::size_t core_size = 0;     // |X'|, extension levels only
    bool degenerate = false;       // X' = X
    double theta = 0.0;
    double zeta = 0.0;
    int M = 0;
    int j = 0;
    std::size_t nbar = 0;
    double chart_distortion = 0.0;
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
    double scale = 0.0;
    double claimed_distortion = 0.0;
    std::optional<double> measured_lipschitz;
    std::optional<double> measured_colipschitz;
    std::optional<double> measured_distortion;
    double theoretical_bound = 0.0;
    std::vector<std::string> warnings;
};

struct PipelineConstants {
    std::size_t k = 3;
    double alpha = 0.5;
    std::vector<LevelRecord> levels;
};

struct EmbedResult {
    PointMap map;
    PipelineConstants constants;
};

/// Embeds a space free of k-point SRA(alpha) subsets (checked at every level;
/// NotSraFree carries the witness and level). k = 3 is the base case; otherwise the
/// core subset X' is embedded recursively with (k-1, alpha/2) and extended.
EmbedResult embed(const FiniteMetricSpace& space, std::size_t k, double alpha);

/// sqrt(net) * max{10, 1/alpha}.
double base_distortion_bound(std::size_t net_size, double alpha);

/// Scale and distortion claimed after one non-degenerate extension step.
struct StepBound {
    double scale = 0.0;
    double lipschitz = 0.0;
    double distortion = 0.0;
};

/// scale' = min{s/5, 9 s / (40 zeta)}, Lipschitz sqrt((sqrt(n) D s)^2 + (s 110 D_chart sqrt((nbar+1) M j))^2).
StepBound extension_step_bound(double scale, double distortion, std::size_t input_dim, double zeta,
                               double chart_distortion, std::size_t nbar, int M, int j);

/// Distortion bound of the final map, composed level by level from the recorded
/// net sizes, palettes, and dimensions.
double theoretical_bounds(const PipelineConstants& constants);

} // namespace sraembed
