#include "sraembed/metric_space.hpp"

#include "sraembed/errors.hpp"
#include "sraembed/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace sraembed {

Subset Subset::from_ids(std::vector<PointId> ids) {
    for (std::size_t i = 1; i < ids.size(); ++i) {
        if (!(ids[i - 1] < ids[i]))
            throw Error(ErrorKind::InvalidArgument, "subset members must be strictly increasing",
                        {ids[i - 1].value, ids[i].value});
    }
    Subset s;
    s.members_ = std::move(ids);
    return s;
}

Subset Subset::from_indices(std::span<const std::size_t> indices) {
    std::vector<PointId> ids;
    ids.reserve(indices.size());
    for (auto i : indices) ids.emplace_back(i);
    return from_ids(std::move(ids));
}

Subset Subset::from_unsorted(std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return from_indices(indices);
}

Subset Subset::all(std::size_t n) {
    Subset s;
    s.members_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.members_.emplace_back(i);
    return s;
}

bool Subset::contains(PointId p) const {
    return std::binary_search(members_.begin(), members_.end(), p);
}

std::vector<std::size_t> Subset::indices() const {
    std::vector<std::size_t> out;
    out.reserve(members_.size());
    for (auto p : members_) out.push_back(p.value);
    return out;
}

std::optional<PointId> FiniteMetricSpace::find_label(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return PointId{i};
    return std::nullopt;
}

double FiniteMetricSpace::diameter() const noexcept {
    double diam = 0.0;
    for (double v : dist_) diam = std::max(diam, v);
    return diam;
}

namespace {

std::string pair_text(std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "(" << i << "," << j << ")";
    return os.str();
}

} // namespace

FiniteMetricSpace validate_metric(const std::vector<std::vector<double>>& matrix,
                                  std::optional<std::vector<std::string>> labels) {
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i].size() != n)
            throw Error(ErrorKind::NotSquare,
                        "row " + std::to_string(i) + " has " + std::to_string(matrix[i].size()) +
                            " entries, expected " + std::to_string(n),
                        {i});
    }
    if (labels && labels->size() != n)
        throw Error(ErrorKind::InvalidArgument, "label count does not match matrix size");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(matrix[i][j]))
                throw Error(ErrorKind::NonFinite, "entry " + pair_text(i, j) + " is not finite",
                            {i, j});
    for (std::size_t i = 0; i < n; ++i)
        if (matrix[i][i] != 0.0)
            throw Error(ErrorKind::NonzeroDiagonal, "diagonal entry " + pair_text(i, i), {i, i});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (matrix[i][j] < 0.0)
                throw Error(ErrorKind::NegativeDistance, "entry " + pair_text(i, j) + " < 0",
                            {i, j});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (matrix[i][j] != matrix[j][i])
                throw Error(ErrorKind::NotSymmetric, "d" + pair_text(i, j) + " != d" + pair_text(j, i),
                            {i, j});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (matrix[i][j] == 0.0)
                throw Error(ErrorKind::DuplicatePoint,
                            "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide",
                            {i, j});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dij = matrix[i][j];
            const double limit_slack = kTriangleTolerance * dij;
            for (std::size_t k = 0; k < n; ++k) {
                if (dij > matrix[i][k] + matrix[k][j] + limit_slack)
                    throw Error(ErrorKind::TriangleViolation,
                                "d" + pair_text(i, j) + " exceeds path through " + std::to_string(k),
                                {i, j, k});
            }
        }
    }

    FiniteMetricSpace space;
    space.n_ = n;
    space.dist_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        std::copy(matrix[i].begin(), matrix[i].end(), space.dist_.begin() + i * n);
    if (labels) {
        space.labels_ = std::move(*labels);
    } else {
        space.labels_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) space.labels_.push_back("p" + std::to_string(i));
    }
    return space;
}

void check_point(const FiniteMetricSpace& space, PointId p) {
    if (p.value >= space.size())
        throw Error(ErrorKind::InvalidArgument,
                    "point " + std::to_string(p.value) + " out of range for space of size " +
                        std::to_string(space.size()),
                    {p.value});
}

void check_subset(const FiniteMetricSpace& space, const Subset& subset) {
    if (!subset.empty()) check_point(space, subset.ids().back());
}

Subset ball(const FiniteMetricSpace& space, PointId center, double r, BallKind kind) {
    check_point(space, center);
    if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "ball radius must be >= 0");
    std::vector<PointId> members;
    const auto row = space.row(center.value);
    for (std::size_t y = 0; y < space.size(); ++y) {
        const bool inside = kind == BallKind::Open ? row[y] < r : row[y] <= r;
        if (inside) members.emplace_back(y);
    }
    return Subset::from_ids(std::move(members));
}

Subset greedy_maximal_separated(const FiniteMetricSpace& space, const Subset& candidates,
                                double r) {
    check_subset(space, candidates);
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "separation must be > 0");
    std::vector<PointId> net;
    for (PointId c : candidates) {
        bool separated = true;
        for (PointId s : net) {
            if (space.d(c, s) < r) {
                separated = false;
                break;
            }
        }
        if (separated) net.push_back(c);
    }
    return Subset::from_ids(std::move(net));
}

double distance_to_set(const FiniteMetricSpace& space, PointId p, const Subset& set) {
    double best = std::numeric_limits<double>::infinity();
    for (PointId q : set) best = std::min(best, space.d(p, q));
    return best;
}

FiniteMetricSpace restrict_to(const FiniteMetricSpace& space, const Subset& subset) {
    check_subset(space, subset);
    if (subset.empty()) throw Error(ErrorKind::InvalidArgument, "cannot restrict to empty subset");
    const std::size_t m = subset.size();
    FiniteMetricSpace out;
    out.n_ = m;
    out.dist_.resize(m * m);
    out.labels_.reserve(m);
    for (std::size_t a = 0; a < m; ++a) {
        out.labels_.push_back(space.label(subset[a].value));
        for (std::size_t b = 0; b < m; ++b) out.dist_[a * m + b] = space.d(subset[a], subset[b]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ball covers

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t count_and_not(const Bits& covered) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & ~covered.words_[i]));
        return c;
    }
    void merge(const Bits& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    }

private:
    std::vector<std::uint64_t> words_;
};

struct CoverProblem {
    std::size_t targets = 0;
    std::vector<std::size_t> centers;       // space index of each candidate center
    std::vector<Bits> masks;                // targets covered by each candidate
    std::vector<std::vector<std::size_t>> covering; // candidates covering each target
};

CoverProblem make_cover_problem(const FiniteMetricSpace& space, const Subset& target, double r) {
    CoverProblem p;
    p.targets = target.size();
    p.covering.resize(p.targets);
    for (std::size_t c = 0; c < space.size(); ++c) {
        Bits mask(p.targets);
        bool any = false;
        for (std::size_t t = 0; t < p.targets; ++t) {
            if (space.d(c, target[t].value) <= r) {
                mask.set(t);
                any = true;
            }
        }
        if (!any) continue;
        for (std::size_t t = 0; t < p.targets; ++t)
            if (mask.test(t)) p.covering[t].push_back(p.centers.size());
        p.centers.push_back(c);
        p.masks.push_back(std::move(mask));
    }
    return p;
}

std::vector<std::size_t> greedy_cover(const CoverProblem& p) {
    Bits covered(p.targets);
    std::vector<std::size_t> chosen;
    std::size_t remaining = p.targets;
    while (remaining > 0) {
        std::size_t best = 0, best_gain = 0;
        for (std::size_t c = 0; c < p.masks.size(); ++c) {
            const std::size_t gain = p.masks[c].count_and_not(covered);
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        covered.merge(p.masks[best]);
        chosen.push_back(best);
        remaining -= best_gain;
    }
    return chosen;
}

class ExactCover {
public:
    explicit ExactCover(const CoverProblem& p) : p_(p) {
        for (const auto& m : p.masks) max_mask_ = std::max(max_mask_, m.count());
    }

    std::vector<std::size_t> solve() {
        best_ = greedy_cover(p_);
        std::vector<std::size_t> current;
        Bits covered(p_.targets);
        search(covered, 0, current);
        return best_;
    }

private:
    void search(const Bits& covered, std::size_t n_covered, std::vector<std::size_t>& current) {
        if (n_covered == p_.targets) {
            if (current.size() < best_.size()) best_ = current;
            return;
        }
        const std::size_t uncovered = p_.targets - n_covered;
        const std::size_t lower = current.size() + (uncovered + max_mask_ - 1) / max_mask_;
        if (lower >= best_.size()) return;

        // Branch on the uncovered target with the fewest covering candidates.
        std::size_t pick = p_.targets, fewest = std::numeric_limits<std::size_t>::max();
        for (std::size_t t = 0; t < p_.targets; ++t) {
            if (covered.test(t)) continue;
            if (p_.covering[t].size() < fewest) {
                fewest = p_.covering[t].size();
                pick = t;
            }
        }
        for (std::size_t c : p_.covering[pick]) {
            Bits next = covered;
            const std::size_t gain = p_.masks[c].count_and_not(covered);
            next.merge(p_.masks[c]);
            current.push_back(c);
            search(next, n_covered + gain, current);
            current.pop_back();
            if (current.size() + 1 >= best_.size()) return;
        }
    }

    const CoverProblem& p_;
    std::size_t max_mask_ = 1;
    std::vector<std::size_t> best_;
};

Subset to_space_subset(const CoverProblem& p, const std::vector<std::size_t>& chosen) {
    std::vector<std::size_t> idx;
    idx.reserve(chosen.size());
    for (auto c : chosen) idx.push_back(p.centers[c]);
    return Subset::from_unsorted(std::move(idx));
}

} // namespace

Subset minimum_ball_cover(const FiniteMetricSpace& space, const Subset& target, double r) {
    check_subset(space, target);
    if (target.empty()) return {};
    const CoverProblem p = make_cover_problem(space, target, r);
    ExactCover solver(p);
    return to_space_subset(p, solver.solve());
}

DoublingCertificate doubling_constant_estimate(const FiniteMetricSpace& space) {
    const std::size_t n = space.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "doubling estimate needs a nonempty space");

    std::vector<double> radii;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) radii.push_back(space.d(i, j));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<DoublingCertificate> per_center(n);
    parallel_for(n, [&](std::size_t x) {
        DoublingCertificate local;
        local.center = PointId{x};
        local.cover = Subset::from_indices(std::vector<std::size_t>{x});
        for (double radius : radii) {
            const Subset target = ball(space, PointId{x}, radius, BallKind::Closed);
            const CoverProblem p = make_cover_problem(space, target, radius / 2.0);
            // Greedy is an upper bound on the exact cover size; only exact-solve
            // pairs that could raise the running maximum.
            if (greedy_cover(p).size() <= local.lambda) continue;
            ExactCover solver(p);
            const auto exact = solver.solve();
            if (exact.size() > local.lambda) {
                local.lambda = exact.size();
                local.radius = radius;
                local.cover = to_space_subset(p, exact);
            }
        }
        per_center[x] = std::move(local);
    });

    DoublingCertificate best = per_center.front();
    for (const auto& c : per_center)
        if (c.lambda > best.lambda) best = c;
    return best;
}

} // namespace sraembed
