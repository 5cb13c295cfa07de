#include "sraembed/sra.hpp"

#include "sraembed/errors.hpp"
#include "sraembed/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sraembed {

void SraParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0,1)");
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "k must be >= 2");
}

namespace {

// The SRA inequality with x,y as the ends and z in the middle.
inline bool ends_ok(const FiniteMetricSpace& s, std::size_t x, std::size_t z, std::size_t y,
                    double alpha) {
    const double xz = s.d(x, z);
    const double zy = s.d(z, y);
    return s.d(x, y) <= std::max(xz + alpha * zy, alpha * xz + zy);
}

// All three choices of middle point for an unordered triple of distinct points.
inline bool triple_ok(const FiniteMetricSpace& s, std::size_t a, std::size_t b, std::size_t c,
                      double alpha) {
    return ends_ok(s, a, c, b, alpha) && ends_ok(s, a, b, c, alpha) && ends_ok(s, b, a, c, alpha);
}

class SraSearch {
public:
    SraSearch(const FiniteMetricSpace& space, double alpha, std::size_t k)
        : s_(space), alpha_(alpha), k_(k) {}

    std::optional<Subset> run() {
        if (k_ > s_.size()) return std::nullopt;
        std::vector<std::size_t> cand(s_.size());
        for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = i;
        if (extend(cand)) return Subset::from_indices(current_);
        return std::nullopt;
    }

private:
    // `cand` holds every point greater than the last member that forms an SRA
    // triple with each pair of current members.
    bool extend(const std::vector<std::size_t>& cand) {
        if (current_.size() == k_) return true;
        for (std::size_t ci = 0; ci < cand.size(); ++ci) {
            if (current_.size() + (cand.size() - ci) < k_) return false;
            const std::size_t p = cand[ci];
            std::vector<std::size_t> next;
            next.reserve(cand.size() - ci - 1);
            for (std::size_t cj = ci + 1; cj < cand.size(); ++cj) {
                const std::size_t c = cand[cj];
                bool ok = true;
                for (std::size_t a : current_) {
                    if (!triple_ok(s_, a, p, c, alpha_)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) next.push_back(c);
            }
            current_.push_back(p);
            if (extend(next)) return true;
            current_.pop_back();
        }
        return false;
    }

    const FiniteMetricSpace& s_;
    double alpha_;
    std::size_t k_;
    std::vector<std::size_t> current_;
};

class RadiusSearch {
public:
    RadiusSearch(const FiniteMetricSpace& space, std::size_t x, double alpha, std::size_t size)
        : s_(space), alpha_(alpha), size_(size) {
        current_.push_back(x);
    }

    void run() {
        if (size_ > s_.size()) return;
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i < s_.size(); ++i)
            if (i != current_.front()) cand.push_back(i);
        extend(cand, std::numeric_limits<double>::infinity());
    }

    bool found() const { return found_; }
    double best() const { return best_; }
    const std::vector<std::size_t>& witness() const { return witness_; }

private:
    void extend(const std::vector<std::size_t>& cand, double current_min) {
        if (current_.size() == size_) {
            if (!found_ || current_min > best_) {
                found_ = true;
                best_ = current_min;
                witness_ = current_;
            }
            return;
        }
        for (std::size_t ci = 0; ci < cand.size(); ++ci) {
            if (current_.size() + (cand.size() - ci) < size_) return;
            const std::size_t p = cand[ci];
            double min_p = current_min;
            for (std::size_t a : current_) min_p = std::min(min_p, s_.d(a, p));
            if (found_ && min_p <= best_) continue;
            std::vector<std::size_t> next;
            for (std::size_t cj = ci + 1; cj < cand.size(); ++cj) {
                const std::size_t c = cand[cj];
                if (found_ && s_.d(p, c) <= best_) continue;
                bool ok = true;
                for (std::size_t a : current_) {
                    if (!triple_ok(s_, a, p, c, alpha_)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) next.push_back(c);
            }
            current_.push_back(p);
            extend(next, min_p);
            current_.pop_back();
        }
    }

    const FiniteMetricSpace& s_;
    double alpha_;
    std::size_t size_;
    std::vector<std::size_t> current_;
    bool found_ = false;
    double best_ = 0.0;
    std::vector<std::size_t> witness_;
};

} // namespace

bool sra_triple_ok(const FiniteMetricSpace& space, PointId x, PointId z, PointId y, double alpha) {
    check_point(space, x);
    check_point(space, y);
    check_point(space, z);
    return ends_ok(space, x.value, z.value, y.value, alpha);
}

bool subset_is_sra(const FiniteMetricSpace& space, const Subset& subset, double alpha) {
    check_subset(space, subset);
    const auto idx = subset.indices();
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            for (std::size_t c = b + 1; c < idx.size(); ++c)
                if (!triple_ok(space, idx[a], idx[b], idx[c], alpha)) return false;
    return true;
}

std::optional<Subset> find_sra_subspace(const FiniteMetricSpace& space, const SraParams& params) {
    params.validate();
    SraSearch search(space, params.alpha, params.k);
    return search.run();
}

std::size_t sra_free_parameter(const FiniteMetricSpace& space, double alpha) {
    for (std::size_t k = 3; k <= space.size(); ++k)
        if (!find_sra_subspace(space, SraParams{alpha, k})) return k;
    return std::max<std::size_t>(3, space.size() + 1);
}

double min_pairwise_distance(const FiniteMetricSpace& space, const Subset& subset) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            best = std::min(best, space.d(subset[a], subset[b]));
    return best;
}

CriticalRadiusEntry critical_radius(const FiniteMetricSpace& space, PointId x,
                                    const SraParams& params) {
    params.validate();
    check_point(space, x);
    if (params.k < 3) throw Error(ErrorKind::InvalidArgument, "critical radius needs k >= 3");
    RadiusSearch search(space, x.value, params.alpha / 2.0, params.k - 1);
    search.run();
    CriticalRadiusEntry entry;
    entry.point = x;
    if (search.found()) {
        entry.radius = search.best();
        entry.witness = Subset::from_unsorted(search.witness());
    }
    return entry;
}

CoreSubset build_core_subset(const FiniteMetricSpace& space, const SraParams& params) {
    params.validate();
    if (params.k < 4) throw Error(ErrorKind::InvalidArgument, "core subset needs k >= 4");
    const std::size_t n = space.size();
    CoreSubset out;
    out.radii.resize(n);
    parallel_for(n, [&](std::size_t x) { out.radii[x] = critical_radius(space, PointId{x}, params); });

    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < n; ++x) {
        bool admissible = true;
        for (std::size_t m : members) {
            const double bound = std::min(out.radii[x].radius, out.radii[m].radius);
            const double dist = space.d(x, m);
            if (!(dist > bound)) {
                if (dist == bound) {
                    std::ostringstream os;
                    os << "exact tie d(" << space.label(x) << "," << space.label(m)
                       << ") == min{R} = " << bound << " excluded " << space.label(x);
                    out.warnings.push_back(os.str());
                }
                admissible = false;
                break;
            }
        }
        if (admissible) members.push_back(x);
    }
    out.members = Subset::from_indices(members);
    return out;
}

} // namespace sraembed
