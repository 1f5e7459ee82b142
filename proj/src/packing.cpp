#include "polypack/packing.hpp"

#include "polypack/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace polypack {

namespace {

constexpr double kLinTol = 1e-12;

void check_structure(const PeriodicPacking& pk) {
    if (pk.n < 1) throw std::invalid_argument("packing: dimension must be positive");
    if (static_cast<int>(pk.periods.size()) != pk.n)
        throw std::invalid_argument("packing: periods size must equal dimension");
    for (double p : pk.periods)
        if (!(p > 0.0)) throw std::invalid_argument("packing: periods must be positive");
    for (const Body& b : pk.bodies)
        if (b.n != pk.n) throw std::invalid_argument("packing: body dimension mismatch");
    for (std::size_t i = 0; i < pk.placements.size(); ++i) {
        const Placement& pl = pk.placements[i];
        if (pl.body_ref < 0 || pl.body_ref >= static_cast<int>(pk.bodies.size()))
            throw std::invalid_argument("packing: placement body_ref out of range");
        if (static_cast<int>(pl.translation.size()) != pk.n)
            throw std::invalid_argument("packing: placement translation dimension mismatch");
        for (int d = 0; d < pk.n; ++d) {
            double t = pl.translation[d];
            if (!(t >= 0.0 && t < pk.periods[d]))
                throw std::invalid_argument("packing: placement translation outside [0, period)");
        }
        if (pl.rotation) {
            const std::vector<double>& R = *pl.rotation;
            int n = pk.n;
            if (static_cast<int>(R.size()) != n * n)
                throw std::invalid_argument("packing: rotation must be an n x n matrix");
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    double dot = 0.0;
                    for (int k = 0; k < n; ++k) dot += R[r * n + k] * R[c * n + k];
                    double want = (r == c) ? 1.0 : 0.0;
                    if (std::fabs(dot - want) > 1e-12)
                        throw std::invalid_argument("packing: rotation is not orthogonal");
                }
            if (!pk.bodies[pl.body_ref].is_ball()) {
                bool identity = true;
                for (int r = 0; r < n && identity; ++r)
                    for (int c = 0; c < n; ++c) {
                        double want = (r == c) ? 1.0 : 0.0;
                        if (std::fabs(R[r * n + c] - want) > 1e-12) {
                            identity = false;
                            break;
                        }
                    }
                if (!identity)
                    throw std::invalid_argument(
                        "packing: non-identity rotation on a non-ball body");
            }
        }
    }
}

// Placement with its translation shifted by whole periods so the support box
// center lands in [0, p)^n.
struct Placed {
    const Body* body = nullptr;
    Vec pos;     // shifted translation
    Vec anchor;  // support box center, in [0, p)
    Vec half;    // support box half extents
};

std::vector<Placed> reduce_placements(const PeriodicPacking& pk) {
    std::vector<Placed> out(pk.placements.size());
    for (std::size_t i = 0; i < pk.placements.size(); ++i) {
        const Placement& pl = pk.placements[i];
        const Body& body = pk.bodies[pl.body_ref];
        AxisBox bb = bounding_box(body);
        Placed pd;
        pd.body = &body;
        pd.pos.resize(pk.n);
        pd.anchor.resize(pk.n);
        pd.half.resize(pk.n);
        for (int d = 0; d < pk.n; ++d) {
            double center = pl.translation[d] + 0.5 * (bb.lo[d] + bb.hi[d]);
            double q = std::floor(center / pk.periods[d]);
            pd.pos[d] = pl.translation[d] - q * pk.periods[d];
            pd.anchor[d] = center - q * pk.periods[d];
            pd.half[d] = 0.5 * (bb.hi[d] - bb.lo[d]);
        }
        out[i] = std::move(pd);
    }
    return out;
}

// Uniform bin grid over the cell keyed by support centers. Bin widths are at
// least the largest pairwise reach per axis, so any pair that could overlap
// under some image sits in the same or an adjacent (wrapped) bin.
struct BinGrid {
    int n = 0;
    Vec periods;
    std::vector<int> counts;
    std::vector<std::vector<int>> bins;

    int bin_of(const Vec& point) const {
        int idx = 0;
        for (int d = 0; d < n; ++d) {
            double w = periods[d] / counts[d];
            int b = static_cast<int>(point[d] / w);
            if (b >= counts[d]) b = counts[d] - 1;
            if (b < 0) b = 0;
            idx = idx * counts[d] + b;
        }
        return idx;
    }

    // Distinct bin ids of the 3^n wrapped neighborhood around point.
    std::vector<int> neighborhood(const Vec& point) const {
        std::vector<int> home(n);
        for (int d = 0; d < n; ++d) {
            double w = periods[d] / counts[d];
            int b = static_cast<int>(point[d] / w);
            if (b >= counts[d]) b = counts[d] - 1;
            if (b < 0) b = 0;
            home[d] = b;
        }
        std::vector<int> ids;
        std::vector<int> off(n, -1);
        while (true) {
            int idx = 0;
            for (int d = 0; d < n; ++d) {
                int b = (home[d] + off[d] + counts[d]) % counts[d];
                idx = idx * counts[d] + b;
            }
            ids.push_back(idx);
            int d = n - 1;
            while (d >= 0 && off[d] == 1) off[d--] = -1;
            if (d < 0) break;
            ++off[d];
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    }
};

BinGrid build_bin_grid(const PeriodicPacking& pk, const std::vector<Placed>& placed) {
    BinGrid grid;
    grid.n = pk.n;
    grid.periods = pk.periods;
    grid.counts.assign(pk.n, 1);
    Vec max_half(pk.n, 0.0);
    for (const Placed& pd : placed)
        for (int d = 0; d < pk.n; ++d) max_half[d] = std::max(max_half[d], pd.half[d]);
    int per_axis_cap = pk.n <= 2 ? 256 : (pk.n == 3 ? 64 : 8);
    for (int d = 0; d < pk.n; ++d) {
        double reach = 2.0 * max_half[d];
        int b = reach > 0.0 ? static_cast<int>(std::floor(pk.periods[d] / reach)) : per_axis_cap;
        grid.counts[d] = std::clamp(b, 1, per_axis_cap);
    }
    std::size_t total = 1;
    for (int d = 0; d < pk.n; ++d) total *= static_cast<std::size_t>(grid.counts[d]);
    grid.bins.assign(total, {});
    for (std::size_t i = 0; i < placed.size(); ++i)
        grid.bins[grid.bin_of(placed[i].anchor)].push_back(static_cast<int>(i));
    return grid;
}

struct PairHit {
    bool overlap = false;
    bool sampled = false;
    double separation = 0.0;
    double required = 0.0;
    Vec witness;
};

// Exact overlap test of a.body at a.pos against b.body at b.pos + shift.
// Closed tangency within the squared-distance tolerance does not count.
PairHit test_pair_image(const Placed& a, const Placed& b, const Vec& shift) {
    int n = static_cast<int>(shift.size());
    PairHit hit;
    const Body& A = *a.body;
    const Body& B = *b.body;
    if (A.is_ball() && B.is_ball()) {
        const Ball& ba = A.ball();
        const Ball& bb = B.ball();
        double d2 = 0.0;
        for (int d = 0; d < n; ++d) {
            double diff = (bb.center[d] + b.pos[d] + shift[d]) - (ba.center[d] + a.pos[d]);
            d2 += diff * diff;
        }
        double rr = ba.radius + bb.radius;
        if (rr * rr - d2 > kTieEps) {
            hit.overlap = true;
            hit.separation = std::sqrt(d2);
            hit.required = rr;
        }
        return hit;
    }
    if ((A.is_ball() && B.is_box()) || (A.is_box() && B.is_ball())) {
        const Placed& ballSide = A.is_ball() ? a : b;
        const Placed& boxSide = A.is_ball() ? b : a;
        const Ball& ball = ballSide.body->ball();
        const AxisBox& box = boxSide.body->box();
        double d2 = 0.0;
        Vec nearest(n);
        for (int d = 0; d < n; ++d) {
            double ballShift = (&ballSide == &b) ? shift[d] : 0.0;
            double boxShift = (&boxSide == &b) ? shift[d] : 0.0;
            double c = ball.center[d] + ballSide.pos[d] + ballShift;
            double lo = box.lo[d] + boxSide.pos[d] + boxShift;
            double hi = box.hi[d] + boxSide.pos[d] + boxShift;
            double q = std::clamp(c, lo, hi);
            nearest[d] = q;
            d2 += (c - q) * (c - q);
        }
        if (ball.radius * ball.radius - d2 > kTieEps) {
            hit.overlap = true;
            hit.separation = std::sqrt(d2);
            hit.required = ball.radius;
            hit.witness = nearest;
        }
        return hit;
    }
    if (A.is_box() && B.is_box()) {
        const AxisBox& ba = A.box();
        const AxisBox& bb = B.box();
        double min_pen = std::numeric_limits<double>::infinity();
        Vec mid(n);
        for (int d = 0; d < n; ++d) {
            double aLo = ba.lo[d] + a.pos[d];
            double aHi = ba.hi[d] + a.pos[d];
            double bLo = bb.lo[d] + b.pos[d] + shift[d];
            double bHi = bb.hi[d] + b.pos[d] + shift[d];
            double lo = std::max(aLo, bLo);
            double hi = std::min(aHi, bHi);
            min_pen = std::min(min_pen, hi - lo);
            mid[d] = 0.5 * (lo + hi);
        }
        if (min_pen > kLinTol) {
            hit.overlap = true;
            hit.separation = min_pen;
            hit.required = 0.0;
            hit.witness = mid;
        }
        return hit;
    }
    // Generic on either side: grid-sample the support box intersection for a
    // point interior to both bodies.
    hit.sampled = true;
    AxisBox bbA = bounding_box(A);
    AxisBox bbB = bounding_box(B);
    Vec lo(n), hi(n);
    for (int d = 0; d < n; ++d) {
        lo[d] = std::max(bbA.lo[d] + a.pos[d], bbB.lo[d] + b.pos[d] + shift[d]);
        hi[d] = std::min(bbA.hi[d] + a.pos[d], bbB.hi[d] + b.pos[d] + shift[d]);
        if (hi[d] < lo[d]) return hit;
    }
    const int per_axis = 7;
    std::vector<int> idx(n, 0);
    Vec x(n), xa(n), xb(n);
    while (true) {
        for (int d = 0; d < n; ++d) {
            x[d] = lo[d] + (idx[d] + 0.5) * (hi[d] - lo[d]) / per_axis;
            xa[d] = x[d] - a.pos[d];
            xb[d] = x[d] - b.pos[d] - shift[d];
        }
        if (indicator(A, xa) && indicator(B, xb)) {
            hit.overlap = true;
            hit.witness = x;
            return hit;
        }
        int d = n - 1;
        while (d >= 0 && idx[d] == per_axis - 1) idx[d--] = 0;
        if (d < 0) break;
        ++idx[d];
    }
    return hit;
}

bool image_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool image_positive(const std::vector<int>& k) {
    for (int v : k) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;
}

// All overlapping images of the (i, j) pair appended to out. For i == j only
// lexicographically positive offsets are scanned so each unordered image pair
// is reported once.
void test_pair(std::size_t i, std::size_t j, const std::vector<Placed>& placed,
               const Vec& periods, std::vector<Violation>* out, bool* sampled) {
    const Placed& a = placed[i];
    const Placed& b = placed[j];
    int n = static_cast<int>(periods.size());
    std::vector<std::vector<int>> feasible(n);
    for (int d = 0; d < n; ++d) {
        double delta = b.anchor[d] - a.anchor[d];
        double limit = a.half[d] + b.half[d] + 1e-9;
        int K = 1 + static_cast<int>(std::floor(limit / periods[d]));
        for (int k = -K; k <= K; ++k)
            if (std::fabs(delta + k * periods[d]) <= limit) feasible[d].push_back(k);
        if (feasible[d].empty()) return;
    }
    std::vector<std::size_t> pick(n, 0);
    std::vector<int> offset(n);
    Vec shift(n);
    while (true) {
        for (int d = 0; d < n; ++d) {
            offset[d] = feasible[d][pick[d]];
            shift[d] = offset[d] * periods[d];
        }
        bool skip = (i == j) && !image_positive(offset);
        if (!skip) {
            PairHit hit = test_pair_image(a, b, shift);
            if (hit.sampled) *sampled = true;
            if (hit.overlap) {
                Violation v;
                v.first = i;
                v.second = j;
                v.image = offset;
                v.separation = hit.separation;
                v.required = hit.required;
                v.witness = hit.witness;
                out->push_back(std::move(v));
            }
        }
        int d = n - 1;
        while (d >= 0 && pick[d] + 1 == feasible[d].size()) pick[d--] = 0;
        if (d < 0) break;
        ++pick[d];
    }
}

}  // namespace

double PeriodicPacking::cell_volume() const {
    double v = 1.0;
    for (double p : periods) v *= p;
    return v;
}

PeriodicPacking make_cell(Vec periods) {
    PeriodicPacking pk;
    pk.n = static_cast<int>(periods.size());
    pk.periods = std::move(periods);
    return pk;
}

ValidationReport validate(const PeriodicPacking& packing) {
    check_structure(packing);
    ValidationReport report;
    std::vector<Placed> placed = reduce_placements(packing);
    if (placed.empty()) return report;
    BinGrid grid = build_bin_grid(packing, placed);
    bool sampled = false;
    for (std::size_t i = 0; i < placed.size(); ++i) {
        for (int bin : grid.neighborhood(placed[i].anchor)) {
            for (int j : grid.bins[bin]) {
                if (static_cast<std::size_t>(j) < i) continue;
                test_pair(i, static_cast<std::size_t>(j), placed, packing.periods,
                          &report.violations, &sampled);
            }
        }
    }
    report.certified = !sampled;
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& x, const Violation& y) {
                  if (x.first != y.first) return x.first < y.first;
                  if (x.second != y.second) return x.second < y.second;
                  return image_less(x.image, y.image);
              });
    return report;
}

DensityInterval density(const PeriodicPacking& packing, int jordan_level) {
    ValidationReport report = validate(packing);
    if (!report.ok())
        throw std::invalid_argument("density: packing has overlapping placements");
    std::vector<DensityInterval> body_volume(packing.bodies.size());
    for (std::size_t b = 0; b < packing.bodies.size(); ++b) {
        const Body& body = packing.bodies[b];
        if (body.analytic_volume) {
            body_volume[b] = {*body.analytic_volume, *body.analytic_volume};
        } else {
            body_volume[b] = jordan_volume(body, jordan_level);
        }
    }
    double lo = 0.0, hi = 0.0;
    for (const Placement& pl : packing.placements) {
        lo += body_volume[pl.body_ref].lower;
        hi += body_volume[pl.body_ref].upper;
    }
    double cell = packing.cell_volume();
    DensityInterval out;
    out.lower = std::clamp(lo / cell, 0.0, 1.0);
    out.upper = std::clamp(hi / cell, 0.0, 1.0);
    return out;
}

namespace {

// Point membership under the minimum-image convention. Exact for balls and
// boxes; generic bodies are folded once into their bounds window.
bool point_in_placed(const Vec& x, const Placed& pd, const Vec& periods) {
    int n = static_cast<int>(x.size());
    const Body& body = *pd.body;
    if (body.is_ball()) {
        const Ball& ball = body.ball();
        double d2 = 0.0;
        for (int d = 0; d < n; ++d) {
            double diff = std::fabs(x[d] - (ball.center[d] + pd.pos[d]));
            diff = std::fmod(diff, periods[d]);
            diff = std::min(diff, periods[d] - diff);
            d2 += diff * diff;
        }
        return d2 <= ball.radius * ball.radius;
    }
    if (body.is_box()) {
        const AxisBox& box = body.box();
        for (int d = 0; d < n; ++d) {
            double z = x[d] - pd.pos[d];
            z -= periods[d] * std::floor((z - box.lo[d]) / periods[d]);
            if (z > box.hi[d]) return false;
        }
        return true;
    }
    const AxisBox& bb = body.generic().bounds;
    Vec z(n);
    for (int d = 0; d < n; ++d) {
        double v = x[d] - pd.pos[d];
        v -= periods[d] * std::floor((v - bb.lo[d]) / periods[d]);
        z[d] = v;
    }
    return indicator(body, z);
}

}  // namespace

MonteCarloEstimate density_monte_carlo(const PeriodicPacking& packing, std::size_t samples,
                                       std::uint64_t seed) {
    check_structure(packing);
    if (samples == 0) throw std::invalid_argument("density_monte_carlo: need samples > 0");
    std::vector<Placed> placed = reduce_placements(packing);
    BinGrid grid = placed.empty() ? BinGrid{} : build_bin_grid(packing, placed);
    std::mt19937_64 rng(seed);
    auto u53 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    int n = packing.n;
    Vec x(n);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (int d = 0; d < n; ++d) x[d] = u53() * packing.periods[d];
        if (placed.empty()) continue;
        bool covered = false;
        for (int bin : grid.neighborhood(x)) {
            for (int j : grid.bins[bin]) {
                if (point_in_placed(x, placed[j], packing.periods)) {
                    covered = true;
                    break;
                }
            }
            if (covered) break;
        }
        if (covered) ++hits;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    est.standard_error =
        std::sqrt(std::max(0.0, est.estimate * (1.0 - est.estimate) / static_cast<double>(samples)));
    return est;
}

namespace {

// Cube classification against one placed body under the periodic images.
// meets: the closed cube intersects some closed image (conservative on ball
// ties); contains: the cube lies inside a single image.
struct CubeVsBody {
    bool meets = false;
    bool contains = false;
};

CubeVsBody cube_vs_placed(const Vec& lo, const Vec& hi, const Placed& pd, const Vec& periods,
                          bool* sampled) {
    int n = static_cast<int>(lo.size());
    const Body& body = *pd.body;
    CubeVsBody out;
    if (body.is_ball()) {
        const Ball& ball = body.ball();
        double r2 = ball.radius * ball.radius;
        double near2 = 0.0, far2 = 0.0;
        for (int d = 0; d < n; ++d) {
            double c = ball.center[d] + pd.pos[d];
            int K = 1 + static_cast<int>(std::floor((ball.radius + periods[d]) / periods[d]));
            double best_near = std::numeric_limits<double>::infinity();
            double best_far = std::numeric_limits<double>::infinity();
            for (int k = -K; k <= K; ++k) {
                double ck = c + k * periods[d];
                double nd = 0.0;
                if (ck < lo[d]) nd = lo[d] - ck;
                else if (ck > hi[d]) nd = ck - hi[d];
                double fd = std::max(std::fabs(lo[d] - ck), std::fabs(hi[d] - ck));
                best_near = std::min(best_near, nd);
                best_far = std::min(best_far, fd);
            }
            near2 += best_near * best_near;
            far2 += best_far * best_far;
        }
        out.meets = near2 <= r2 + kTieEps;
        out.contains = far2 <= r2 - kTieEps;
        return out;
    }
    if (body.is_box()) {
        const AxisBox& box = body.box();
        bool meets = true, contains = true;
        for (int d = 0; d < n; ++d) {
            double bLo = box.lo[d] + pd.pos[d];
            double bHi = box.hi[d] + pd.pos[d];
            double p = periods[d];
            int kmin = static_cast<int>(std::floor((lo[d] - bHi) / p)) - 1;
            int kmax = static_cast<int>(std::ceil((hi[d] - bLo) / p)) + 1;
            bool axis_meets = false, axis_contains = false;
            for (int k = kmin; k <= kmax; ++k) {
                double l = bLo + k * p, h = bHi + k * p;
                if (l <= hi[d] && h >= lo[d]) axis_meets = true;
                if (l <= lo[d] && h >= hi[d]) axis_contains = true;
            }
            meets = meets && axis_meets;
            contains = contains && axis_contains;
            if (!meets) break;
        }
        out.meets = meets;
        out.contains = meets && contains;
        return out;
    }
    // Generic: conservative bounds-box meets, never certified containment.
    *sampled = true;
    const AxisBox& bb = body.generic().bounds;
    bool meets = true;
    for (int d = 0; d < n; ++d) {
        double bLo = bb.lo[d] + pd.pos[d];
        double bHi = bb.hi[d] + pd.pos[d];
        double p = periods[d];
        int kmin = static_cast<int>(std::floor((lo[d] - bHi) / p)) - 1;
        int kmax = static_cast<int>(std::ceil((hi[d] - bLo) / p)) + 1;
        bool axis_meets = false;
        for (int k = kmin; k <= kmax; ++k) {
            double l = bLo + k * p, h = bHi + k * p;
            if (l <= hi[d] && h >= lo[d]) {
                axis_meets = true;
                break;
            }
        }
        meets = meets && axis_meets;
        if (!meets) break;
    }
    out.meets = meets;
    return out;
}

struct CellScan {
    CubeSet complement;
    CubeSet outer;
    CubeSet inner;
};

CellScan scan_cell(const PeriodicPacking& packing, int level) {
    check_structure(packing);
    if (level < 0) throw std::invalid_argument("cell grid level must be nonnegative");
    int n = packing.n;
    if (static_cast<std::size_t>(level) * n >= 28)
        throw std::runtime_error("cell grid enumeration too large");
    std::int64_t per_axis = std::int64_t{1} << level;
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(per_axis);
    std::vector<Placed> placed = reduce_placements(packing);
    std::atomic<bool> sampled_any{false};
    // 0 complement, 1 carrier boundary, 2 carrier interior
    std::vector<std::uint8_t> cls(total, 0);
    parallel_for(total, [&](std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> t(n);
        Vec lo(n), hi(n);
        bool sampled = false;
        for (std::size_t idx = begin; idx < end; ++idx) {
            std::size_t rem = idx;
            for (int d = n - 1; d >= 0; --d) {
                t[d] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(per_axis));
                rem /= static_cast<std::size_t>(per_axis);
            }
            for (int d = 0; d < n; ++d) {
                double side = packing.periods[d] / static_cast<double>(per_axis);
                lo[d] = static_cast<double>(t[d]) * side;
                hi[d] = static_cast<double>(t[d] + 1) * side;
            }
            std::uint8_t c = 0;
            for (const Placed& pd : placed) {
                CubeVsBody r = cube_vs_placed(lo, hi, pd, packing.periods, &sampled);
                if (r.contains) {
                    c = 2;
                    break;
                }
                if (r.meets) c = std::max<std::uint8_t>(c, 1);
            }
            cls[idx] = c;
        }
        if (sampled) sampled_any.store(true, std::memory_order_relaxed);
    });
    CellScan scan;
    for (CubeSet* cs : {&scan.complement, &scan.outer, &scan.inner}) {
        cs->level = level;
        cs->dim = n;
        cs->side_scale = packing.periods;
        cs->certified = !sampled_any.load();
    }
    std::vector<std::int64_t> t(n);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int d = n - 1; d >= 0; --d) {
            t[d] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(per_axis));
            rem /= static_cast<std::size_t>(per_axis);
        }
        if (cls[idx] == 0)
            scan.complement.coords.insert(scan.complement.coords.end(), t.begin(), t.end());
        else
            scan.outer.coords.insert(scan.outer.coords.end(), t.begin(), t.end());
        if (cls[idx] == 2) scan.inner.coords.insert(scan.inner.coords.end(), t.begin(), t.end());
    }
    return scan;
}

}  // namespace

CubeSet complement_grid(const PeriodicPacking& packing, int level) {
    return scan_cell(packing, level).complement;
}

CubeSet carrier_grid_outer(const PeriodicPacking& packing, int level) {
    return scan_cell(packing, level).outer;
}

CubeSet carrier_grid_inner(const PeriodicPacking& packing, int level) {
    return scan_cell(packing, level).inner;
}

PeriodicPacking merge(const PeriodicPacking& base, const std::vector<Placement>& addition) {
    PeriodicPacking out = base;
    for (const Placement& pl : addition) {
        if (pl.body_ref < 0 || pl.body_ref >= static_cast<int>(out.bodies.size()))
            throw std::invalid_argument("merge: placement body_ref out of range");
        if (static_cast<int>(pl.translation.size()) != out.n)
            throw std::invalid_argument("merge: placement dimension mismatch");
        out.placements.push_back(pl);
    }
    return out;
}

PeriodicPacking translated(const PeriodicPacking& packing, const Vec& t) {
    if (static_cast<int>(t.size()) != packing.n)
        throw std::invalid_argument("translated: shift dimension mismatch");
    PeriodicPacking out = packing;
    for (Placement& pl : out.placements) {
        for (int d = 0; d < packing.n; ++d) {
            double p = packing.periods[d];
            double v = std::fmod(pl.translation[d] + t[d], p);
            if (v < 0.0) v += p;
            if (v >= p) v -= p;
            pl.translation[d] = v;
        }
    }
    return out;
}

void write_packing(std::ostream& out, const PeriodicPacking& packing) {
    out << "n " << packing.n << "\n";
    out << "periods";
    for (double p : packing.periods) out << ' ' << format_double(p);
    out << "\n";
    for (const Body& body : packing.bodies) out << "body " << body_to_string(body) << "\n";
    for (const Placement& pl : packing.placements) {
        out << "place " << pl.body_ref;
        for (double v : pl.translation) out << ' ' << format_double(v);
        out << "\n";
    }
}

PeriodicPacking read_packing(std::istream& in) {
    PeriodicPacking pk;
    bool saw_n = false, saw_periods = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string::size_type hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        auto fail = [&](const std::string& what) {
            throw std::runtime_error("packing parse error at line " + std::to_string(line_no) +
                                     ": " + what);
        };
        if (key == "n") {
            if (saw_n) fail("duplicate n");
            if (!(ss >> pk.n) || pk.n < 1) fail("bad dimension");
            saw_n = true;
        } else if (key == "periods") {
            if (!saw_n) fail("periods before n");
            if (saw_periods) fail("duplicate periods");
            pk.periods.resize(pk.n);
            for (int d = 0; d < pk.n; ++d)
                if (!(ss >> pk.periods[d])) fail("expected " + std::to_string(pk.n) + " periods");
            saw_periods = true;
        } else if (key == "body") {
            if (!saw_n) fail("body before n");
            std::string rest;
            std::getline(ss, rest);
            try {
                pk.bodies.push_back(body_from_string(rest));
            } catch (const std::exception& e) {
                fail(e.what());
            }
        } else if (key == "place") {
            if (!saw_periods) fail("place before periods");
            Placement pl;
            if (!(ss >> pl.body_ref)) fail("bad body_ref");
            pl.translation.resize(pk.n);
            for (int d = 0; d < pk.n; ++d)
                if (!(ss >> pl.translation[d]))
                    fail("expected " + std::to_string(pk.n) + " coordinates");
            pk.placements.push_back(std::move(pl));
        } else {
            fail("unknown keyword '" + key + "'");
        }
    }
    if (!saw_n) throw std::runtime_error("packing parse error: missing n");
    if (!saw_periods) throw std::runtime_error("packing parse error: missing periods");
    check_structure(pk);
    return pk;
}

PeriodicPacking read_packing_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open packing file: " + path);
    return read_packing(in);
}

void write_packing_file(const std::string& path, const PeriodicPacking& packing) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write packing file: " + path);
    write_packing(out, packing);
}

void write_violations_csv(std::ostream& out, const std::vector<Violation>& violations) {
    out << "first,second,image,separation,required,witness\n";
    for (const Violation& v : violations) {
        out << v.first << ',' << v.second << ',';
        for (std::size_t d = 0; d < v.image.size(); ++d) {
            if (d) out << ' ';
            out << v.image[d];
        }
        out << ',' << format_double(v.separation) << ',' << format_double(v.required) << ',';
        for (std::size_t d = 0; d < v.witness.size(); ++d) {
            if (d) out << ' ';
            out << format_double(v.witness[d]);
        }
        out << "\n";
    }
}

}  // namespace polypack
