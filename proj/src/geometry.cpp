#include "polypack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace polypack {

namespace {

void check_dim(const char* what, std::size_t got, int want) {
    if (static_cast<int>(got) != want) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

double sq(double v) { return v * v; }

// Squared distance from point c to the farthest corner of [lo, hi].
double farthest_corner_sq(const Vec& c, const Vec& lo, const Vec& hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += sq(std::max(std::abs(lo[i] - c[i]), std::abs(hi[i] - c[i])));
    }
    return s;
}

// Squared distance from point c to the nearest point of [lo, hi].
double nearest_point_sq(const Vec& c, const Vec& lo, const Vec& hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double v = std::clamp(c[i], lo[i], hi[i]) - c[i];
        s += v * v;
    }
    return s;
}

enum class CubeClass { outside, meets, inside };

// Classification of one closed cube [lo, hi] against a body. "meets" means
// intersects but is not contained.
CubeClass classify_cube(const Body& body, const Vec& lo, const Vec& hi, bool* sampled) {
    if (body.is_ball()) {
        const Ball& b = body.ball();
        double r_sq = b.radius * b.radius;
        if (nearest_point_sq(b.center, lo, hi) > r_sq + kTieEps) return CubeClass::outside;
        if (farthest_corner_sq(b.center, lo, hi) <= r_sq - kTieEps) return CubeClass::inside;
        return CubeClass::meets;
    }
    if (body.is_box()) {
        const AxisBox& b = body.box();
        bool inside = true;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (lo[i] > b.hi[i] || hi[i] < b.lo[i]) return CubeClass::outside;
            if (lo[i] < b.lo[i] || hi[i] > b.hi[i]) inside = false;
        }
        return inside ? CubeClass::inside : CubeClass::meets;
    }
    // Generic: corner-plus-midpoint sampling.
    *sampled = true;
    const Generic& g = body.generic();
    int n = static_cast<int>(lo.size());
    Vec p(lo.size());
    std::size_t corners = std::size_t{1} << n;
    std::size_t hits = 0;
    for (std::size_t mask = 0; mask < corners; ++mask) {
        for (int i = 0; i < n; ++i) p[i] = (mask >> i) & 1 ? hi[i] : lo[i];
        if (g.inside(p)) ++hits;
    }
    for (int i = 0; i < n; ++i) p[i] = 0.5 * (lo[i] + hi[i]);
    bool mid = g.inside(p);
    if (mid) ++hits;
    if (hits == corners + 1) return CubeClass::inside;
    if (hits > 0) return CubeClass::meets;
    return CubeClass::outside;
}

// Candidate index range per axis: bounding box inflated by one cube.
void candidate_range(const AxisBox& bb, double side, std::vector<std::int64_t>& imin,
                     std::vector<std::int64_t>& imax) {
    std::size_t n = bb.lo.size();
    imin.resize(n);
    imax.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        imin[i] = static_cast<std::int64_t>(std::floor(bb.lo[i] / side)) - 1;
        imax[i] = static_cast<std::int64_t>(std::floor(bb.hi[i] / side)) + 1;
    }
}

CubeSet grid_scan(const Body& region, int level, bool want_inner) {
    int n = region.n;
    double side = std::ldexp(1.0, -level);
    std::vector<std::int64_t> imin, imax;
    candidate_range(bounding_box(region), side, imin, imax);

    double total = 1.0;
    for (int i = 0; i < n; ++i) total *= static_cast<double>(imax[i] - imin[i] + 1);
    if (total > double(std::int64_t{1} << 28)) {
        throw std::runtime_error("grid enumeration too large at this level");
    }

    CubeSet out;
    out.level = level;
    out.dim = n;
    bool sampled = false;
    std::vector<std::int64_t> t = imin;
    Vec lo(n), hi(n);
    for (;;) {
        for (int i = 0; i < n; ++i) {
            lo[i] = static_cast<double>(t[i]) * side;
            hi[i] = static_cast<double>(t[i] + 1) * side;
        }
        CubeClass c = classify_cube(region, lo, hi, &sampled);
        bool keep = want_inner ? c == CubeClass::inside : c != CubeClass::outside;
        if (keep) out.coords.insert(out.coords.end(), t.begin(), t.end());
        int axis = n - 1;
        while (axis >= 0 && ++t[axis] > imax[axis]) { t[axis] = imin[axis]; --axis; }
        if (axis < 0) break;
    }
    out.certified = !sampled;
    return out;
}

}  // namespace

double ball_volume(int n, double radius) {
    if (n <= 0) throw std::invalid_argument("ball_volume: dimension must be positive");
    if (radius < 0) throw std::invalid_argument("ball_volume: negative radius");
    double unit = std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    return unit * std::pow(radius, n);
}

Body make_ball(Vec center, double radius) {
    if (center.empty()) throw std::invalid_argument("make_ball: empty center");
    if (!(radius > 0)) throw std::invalid_argument("make_ball: radius must be positive");
    Body b;
    b.n = static_cast<int>(center.size());
    b.analytic_volume = ball_volume(b.n, radius);
    b.shape = Ball{std::move(center), radius};
    return b;
}

Body make_box(Vec lo, Vec hi) {
    if (lo.empty() || lo.size() != hi.size()) throw std::invalid_argument("make_box: bad corners");
    double vol = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) throw std::invalid_argument("make_box: min corner must be below max");
        vol *= hi[i] - lo[i];
    }
    Body b;
    b.n = static_cast<int>(lo.size());
    b.shape = AxisBox{std::move(lo), std::move(hi)};
    b.analytic_volume = vol;
    return b;
}

Body make_generic(std::function<bool(const Vec&)> inside, AxisBox bounds,
                  std::optional<double> analytic_volume) {
    if (!inside) throw std::invalid_argument("make_generic: missing indicator");
    if (bounds.lo.empty() || bounds.lo.size() != bounds.hi.size()) {
        throw std::invalid_argument("make_generic: bad bounding box");
    }
    Body b;
    b.n = static_cast<int>(bounds.lo.size());
    b.shape = Generic{std::move(inside), std::move(bounds)};
    b.analytic_volume = analytic_volume;
    return b;
}

bool indicator(const Body& body, const Vec& x) {
    check_dim("indicator", x.size(), body.n);
    if (body.is_ball()) {
        const Ball& b = body.ball();
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += sq(x[i] - b.center[i]);
        return s <= b.radius * b.radius;
    }
    if (body.is_box()) {
        const AxisBox& b = body.box();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < b.lo[i] || x[i] > b.hi[i]) return false;
        }
        return true;
    }
    return body.generic().inside(x);
}

double diameter(const Body& body) {
    if (body.is_ball()) return 2.0 * body.ball().radius;
    const AxisBox& b = body.is_box() ? body.box() : body.generic().bounds;
    double s = 0.0;
    for (std::size_t i = 0; i < b.lo.size(); ++i) s += sq(b.hi[i] - b.lo[i]);
    return std::sqrt(s);
}

bool diameter_is_exact(const Body& body) { return !body.is_generic(); }

AxisBox bounding_box(const Body& body) {
    if (body.is_ball()) {
        const Ball& b = body.ball();
        Vec lo(b.center), hi(b.center);
        for (std::size_t i = 0; i < lo.size(); ++i) {
            lo[i] -= b.radius;
            hi[i] += b.radius;
        }
        return {lo, hi};
    }
    if (body.is_box()) return body.box();
    return body.generic().bounds;
}

Body scaled(const Body& body, double s) {
    if (!(s > 0)) throw std::invalid_argument("scaled: factor must be positive");
    Body out = body;
    if (out.analytic_volume) *out.analytic_volume *= std::pow(s, body.n);
    if (body.is_ball()) {
        Ball b = body.ball();
        for (double& v : b.center) v *= s;
        b.radius *= s;
        out.shape = std::move(b);
    } else if (body.is_box()) {
        AxisBox b = body.box();
        for (double& v : b.lo) v *= s;
        for (double& v : b.hi) v *= s;
        out.shape = std::move(b);
    } else {
        Generic g = body.generic();
        for (double& v : g.bounds.lo) v *= s;
        for (double& v : g.bounds.hi) v *= s;
        auto base = body.generic().inside;
        g.inside = [base, s](const Vec& x) {
            Vec y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / s;
            return base(y);
        };
        out.shape = std::move(g);
    }
    return out;
}

Body translated(const Body& body, const Vec& t) {
    check_dim("translated", t.size(), body.n);
    Body out = body;
    if (body.is_ball()) {
        Ball b = body.ball();
        for (std::size_t i = 0; i < t.size(); ++i) b.center[i] += t[i];
        out.shape = std::move(b);
    } else if (body.is_box()) {
        AxisBox b = body.box();
        for (std::size_t i = 0; i < t.size(); ++i) {
            b.lo[i] += t[i];
            b.hi[i] += t[i];
        }
        out.shape = std::move(b);
    } else {
        Generic g = body.generic();
        for (std::size_t i = 0; i < t.size(); ++i) {
            g.bounds.lo[i] += t[i];
            g.bounds.hi[i] += t[i];
        }
        auto base = body.generic().inside;
        Vec shift = t;
        g.inside = [base, shift](const Vec& x) {
            Vec y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - shift[i];
            return base(y);
        };
        out.shape = std::move(g);
    }
    return out;
}

AxisBox cube_bounds(const CubeIndex& c) {
    double side = std::ldexp(1.0, -c.level);
    Vec lo(c.t.size()), hi(c.t.size());
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        lo[i] = static_cast<double>(c.t[i]) * side;
        hi[i] = static_cast<double>(c.t[i] + 1) * side;
    }
    return {lo, hi};
}

std::span<const std::int64_t> CubeSet::cube(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
}

CubeIndex CubeSet::index(std::size_t i) const {
    auto c = cube(i);
    return {level, {c.begin(), c.end()}};
}

AxisBox CubeSet::bounds(std::size_t i) const {
    double side = std::ldexp(1.0, -level);
    auto c = cube(i);
    Vec lo(c.size()), hi(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        double s = side_scale.empty() ? 1.0 : side_scale[j];
        lo[j] = static_cast<double>(c[j]) * s * side;
        hi[j] = static_cast<double>(c[j] + 1) * s * side;
    }
    return {lo, hi};
}

double CubeSet::cube_volume() const {
    double v = std::ldexp(1.0, -level * dim);
    for (double s : side_scale) v *= s;
    return v;
}

double CubeSet::volume() const { return static_cast<double>(count()) * cube_volume(); }

bool CubeSet::contains(std::span<const std::int64_t> t) const {
    if (static_cast<int>(t.size()) != dim) return false;
    std::size_t lo = 0, hi = count();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto c = cube(mid);
        int cmp = 0;
        for (int i = 0; i < dim && cmp == 0; ++i) {
            cmp = c[i] < t[i] ? -1 : (c[i] > t[i] ? 1 : 0);
        }
        if (cmp == 0) return true;
        if (cmp < 0) lo = mid + 1; else hi = mid;
    }
    return false;
}

CubeSet grid_inner(const Body& region, int level) { return grid_scan(region, level, true); }

CubeSet grid_outer(const Body& region, int level) { return grid_scan(region, level, false); }

DensityInterval jordan_volume(const Body& body, int level) {
    DensityInterval d;
    d.lower = grid_inner(body, level).volume();
    d.upper = grid_outer(body, level).volume();
    return d;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Trim to the shortest representation that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char probe[64];
        std::snprintf(probe, sizeof probe, "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v) return probe;
    }
    return buf;
}

std::string body_to_string(const Body& body) {
    std::ostringstream os;
    if (body.is_ball()) {
        const Ball& b = body.ball();
        os << "ball " << body.n << ' ' << format_double(b.radius);
        for (double c : b.center) os << ' ' << format_double(c);
    } else if (body.is_box()) {
        const AxisBox& b = body.box();
        os << "box " << body.n;
        for (double c : b.lo) os << ' ' << format_double(c);
        for (double c : b.hi) os << ' ' << format_double(c);
    } else {
        throw std::invalid_argument("body_to_string: generic bodies are not serializable");
    }
    return os.str();
}

Body body_from_string(const std::string& text) {
    std::istringstream is(text);
    std::string kind;
    int n = 0;
    if (!(is >> kind >> n) || n <= 0) {
        throw std::runtime_error("body record: expected '<kind> <n> ...'");
    }
    auto read_vec = [&](int count) {
        Vec v(count);
        for (int i = 0; i < count; ++i) {
            if (!(is >> v[i])) throw std::runtime_error("body record: missing coordinate");
        }
        return v;
    };
    if (kind == "ball") {
        double r = 0;
        if (!(is >> r)) throw std::runtime_error("body record: missing radius");
        return make_ball(read_vec(n), r);
    }
    if (kind == "box") {
        Vec lo = read_vec(n);
        Vec hi = read_vec(n);
        return make_box(std::move(lo), std::move(hi));
    }
    throw std::runtime_error("body record: unknown kind '" + kind + "'");
}

void write_cube_csv(std::ostream& out, const CubeSet& cubes) {
    out << "k";
    for (int i = 1; i <= cubes.dim; ++i) out << ",t" << i;
    out << "\n";
    for (std::size_t i = 0; i < cubes.count(); ++i) {
        out << cubes.level;
        for (std::int64_t c : cubes.cube(i)) out << ',' << c;
        out << "\n";
    }
}

}  // namespace polypack
