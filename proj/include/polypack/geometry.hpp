#pragma once

// Bodies as indicator-defined subsets of R^n with exact predicates for balls
// and axis-aligned boxes, plus dyadic grid inner/outer approximations whose
// volumes sandwich the Jordan measure.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polypack {

using Vec = std::vector<double>;

// Margin for squared-distance comparisons. Exact tangency resolves toward
// the conservative side: outer tests keep the cube, inner tests drop it.
inline constexpr double kTieEps = 1e-12;

struct Ball {
    Vec center;
    double radius = 0.0;
};

struct AxisBox {
    Vec lo;
    Vec hi;
};

// Region given only by a membership test plus a bounding box. Grid
// classifications against it are sampled, not exact; results carry
// certified = false.
struct Generic {
    std::function<bool(const Vec&)> inside;
    AxisBox bounds;
};

struct Body {
    int n = 0;
    std::variant<Ball, AxisBox, Generic> shape;
    std::optional<double> analytic_volume;

    bool is_ball() const { return std::holds_alternative<Ball>(shape); }
    bool is_box() const { return std::holds_alternative<AxisBox>(shape); }
    bool is_generic() const { return std::holds_alternative<Generic>(shape); }
    const Ball& ball() const { return std::get<Ball>(shape); }
    const AxisBox& box() const { return std::get<AxisBox>(shape); }
    const Generic& generic() const { return std::get<Generic>(shape); }
};

// Volume of the n-ball of the given radius.
double ball_volume(int n, double radius);

Body make_ball(Vec center, double radius);
Body make_box(Vec lo, Vec hi);
Body make_generic(std::function<bool(const Vec&)> inside, AxisBox bounds,
                  std::optional<double> analytic_volume = std::nullopt);

// Closed-set membership; exact for ball and axis_box kinds.
bool indicator(const Body& body, const Vec& x);

// Euclidean diameter. Exact for ball (2r) and axis_box (diagonal); for
// generic bodies the bounding-box diagonal, an upper bound only (see
// diameter_is_exact).
double diameter(const Body& body);
bool diameter_is_exact(const Body& body);

AxisBox bounding_box(const Body& body);

// s * B, scaled about the origin. s > 0.
Body scaled(const Body& body, double s);
Body translated(const Body& body, const Vec& t);

// The closed cube prod_i [t_i/2^k, (t_i+1)/2^k], side 2^-k.
struct CubeIndex {
    int level = 0;
    std::vector<std::int64_t> t;
};

AxisBox cube_bounds(const CubeIndex& c);

// A set of same-level grid cubes, lexicographically ordered by t and stored
// flat (dim coordinates per cube). side_scale generalizes the unit dyadic
// grid: cube i spans prod_j [t_j*s_j/2^k, (t_j+1)*s_j/2^k] where s is
// side_scale (empty = all ones). Cell-anchored grids use s = cell periods.
struct CubeSet {
    int level = 0;
    int dim = 0;
    Vec side_scale;                      // empty means unit grid
    std::vector<std::int64_t> coords;    // flattened, dim entries per cube
    bool certified = true;               // false when any test was sampled

    std::size_t count() const { return dim > 0 ? coords.size() / static_cast<std::size_t>(dim) : 0; }
    std::span<const std::int64_t> cube(std::size_t i) const;
    CubeIndex index(std::size_t i) const;
    AxisBox bounds(std::size_t i) const;
    double cube_volume() const;          // volume of one cube
    double volume() const;               // count() * cube_volume()
    bool contains(std::span<const std::int64_t> t) const;  // binary search
};

// Cubes of level k entirely contained in the body. Exact for ball
// (farthest-corner test) and axis_box (interval inclusion); for generic
// bodies decided by corner-plus-midpoint sampling (may misclassify features
// finer than the sample spacing; certified = false). Never over-includes for
// exact kinds. Enumeration covers the bounding box inflated by one cube.
CubeSet grid_inner(const Body& region, int level);

// Cubes of level k whose closed cube meets the closed body. Exact for ball
// (nearest-point test) and axis_box (closed interval overlap, boundary touch
// counts); sampled for generic bodies (certified = false).
CubeSet grid_outer(const Body& region, int level);

struct DensityInterval {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
    bool contains(double v) const { return lower <= v && v <= upper; }
};

// [inner volume, outer volume] at the given level; sandwiches the Jordan
// measure, and in particular analytic_volume when present (exact kinds).
DensityInterval jordan_volume(const Body& body, int level);

// Serialization. Records: "ball <n> <radius> <center...>" and
// "box <n> <lo...> <hi...>". Generic bodies are not serializable.
std::string body_to_string(const Body& body);
Body body_from_string(const std::string& text);

// CSV rows "k,t_1,...,t_n", one per cube, lexicographic order.
void write_cube_csv(std::ostream& out, const CubeSet& cubes);

// Fixed shortest round-trip formatting used by all text output.
std::string format_double(double v);

}  // namespace polypack
