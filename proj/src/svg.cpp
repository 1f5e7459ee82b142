#include "polypack/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace polypack {

namespace {

std::string svg_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Base tone and progressively lighter fill tones.
std::string tone(std::size_t level, std::size_t levels) {
    const int r0 = 55, g0 = 81, b0 = 126;    // base
    const int r1 = 201, g1 = 215, b1 = 239;  // lightest
    double f = levels <= 1 ? 1.0 : static_cast<double>(level) / static_cast<double>(levels);
    if (level == 0) f = 0.0;
    int r = static_cast<int>(std::lround(r0 + f * (r1 - r0)));
    int g = static_cast<int>(std::lround(g0 + f * (g1 - g0)));
    int b = static_cast<int>(std::lround(b0 + f * (b1 - b0)));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

void write_packing_svg(std::ostream& out, const PeriodicPacking& packing,
                       const std::vector<std::size_t>& level_starts) {
    if (packing.n != 2) throw std::invalid_argument("svg: only 2D packings can be rendered");
    double px = packing.periods[0], py = packing.periods[1];
    const double width = 640.0;
    double scale = width / px;
    double height = py * scale;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << svg_num(width)
        << "\" height=\"" << svg_num(height) << "\" viewBox=\"0 0 " << svg_num(px) << ' '
        << svg_num(py) << "\">\n";
    out << "  <defs><clipPath id=\"cell\"><rect x=\"0\" y=\"0\" width=\"" << svg_num(px)
        << "\" height=\"" << svg_num(py) << "\"/></clipPath></defs>\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << svg_num(px) << "\" height=\"" << svg_num(py)
        << "\" fill=\"white\" stroke=\"none\"/>\n";
    out << "  <g clip-path=\"url(#cell)\">\n";
    std::size_t levels = level_starts.size();
    for (std::size_t i = 0; i < packing.placements.size(); ++i) {
        const Placement& pl = packing.placements[i];
        const Body& body = packing.bodies[pl.body_ref];
        std::size_t level = 0;
        for (std::size_t l = 0; l < level_starts.size(); ++l)
            if (i >= level_starts[l]) level = l + 1;
        std::string color = tone(level, levels + 1);
        for (int ix = -1; ix <= 1; ++ix) {
            for (int iy = -1; iy <= 1; ++iy) {
                double tx = pl.translation[0] + ix * px;
                double ty = pl.translation[1] + iy * py;
                if (body.is_ball()) {
                    const Ball& ball = body.ball();
                    // Flip y so the cell origin is bottom-left.
                    out << "    <circle cx=\"" << svg_num(tx + ball.center[0]) << "\" cy=\""
                        << svg_num(py - (ty + ball.center[1])) << "\" r=\"" << svg_num(ball.radius)
                        << "\" fill=\"" << color << "\" stroke=\"none\"/>\n";
                } else if (body.is_box()) {
                    const AxisBox& box = body.box();
                    double w = box.hi[0] - box.lo[0];
                    double h = box.hi[1] - box.lo[1];
                    out << "    <rect x=\"" << svg_num(tx + box.lo[0]) << "\" y=\""
                        << svg_num(py - (ty + box.lo[1]) - h) << "\" width=\"" << svg_num(w)
                        << "\" height=\"" << svg_num(h) << "\" fill=\"" << color
                        << "\" fill-opacity=\"0.9\" stroke=\"" << color << "\" stroke-width=\""
                        << svg_num(0.002 * px) << "\"/>\n";
                } else {
                    const AxisBox& bb = body.generic().bounds;
                    double w = bb.hi[0] - bb.lo[0];
                    double h = bb.hi[1] - bb.lo[1];
                    out << "    <rect x=\"" << svg_num(tx + bb.lo[0]) << "\" y=\""
                        << svg_num(py - (ty + bb.lo[1]) - h) << "\" width=\"" << svg_num(w)
                        << "\" height=\"" << svg_num(h) << "\" fill=\"none\" stroke=\"" << color
                        << "\" stroke-dasharray=\"" << svg_num(0.01 * px) << "\" stroke-width=\""
                        << svg_num(0.002 * px) << "\"/>\n";
                }
            }
        }
    }
    out << "  </g>\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << svg_num(px) << "\" height=\"" << svg_num(py)
        << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"" << svg_num(0.004 * px)
        << "\"/>\n";
    out << "</svg>\n";
}

void write_packing_svg_file(const std::string& path, const PeriodicPacking& packing,
                            const std::vector<std::size_t>& level_starts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg file: " + path);
    write_packing_svg(out, packing, level_starts);
}

}  // namespace polypack
