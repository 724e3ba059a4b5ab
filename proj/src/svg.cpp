#include "polymin/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace polymin {

namespace {

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string path_data(const Polyline& poly) {
  std::string d;
  const auto v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    d += (i == 0 ? "M " : " L ");
    d += num(v[i].x) + ' ' + num(-v[i].y);
  }
  if (poly.closed()) d += " Z";
  return d;
}

}  // namespace

std::string render_svg(const Polyline& source, const Polyline& result,
                       const CandidateSet* candidates) {
  double min_x = INFINITY, min_y = INFINITY, max_x = -INFINITY, max_y = -INFINITY;
  const auto grow = [&](Point p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const Point& p : source.vertices()) grow(p);
  for (const Point& p : result.vertices()) grow(p);
  if (candidates)
    for (std::size_t i = 0; i < candidates->vertex_count(); ++i)
      for (const auto& c : candidates->at(i)) grow(c.position);

  const double w = max_x - min_x;
  const double h = max_y - min_y;
  const double extent = std::max({w, h, 1e-9});
  const double mx = 0.05 * std::max(w, extent * 1e-3);
  const double my = 0.05 * std::max(h, extent * 1e-3);
  const double stroke = extent * 0.003;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(min_x - mx) + ' ' +
         num(-max_y - my) + ' ' + num(w + 2 * mx) + ' ' + num(h + 2 * my) + "\">\n";
  out += "  <path id=\"source\" d=\"" + path_data(source) +
         "\" fill=\"none\" stroke=\"blue\" stroke-width=\"" + num(stroke) + "\"/>\n";
  out += "  <path id=\"result\" d=\"" + path_data(result) +
         "\" fill=\"none\" stroke=\"red\" stroke-width=\"" + num(2 * stroke) + "\"/>\n";
  if (candidates) {
    out += "  <g id=\"candidates\" fill=\"black\">\n";
    for (std::size_t i = 0; i < candidates->vertex_count(); ++i)
      for (const auto& c : candidates->at(i))
        out += "    <circle cx=\"" + num(c.position.x) + "\" cy=\"" + num(-c.position.y) +
               "\" r=\"" + num(1.5 * stroke) + "\"/>\n";
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace polymin
