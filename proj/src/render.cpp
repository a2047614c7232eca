#include "harmonica/render.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace harmonica {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 24.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Projection {
  double min_x, min_y, scale;

  std::pair<double, double> operator()(const std::vector<double>& p) const {
    double x = p.size() > 0 ? p[0] : 0.0;
    double y = p.size() > 1 ? p[1] : 0.0;
    // SVG y grows downward.
    return {kMargin + (x - min_x) * scale, kSize - kMargin - (y - min_y) * scale};
  }
};

Projection fit(const std::vector<std::vector<double>>& pts) {
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!pts.empty()) {
    min_x = max_x = pts[0].empty() ? 0.0 : pts[0][0];
    min_y = max_y = pts[0].size() > 1 ? pts[0][1] : 0.0;
    for (const auto& p : pts) {
      double x = p.empty() ? 0.0 : p[0];
      double y = p.size() > 1 ? p[1] : 0.0;
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  }
  double span = std::max(max_x - min_x, max_y - min_y);
  if (span <= 0) span = 1;
  return {min_x, min_y, (kSize - 2 * kMargin) / span};
}

std::set<std::size_t> support_set(const Chain& c) {
  auto s = c.support();
  return {s.begin(), s.end()};
}

std::string simplex_name(const Simplex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "-" : "") + std::to_string(s[i]);
  return out;
}

}  // namespace

std::string render_svg(const SimplicialComplex& s, const PointCloud& coordinates, const Chain& chain,
                       const std::optional<Chain>& other) {
  const std::size_t k = chain.degree;
  if (other && other->degree != k) throw Error(ErrorCode::InvalidArgument, "chains of different degrees");
  if (chain.coefficients.size() != s.count(k) || (other && other->coefficients.size() != s.count(k))) {
    throw Error(ErrorCode::DimensionMismatch, "chain length does not match the number of " + std::to_string(k) + "-simplices");
  }
  const auto verts = s.vertices();
  if (!verts.empty() && verts.back() >= coordinates.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coordinates missing for vertex " + std::to_string(verts.back()));
  }
  const auto pts = coordinates.approximate();
  const Projection proj = fit(pts);

  std::set<std::size_t> highlight = support_set(chain);
  if (other) {
    std::set<std::size_t> b = support_set(*other);
    std::set<std::size_t> diff;
    std::set_symmetric_difference(highlight.begin(), highlight.end(), b.begin(), b.end(),
                                  std::inserter(diff, diff.begin()));
    highlight = std::move(diff);
  }

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kSize) + "\" height=\"" + fmt(kSize) +
         "\" viewBox=\"0 0 " + fmt(kSize) + " " + fmt(kSize) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto polygon = [&](const Simplex& t, const std::string& style, const std::string& extra) {
    std::string pts_attr;
    for (std::size_t v : t) {
      auto [x, y] = proj(pts[v]);
      pts_attr += (pts_attr.empty() ? "" : " ") + fmt(x) + "," + fmt(y);
    }
    return "<polygon points=\"" + pts_attr + "\" " + style + extra + "/>\n";
  };
  auto line = [&](const Simplex& e, const std::string& style, const std::string& extra) {
    auto [x1, y1] = proj(pts[e[0]]);
    auto [x2, y2] = proj(pts[e[1]]);
    return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" + fmt(y2) + "\" " +
           style + extra + "/>\n";
  };
  auto dot = [&](const Simplex& v, double r, const std::string& style, const std::string& extra) {
    auto [x, y] = proj(pts[v[0]]);
    return "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"" + fmt(r) + "\" " + style + extra + "/>\n";
  };

  out += "<g id=\"complex\">\n";
  for (const auto& t : s.simplices(2)) out += polygon(t, "fill=\"#dde6f0\" stroke=\"none\"", "");
  for (const auto& e : s.simplices(1)) out += line(e, "stroke=\"#9aa5b1\" stroke-width=\"1\"", "");
  for (const auto& v : s.simplices(0)) out += dot(v, 2.5, "fill=\"#333333\"", "");
  out += "</g>\n";

  out += "<g id=\"highlight\" data-degree=\"" + std::to_string(k) + "\" data-mode=\"" +
         (other ? "symmetric-difference" : "support") + "\">\n";
  const auto& cells = s.simplices(k);
  for (std::size_t i : highlight) {
    const std::string tag = " data-cell=\"" + std::to_string(i) + "\" data-simplex=\"" + simplex_name(cells[i]) + "\"";
    if (k == 0) {
      out += dot(cells[i], 5.0, "fill=\"#d62728\"", tag);
    } else if (k == 1) {
      out += line(cells[i], "stroke=\"#d62728\" stroke-width=\"3\"", tag);
    } else {
      out += polygon(cells[i], "fill=\"#d62728\" fill-opacity=\"0.5\" stroke=\"#d62728\"", tag);
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace harmonica
