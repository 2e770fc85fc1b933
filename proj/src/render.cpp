#include "psc/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace psc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const DecoratedGraph& g, const RenderOptions& opts) {
  const double scale = 80.0, margin = 40.0;
  double xmin = 1e30, xmax = -1e30, ymin = 1e30, ymax = -1e30;
  for (int q = 0; q < g.num_qubits(); ++q) {
    const Vec2& p = g.qubit_pos(q);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  auto px = [&](const Vec2& p) { return margin + (p.x - xmin) * scale; };
  auto py = [&](const Vec2& p) { return margin + (ymax - p.y) * scale; };  // y up
  double w = 2 * margin + (xmax - xmin) * scale, h = 2 * margin + (ymax - ymin) * scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
      << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto line = [&](const Vec2& a, const Vec2& b, const std::string& style) {
    out << "<line x1=\"" << num(px(a)) << "\" y1=\"" << num(py(a)) << "\" x2=\"" << num(px(b))
        << "\" y2=\"" << num(py(b)) << "\" " << style << "/>\n";
  };

  // Qubit-to-qubit shadow of each L-link.
  for (const auto& [ca, cb] : g.links())
    line(g.qubit_pos(ca / 4), g.qubit_pos(cb / 4),
         "stroke=\"#dddddd\" stroke-width=\"6\" stroke-linecap=\"round\"");

  // Diamonds (l-edges).
  for (int q = 0; q < g.num_qubits(); ++q)
    for (int k = 0; k < 4; ++k)
      line(g.corner_pos(4 * q + k), g.corner_pos(4 * q + (k + 1) % 4),
           "stroke=\"#4477aa\" stroke-width=\"1.5\"");

  // L-links.
  for (const auto& [ca, cb] : g.links())
    line(g.corner_pos(ca), g.corner_pos(cb), "stroke=\"#222222\" stroke-width=\"1.5\"");

  // Kasteleyn arrows: a short dash at the head third of each edge.
  if (opts.orientation) {
    for (int e = 0; e < g.num_edges(); ++e) {
      int tail = kasteleyn::arrow_tail(g, *opts.orientation, e);
      int head = kasteleyn::arrow_head(g, *opts.orientation, e);
      Vec2 a = g.corner_pos(tail), b = g.corner_pos(head);
      Vec2 m = a + (b - a) * 0.62, t = a + (b - a) * 0.88;
      line(m, t, "stroke=\"#cc3333\" stroke-width=\"2.5\" stroke-linecap=\"round\"");
    }
  }

  // Path overlays.
  const char* colors[] = {"#119944", "#994411", "#441199", "#999911"};
  for (size_t i = 0; i < opts.paths.size(); ++i) {
    const auto& pth = opts.paths[i];
    std::string style = std::string("stroke=\"") + colors[i % 4] +
                        "\" stroke-width=\"3\" stroke-opacity=\"0.6\" stroke-linecap=\"round\"";
    for (size_t j = 0; j + 1 < pth.size(); ++j)
      line(g.corner_pos(pth[j]), g.corner_pos(pth[j + 1]), style);
  }

  // Corners; unpaired (sigma) ones filled.
  for (int c = 0; c < g.num_corners(); ++c) {
    const Vec2 p = g.corner_pos(c);
    bool sigma = g.unpaired(c);
    out << "<circle cx=\"" << num(px(p)) << "\" cy=\"" << num(py(p)) << "\" r=\""
        << (sigma ? "4" : "2") << "\" fill=\"" << (sigma ? "#cc3333" : "#4477aa") << "\"/>\n";
  }

  // Qubit ids.
  for (int q = 0; q < g.num_qubits(); ++q) {
    const Vec2& p = g.qubit_pos(q);
    out << "<text x=\"" << num(px(p)) << "\" y=\"" << num(py(p) + 3.5)
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"#555555\">" << g.qubit_id(q)
        << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace psc
