#include "scert/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "scert/lp.hpp"
#include "scert/report.hpp"

namespace scert {

namespace {

constexpr double kCanvas = 600.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string px(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<Vector> window_box(const RenderWindow& w) {
  return {{w.xmin, w.ymin}, {w.xmax, w.ymin}, {w.xmax, w.ymax}, {w.xmin, w.ymax}};
}

bool on_window_edge(const Vector& a, const Vector& b, const RenderWindow& w) {
  const double tx = 1e-9 * (w.xmax - w.xmin);
  const double ty = 1e-9 * (w.ymax - w.ymin);
  auto same = [](double p, double q, double v, double t) { return std::abs(p - v) <= t && std::abs(q - v) <= t; };
  return same(a[0], b[0], w.xmin, tx) || same(a[0], b[0], w.xmax, tx) || same(a[1], b[1], w.ymin, ty) ||
         same(a[1], b[1], w.ymax, ty);
}

void try_layer(std::vector<RenderLayer>& out, const std::string& id, const auto& make) {
  try {
    out.push_back(RenderLayer{id, make()});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::mode_mismatch && e.code() != ErrorCode::unsupported) throw;
  }
}

void add_modes(std::vector<RenderLayer>& out, const std::string& prefix, const ClassifierAtPoint& clf) {
  if (!clf.has_smoothness()) return;
  try_layer(out, prefix + "s-u", [&] { return s_certificate(clf, CertMode::uniform); });
  try_layer(out, prefix + "s-cw", [&] { return s_certificate(clf, CertMode::class_wise); });
  try_layer(out, prefix + "s-cd", [&] { return s_certificate(clf, CertMode::class_diff); });
  try_layer(out, prefix + "lipschitz-u", [&] {
    try {
      return lipschitz_certificate(clf, CertMode::uniform);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::mode_mismatch) throw;
      return lipschitz_certificate(clf, CertMode::uniform, 2.0);
    }
  });
}

}  // namespace

std::vector<RenderLayer> render_layers(const ProblemFile& problem) {
  std::vector<RenderLayer> layers;
  if (problem.is_ensemble()) {
    add_modes(layers, "layer-", ensemble_classifier(problem.ensemble()));
    for (std::size_t k = 0; k < problem.members.size(); ++k) {
      const auto& m = problem.members[k];
      if (!m.has_smoothness()) continue;
      const CertMode mode = natural_mode(m.smoothness().mode);
      try_layer(layers, "layer-member-" + std::to_string(k + 1) + "-s-" + mode_name(mode),
                [&] { return s_certificate(m, mode); });
    }
  } else {
    add_modes(layers, "layer-", problem.members.front());
  }
  return layers;
}

std::vector<Vector> window_polygon(const Certificate& cert, const RenderWindow& w) {
  if (cert.dim() != 2) fail(ErrorCode::dimension_mismatch, "rendering needs a 2-D problem");
  if (cert.kind() == CertKind::trivial) return {};
  std::vector<Vector> poly = window_box(w);
  if (cert.whole_space()) return poly;
  if (const auto& h = cert.hrep()) {
    for (const auto& hs : h->halfspaces()) poly = clip_polygon(poly, hs);
    return poly;
  }
  // Smooth boundary: radial samples, truncated well outside the window, then clipped to it.
  const double far = 4.0 * std::hypot(std::max(std::abs(w.xmin), std::abs(w.xmax)),
                                      std::max(std::abs(w.ymin), std::abs(w.ymax)));
  std::vector<Vector> ring;
  for (std::size_t i = 0; i < kRenderAngles; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(kRenderAngles);
    const Vector u{std::cos(t), std::sin(t)};
    ring.push_back(scaled(u, std::min(cert.radial_extent(u), far)));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const Vector a = window_box(w)[i];
    const Vector b = window_box(w)[(i + 1) % 4];
    // Inward edge normal of the counterclockwise box.
    const Vector n{b[1] - a[1], a[0] - b[0]};
    ring = clip_polygon(ring, Halfspace{n, dot(n, a)});
  }
  return ring;
}

std::string render_svg(const ProblemFile& problem, const RenderWindow& w) {
  if (problem.dimension != 2) fail(ErrorCode::dimension_mismatch, "rendering needs a 2-D problem");
  const auto layers = render_layers(problem);
  const double sx = kCanvas / (w.xmax - w.xmin);
  const double sy = kCanvas / (w.ymax - w.ymin);
  auto X = [&](double x) { return px((x - w.xmin) * sx); };
  auto Y = [&](double y) { return px((w.ymax - y) * sy); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  os << "<desc>window " << full(w.xmin) << ' ' << full(w.xmax) << ' ' << full(w.ymin) << ' ' << full(w.ymax)
     << "</desc>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" fill=\"white\" stroke=\"#888\"/>\n";
  if (w.xmin < 0 && w.xmax > 0) {
    os << "<line x1=\"" << X(0) << "\" y1=\"0\" x2=\"" << X(0) << "\" y2=\"" << kCanvas << "\" stroke=\"#ccc\"/>\n";
  }
  if (w.ymin < 0 && w.ymax > 0) {
    os << "<line x1=\"0\" y1=\"" << Y(0) << "\" x2=\"" << kCanvas << "\" y2=\"" << Y(0) << "\" stroke=\"#ccc\"/>\n";
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    const char* color = kColors[l % std::size(kColors)];
    os << "<g id=\"" << layer.id << "\" stroke=\"" << color << "\">\n<desc>";
    if (layer.cert.whole_space()) {
      os << "whole space";
    } else if (layer.cert.kind() == CertKind::trivial) {
      os << "trivial";
    } else if (const auto& h = layer.cert.hrep()) {
      for (std::size_t i = 0; i < h->halfspaces().size(); ++i) {
        const Halfspace n = normalized_halfspace(h->halfspaces()[i]);
        os << (i ? "\n" : "") << "halfspace " << full(n.a[0]) << ' ' << full(n.a[1]) << ' ' << full(n.b);
      }
    } else if (const auto& b = layer.cert.ball()) {
      os << "ball " << b->shape.name() << ' ' << full(b->radius);
    } else {
      os << "region";
    }
    os << "</desc>\n";
    const auto poly = window_polygon(layer.cert, w);
    if (poly.empty()) {
      os << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else {
      os << "<polygon fill=\"" << color << "\" fill-opacity=\"0.12\" stroke=\"none\" points=\"";
      for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? " " : "") << X(poly[i][0]) << ',' << Y(poly[i][1]);
      os << "\"/>\n";
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vector& a = poly[i];
        const Vector& b = poly[(i + 1) % poly.size()];
        const bool clipped = on_window_edge(a, b, w);
        os << "<line x1=\"" << X(a[0]) << "\" y1=\"" << Y(a[1]) << "\" x2=\"" << X(b[0]) << "\" y2=\"" << Y(b[1])
           << "\" stroke-width=\"2\"" << (clipped ? " stroke-dasharray=\"6,4\" class=\"clipped\"" : "") << "/>\n";
      }
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace scert
