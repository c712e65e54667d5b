#include <saltice/phase_diagram.hpp>

#include <saltice/io.hpp>
#include <saltice/variational.hpp>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace saltice {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Liquid:
      return "liquid";
    case Regime::Ice:
      return "ice";
    case Regime::PhaseSeparation:
      return "phase_separation";
    case Regime::BoundaryUpper:
      return "boundary_upper";
    case Regime::BoundaryLower:
      return "boundary_lower";
    case Regime::TriplePoint:
      return "triple_point";
  }
  return "unknown";
}

double droplet_fraction(const ModelParams& p, BoundaryCondition bc, double m) {
  const double f = bc == BoundaryCondition::Plus ? (p.m_star - m) / (2.0 * p.m_star)
                                                 : (m + p.m_star) / (2.0 * p.m_star);
  return std::clamp(f, 0.0, 1.0);
}

namespace {

RegimeLabel classify_against(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt,
                             const CriticalCurves& th, const BandEdges& e, ClassifyTolerance tol) {
  const bool plus = bc == BoundaryCondition::Plus;
  if (!plus && th.m0 && std::fabs(pt.xi - th.xi_t) <= tol.xi &&
      std::fabs(pt.b - e.b_upper) <= tol.b)
    return {Regime::TriplePoint, droplet_fraction(p, bc, *th.m0)};
  if (std::fabs(pt.b - e.b_upper) <= tol.b) {
    const auto set = minimize_q(p, bc, {e.b_upper, pt.xi});
    return {Regime::BoundaryUpper, droplet_fraction(p, bc, set.minimizers.front())};
  }
  if (std::fabs(pt.b - e.b_lower) <= tol.b) {
    const auto set = minimize_q(p, bc, {e.b_lower, pt.xi});
    return {Regime::BoundaryLower, droplet_fraction(p, bc, set.minimizers.back())};
  }
  if (pt.b > e.b_upper) return {Regime::Liquid, plus ? 0.0 : 1.0};
  if (pt.b < e.b_lower) return {Regime::Ice, plus ? 1.0 : 0.0};
  const auto set = minimize_q(p, bc, pt);
  return {Regime::PhaseSeparation, droplet_fraction(p, bc, set.minimizers.front())};
}

}  // namespace

RegimeLabel classify(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt,
                     const CriticalCurves& thresholds, ClassifyTolerance tol) {
  p.validate();
  if (!(pt.xi >= 0.0)) throw std::domain_error("classify: xi must be >= 0");
  return classify_against(p, bc, pt, thresholds, thresholds.edges(p, pt.xi), tol);
}

RegimeLabel classify(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt) {
  return classify(p, bc, pt, critical_thresholds(p, bc));
}

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid: resolution must be positive");
  if (!(xi_min >= 0.0 && xi_max > xi_min)) throw std::invalid_argument("grid: need 0 <= xi_min < xi_max");
  if (!(b_max > b_min)) throw std::invalid_argument("grid: need b_min < b_max");
}

DiagramRaster raster(const ModelParams& p, BoundaryCondition bc, const GridSpec& grid) {
  p.validate();
  grid.validate();
  DiagramRaster out;
  out.params = p;
  out.bc = bc;
  out.grid = grid;
  const auto th = critical_thresholds(p, bc);
  const ClassifyTolerance tol{0.5 * grid.cell_height(), 0.5 * grid.cell_width()};

  out.cells.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int i = 0; i < grid.nx; ++i) {
    const double xi = grid.xi_at(i);
    const auto edges = th.edges(p, xi);
    for (int j = 0; j < grid.ny; ++j)
      out.cells.push_back(classify_against(p, bc, {grid.b_at(j), xi}, th, edges, tol));
  }

  constexpr int kOverlayPoints = 400;
  std::vector<double> xis;
  for (int k = 0; k <= kOverlayPoints; ++k)
    xis.push_back(grid.xi_min + (grid.xi_max - grid.xi_min) * k / kOverlayPoints);
  for (double t : {th.xi_t, th.xi_u})
    if (t > grid.xi_min && t < grid.xi_max) xis.push_back(t);
  std::sort(xis.begin(), xis.end());
  xis.erase(std::unique(xis.begin(), xis.end()), xis.end());
  out.curves = sample_curves_at(p, bc, xis);
  return out;
}

DiagramFormat parse_diagram_format(std::string_view text) {
  if (text == "csv") return DiagramFormat::Csv;
  if (text == "svg") return DiagramFormat::Svg;
  throw std::invalid_argument("unknown diagram format '" + std::string(text) + "' (csv or svg)");
}

namespace {

OutputHeader diagram_header(const DiagramRaster& r) {
  OutputHeader h;
  h.command = "diagram";
  h.add("bc", std::string(to_string(r.bc)));
  h.add("d", std::to_string(r.params.d));
  h.add("m_star", r.params.m_star);
  h.add("w1", r.params.w1);
  h.add("kappa", r.params.kappa);
  h.add("xi_range", format_number(r.grid.xi_min) + ".." + format_number(r.grid.xi_max));
  h.add("b_range", format_number(r.grid.b_min) + ".." + format_number(r.grid.b_max));
  h.add("nx", std::to_string(r.grid.nx));
  h.add("ny", std::to_string(r.grid.ny));
  h.add("xi_t", r.curves.xi_t);
  h.add("xi_u", r.curves.xi_u);
  if (r.curves.xi_1) h.add("xi_1", *r.curves.xi_1);
  if (r.curves.xi_2) h.add("xi_2", *r.curves.xi_2);
  if (r.curves.m0) h.add("m0", *r.curves.m0);
  return h;
}

}  // namespace

void write_csv(const DiagramRaster& r, std::ostream& os) {
  write_header(os, diagram_header(r));
  os << "xi,b,regime,droplet_fraction\n";
  char frac[32];
  for (int i = 0; i < r.grid.nx; ++i) {
    for (int j = 0; j < r.grid.ny; ++j) {
      const auto& cell = r.at(i, j);
      std::snprintf(frac, sizeof frac, "%.6f", cell.droplet_fraction);
      os << format_number(r.grid.xi_at(i)) << ',' << format_number(r.grid.b_at(j)) << ','
         << to_string(cell.regime) << ',' << frac << '\n';
    }
  }
}

namespace {

struct Canvas {
  double width = 720, height = 540;
  double left = 70, right = 20, top = 40, bottom = 60;
  GridSpec grid;

  double x(double xi) const {
    return left + (xi - grid.xi_min) / (grid.xi_max - grid.xi_min) * (width - left - right);
  }
  double y(double b) const {
    return top + (grid.b_max - b) / (grid.b_max - grid.b_min) * (height - top - bottom);
  }
};

const char* fill_for(Regime r) {
  switch (r) {
    case Regime::Liquid:
      return "#ffffff";
    case Regime::Ice:
      return "#cfe3f7";
    case Regime::PhaseSeparation:
      return "#c8c8c8";
    case Regime::BoundaryUpper:
    case Regime::BoundaryLower:
      return "#8c8c8c";
    case Regime::TriplePoint:
      return "#d62728";
  }
  return "#ffffff";
}

struct Branch {
  std::string name;
  bool thick = false;
  std::vector<std::pair<double, double>> points;
};

// Plus: the minimizer jumps across b1 and across the coincident curve, and
// moves continuously across b2 once xi > xi_t. Minus: it jumps across b~2, across
// b~1 for xi_t < xi < xi_u and across the coincident curve; continuous on b~1
// for xi >= xi_u.
std::vector<Branch> split_branches(const DiagramRaster& r) {
  const auto& c = r.curves;
  const bool plus = r.bc == BoundaryCondition::Plus;
  Branch coincident{"coincident", true, {}};
  Branch upper_jump{plus ? "b1" : "b1_tilde_jump", true, {}};
  Branch upper_smooth{"b1_tilde_continuous", false, {}};
  Branch lower{plus ? "b2" : "b2_tilde", !plus, {}};
  for (const auto& s : c.samples) {
    if (s.xi <= c.xi_t) coincident.points.emplace_back(s.xi, s.b_upper);
    if (s.xi >= c.xi_t) {
      lower.points.emplace_back(s.xi, s.b_lower);
      if (plus || s.xi <= c.xi_u) upper_jump.points.emplace_back(s.xi, s.b_upper);
      if (!plus && s.xi >= c.xi_u) upper_smooth.points.emplace_back(s.xi, s.b_upper);
    }
  }
  std::vector<Branch> out;
  for (auto* b : {&coincident, &upper_jump, &upper_smooth, &lower})
    if (b->points.size() >= 2) out.push_back(std::move(*b));
  return out;
}

}  // namespace

void write_svg(const DiagramRaster& r, std::ostream& os) {
  Canvas cv;
  cv.grid = r.grid;
  std::ostringstream head;
  write_header(head, diagram_header(r));
  os << "<!--\n" << head.str() << "-->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width << "\" height=\""
     << cv.height << "\" viewBox=\"0 0 " << cv.width << ' ' << cv.height << "\">\n";
  os << "<title>phase diagram, " << to_string(r.bc) << " boundary condition</title>\n";
  const double pw = cv.width - cv.left - cv.right;
  const double ph = cv.height - cv.top - cv.bottom;
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << cv.left << "\" y=\"" << cv.top
     << "\" width=\"" << pw << "\" height=\"" << ph << "\"/></clipPath></defs>\n";

  os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  const double cw = pw / r.grid.nx;
  const double ch = ph / r.grid.ny;
  for (int i = 0; i < r.grid.nx; ++i) {
    for (int j = 0; j < r.grid.ny; ++j) {
      os << "<rect x=\"" << format_number(cv.left + i * cw, 6) << "\" y=\""
         << format_number(cv.top + (r.grid.ny - 1 - j) * ch, 6) << "\" width=\""
         << format_number(cw, 6) << "\" height=\"" << format_number(ch, 6) << "\" fill=\""
         << fill_for(r.at(i, j).regime) << "\"/>\n";
    }
  }
  os << "</g>\n";

  os << "<g id=\"curves\" clip-path=\"url(#plot)\" fill=\"none\">\n";
  for (const auto& branch : split_branches(r)) {
    os << "<polyline class=\"" << (branch.thick ? "thick" : "thin") << "\" data-branch=\""
       << branch.name << "\" style=\"fill:none;stroke:#000000;stroke-width:"
       << (branch.thick ? 3 : 1) << "\" points=\"";
    for (const auto& [xi, b] : branch.points)
      os << format_number(cv.x(xi), 7) << ',' << format_number(cv.y(b), 7) << ' ';
    os << "\"/>\n";
  }
  os << "</g>\n";

  os << "<rect x=\"" << cv.left << "\" y=\"" << cv.top << "\" width=\"" << pw << "\" height=\""
     << ph << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  os << "<g id=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n";
  constexpr int kTicks = 5;
  for (int k = 0; k <= kTicks; ++k) {
    const double xi = r.grid.xi_min + (r.grid.xi_max - r.grid.xi_min) * k / kTicks;
    const double b = r.grid.b_min + (r.grid.b_max - r.grid.b_min) * k / kTicks;
    const double x = cv.x(xi);
    const double y = cv.y(b);
    os << "<line x1=\"" << format_number(x, 7) << "\" y1=\"" << cv.top + ph << "\" x2=\""
       << format_number(x, 7) << "\" y2=\"" << cv.top + ph + 5 << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << format_number(x, 7) << "\" y=\"" << cv.top + ph + 20
       << "\" text-anchor=\"middle\">" << format_number(xi, 3) << "</text>\n";
    os << "<line x1=\"" << cv.left - 5 << "\" y1=\"" << format_number(y, 7) << "\" x2=\""
       << cv.left << "\" y2=\"" << format_number(y, 7) << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << cv.left - 8 << "\" y=\"" << format_number(y + 4, 7)
       << "\" text-anchor=\"end\">" << format_number(b, 3) << "</text>\n";
  }
  os << "<text x=\"" << cv.left + pw / 2 << "\" y=\"" << cv.height - 15
     << "\" text-anchor=\"middle\">scaled concentration \xCE\xBE</text>\n";
  os << "<text x=\"18\" y=\"" << cv.top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << cv.top + ph / 2 << ")\">scaled field b</text>\n";
  os << "<text x=\"" << cv.left << "\" y=\"" << cv.top - 12 << "\">"
     << (r.bc == BoundaryCondition::Plus ? "liquid (plus)" : "ice (minus)")
     << " boundary condition</text>\n";
  os << "</g>\n</svg>\n";
}

void emit(const DiagramRaster& r, DiagramFormat format, const std::filesystem::path& path) {
  auto out = open_output(path);
  if (format == DiagramFormat::Csv)
    write_csv(r, out);
  else
    write_svg(r, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing diagram to '" + path.string() + "'");
}

}  // namespace saltice
