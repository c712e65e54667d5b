#include <doctest.h>

#include <saltice/phase_diagram.hpp>
#include <saltice/variational.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace saltice;

namespace {

const ModelParams canon{2, 0.8, 1.0, 1.0};
const ModelParams ice{2, 0.98, 1.0, 4.0};
constexpr auto kPlus = BoundaryCondition::Plus;
constexpr auto kMinus = BoundaryCondition::Minus;

std::string csv_of(const DiagramRaster& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool separated(Regime r) { return r == Regime::PhaseSeparation; }

// Steps of the droplet fraction larger than 0.02 along a fine column of b values.
int count_jumps(const ModelParams& p, BoundaryCondition bc, double xi, double b_lo, double b_hi,
                int n) {
  const auto th = critical_thresholds(p, bc);
  int jumps = 0;
  double previous = classify(p, bc, {b_lo, xi}, th).droplet_fraction;
  for (int j = 1; j <= n; ++j) {
    const double f = classify(p, bc, {b_lo + (b_hi - b_lo) * j / n, xi}, th).droplet_fraction;
    jumps += std::fabs(f - previous) > 0.02;
    previous = f;
  }
  return jumps;
}

}  // namespace

TEST_CASE("regime names and formats") {
  CHECK(to_string(Regime::PhaseSeparation) == "phase_separation");
  CHECK(to_string(Regime::TriplePoint) == "triple_point");
  CHECK(parse_diagram_format("svg") == DiagramFormat::Svg);
  CHECK_THROWS_AS(parse_diagram_format("png"), std::invalid_argument);
}

TEST_CASE("classify against the curves") {
  const auto liquid = classify(canon, kPlus, {0.5, 2.0});
  CHECK(liquid.regime == Regime::Liquid);
  CHECK(liquid.droplet_fraction == 0.0);
  const auto frozen = classify(canon, kPlus, {-3.0, 2.0});
  CHECK(frozen.regime == Regime::Ice);
  CHECK(frozen.droplet_fraction == 1.0);
  const auto mixed = classify(canon, kPlus, {-1.7, 2.0});
  CHECK(mixed.regime == Regime::PhaseSeparation);
  CHECK(mixed.droplet_fraction > 0.0);
  CHECK(mixed.droplet_fraction < 1.0);
  CHECK(mixed.droplet_fraction == doctest::Approx(droplet_fraction(canon, kPlus, m_plus(canon, {-1.7, 2.0}))));

  for (double xi = 0.05; xi < xi_t_plus(canon); xi += 0.1)
    for (double b = -3.0; b < 1.0; b += 0.01) {
      const auto r = classify(canon, kPlus, {b, xi}).regime;
      CHECK_FALSE(separated(r));
    }

  const auto on = classify(canon, kPlus, {b1_plus(canon, 2.0), 2.0});
  CHECK(on.regime == Regime::BoundaryUpper);
}

TEST_CASE("fraction jumps across the lower minus curve in the double-transition window") {
  const double xi = 0.22;
  const auto th = critical_thresholds(ice, kMinus);
  const auto e = th.edges(ice, xi);
  const auto below = classify(ice, kMinus, {e.b_lower - 1e-6, xi}, th);
  const auto above = classify(ice, kMinus, {e.b_lower + 1e-6, xi}, th);
  CHECK(below.regime == Regime::Ice);
  CHECK(below.droplet_fraction == 0.0);
  CHECK(above.regime == Regime::PhaseSeparation);
  CHECK(above.droplet_fraction > 0.05);

  const auto triple = classify(ice, kMinus, {th.edges(ice, th.xi_t).b_upper, th.xi_t}, th);
  CHECK(triple.regime == Regime::TriplePoint);
  CHECK(triple.droplet_fraction == doctest::Approx(droplet_fraction(ice, kMinus, *th.m0)));
}

TEST_CASE("jump structure of the droplet fraction") {
  CHECK(count_jumps(canon, kPlus, 2.0, -2.0, -1.4, 2000) == 1);
  CHECK(count_jumps(ice, kMinus, 0.22, -0.15, 0.25, 2000) == 2);
  CHECK(count_jumps(ice, kMinus, 0.4, -2.5, 0.4, 8000) == 1);
}

TEST_CASE("tiny all-liquid grid") {
  GridSpec g;
  g.xi_min = 0.0;
  g.xi_max = 1.0;
  g.b_min = 5.0;
  g.b_max = 6.0;
  g.nx = g.ny = 2;
  const auto r = raster(canon, kPlus, g);
  REQUIRE(r.cells.size() == 4);
  for (const auto& c : r.cells) CHECK(c.regime == Regime::Liquid);
}

TEST_CASE("raster layout") {
  for (auto bc : {kPlus, kMinus}) {
    const auto r = raster(canon, bc, GridSpec{});
    const double xt = r.curves.xi_t;
    const double half = 0.5 * r.grid.cell_height();
    for (int i = 0; i < r.grid.nx; ++i) {
      const double xi = r.grid.xi_at(i);
      const auto e = r.curves.edges(canon, xi);
      int stage = 0;  // 0 ice-like, 1 separated, 2 liquid-like
      double last_fraction = -1.0;
      bool saw_band = false;
      for (int j = 0; j < r.grid.ny; ++j) {
        const auto& cell = r.at(i, j);
        const double b = r.grid.b_at(j);
        const bool low = cell.regime == Regime::Ice;
        if (separated(cell.regime)) {
          saw_band = true;
          // no separated cell outside the band by more than one cell
          CHECK(b > e.b_lower - 2 * half);
          CHECK(b < e.b_upper + 2 * half);
          if (last_fraction >= 0.0) {
            if (bc == kPlus)
              CHECK(cell.droplet_fraction <= last_fraction + 1e-12);
            else
              CHECK(cell.droplet_fraction >= last_fraction - 1e-12);
          }
          last_fraction = cell.droplet_fraction;
          CHECK(stage <= 1);
          stage = 1;
        } else if (cell.regime == Regime::Liquid) {
          stage = 2;
        } else if (low) {
          CHECK(stage == 0);
        }
      }
      if (xi > xt + r.grid.cell_width() && e.b_upper - e.b_lower > 4 * half) CHECK(saw_band);
    }
  }
}

TEST_CASE("deterministic output") {
  const auto a = csv_of(raster(canon, kMinus, GridSpec{}));
  const auto b = csv_of(raster(canon, kMinus, GridSpec{}));
  CHECK(a == b);
  CHECK(a.rfind("# saltice 0.1.0\n", 0) == 0);
  CHECK(a.find("xi,b,regime,droplet_fraction\n") != std::string::npos);
}

TEST_CASE("golden rasters") {
  CHECK(csv_of(raster(canon, kPlus, GridSpec{})) == slurp(SALTICE_TEST_DATA "/diagram_plus_64.csv"));
  CHECK(csv_of(raster(canon, kMinus, GridSpec{})) == slurp(SALTICE_TEST_DATA "/diagram_minus_64.csv"));
}

TEST_CASE("svg figure") {
  std::ostringstream os;
  write_svg(raster(ice, kMinus, GridSpec{0.0, 0.6, -1.0, 0.8, 48, 48}), os);
  const auto svg = os.str();
  CHECK(svg.rfind("<!--\n# saltice 0.1.0", 0) == 0);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg.find("class=\"thick\"") != std::string::npos);
  CHECK(svg.find("class=\"thin\"") != std::string::npos);
  CHECK(svg.find("data-branch=\"b2_tilde\"") != std::string::npos);
  CHECK(svg.find("stroke-width:3") != std::string::npos);
  CHECK(svg.find("stroke-width:1") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("emit reports the path on failure") {
  const auto r = raster(canon, kPlus, GridSpec{0, 1, 0, 1, 2, 2});
  try {
    emit(r, DiagramFormat::Csv, "/proc/definitely/not/here.csv");
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/proc/definitely/not/here.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(raster(canon, kPlus, GridSpec{0, 1, 0, 1, 0, 2}), std::invalid_argument);
}
