#pragma once

#include <saltice/critical_curves.hpp>
#include <saltice/params.hpp>

#include <filesystem>
#include <ostream>
#include <string_view>
#include <vector>

namespace saltice {

enum class Regime { Liquid, Ice, PhaseSeparation, BoundaryUpper, BoundaryLower, TriplePoint };

std::string_view to_string(Regime r);

/// Regime of one (xi, b) point together with the minority-phase volume fraction
/// given by the lever rule on the minimizing magnetization.
struct RegimeLabel {
  Regime regime = Regime::Liquid;
  double droplet_fraction = 0.0;
};

/// Lever rule: (m_star - m) / (2 m_star) for Plus, (m + m_star) / (2 m_star) for Minus.
double droplet_fraction(const ModelParams& p, BoundaryCondition bc, double m);

struct ClassifyTolerance {
  double b = 1e-9;   ///< |b - curve| below this is a boundary point
  double xi = 1e-9;  ///< |xi - xi_t| below this may be the triple point
};

/// Boundary points report the fraction of the minimizer on the low-b side
/// (the limit reached as b increases to the curve); the triple point reports m0.
RegimeLabel classify(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt,
                     const CriticalCurves& thresholds, ClassifyTolerance tol = {});
RegimeLabel classify(const ModelParams& p, BoundaryCondition bc, ThermoPoint pt);

struct GridSpec {
  double xi_min = 0.0;
  double xi_max = 4.0;
  double b_min = -4.0;
  double b_max = 1.0;
  int nx = 64;
  int ny = 64;

  double xi_at(int i) const { return xi_min + (i + 0.5) * (xi_max - xi_min) / nx; }
  double b_at(int j) const { return b_min + (j + 0.5) * (b_max - b_min) / ny; }
  double cell_height() const { return (b_max - b_min) / ny; }
  double cell_width() const { return (xi_max - xi_min) / nx; }
  void validate() const;
};

struct DiagramRaster {
  ModelParams params;
  BoundaryCondition bc = BoundaryCondition::Plus;
  GridSpec grid;
  std::vector<RegimeLabel> cells;  ///< column-major: cells[i * ny + j] at (xi_at(i), b_at(j))
  CriticalCurves curves;           ///< thresholds plus dense samples over the xi range

  const RegimeLabel& at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * grid.ny + j];
  }
};

/// Deterministic rasterization; boundary tolerance is half a cell height.
DiagramRaster raster(const ModelParams& p, BoundaryCondition bc, const GridSpec& grid);

enum class DiagramFormat { Csv, Svg };

DiagramFormat parse_diagram_format(std::string_view text);

/// CSV: header comments, then `xi,b,regime,droplet_fraction`, one row per cell.
void write_csv(const DiagramRaster& r, std::ostream& os);
/// SVG figure: regime cells plus one polyline per curve branch, thick where
/// the minimizer jumps across the curve and thin where it is continuous.
void write_svg(const DiagramRaster& r, std::ostream& os);

void emit(const DiagramRaster& r, DiagramFormat format, const std::filesystem::path& path);

}  // namespace saltice
