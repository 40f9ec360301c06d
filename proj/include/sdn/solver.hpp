#pragma once

// Boundary-integral evaluation of the solution of the Dirichlet-Neumann
// problem in the quarter ball from data on its three faces.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sdn/greens.hpp"

namespace sdn {

using FaceField = std::function<double(double, double)>;
using SphereField = std::function<double(const Point3&)>;
using VolumeField = std::function<double(const Point3&)>;

/// Problem data: tau1(y, z) = u on x = 0, nu2(x, z) = lim y^{2 beta} du/dy on
/// y = 0, phi(m) = u on the sphere.
struct BoundaryData {
  FaceField tau1;
  FaceField nu2;
  SphereField phi;
};

BoundaryData constant_data(double value);

BoundaryData scaled(const BoundaryData& data, double factor);

/// Largest |tau1 - phi| over `samples` points of the rim y^2 + z^2 = R^2, x = 0.
double matching_mismatch(const BoundaryData& data, double R, std::size_t samples = 64);

/// Orientation of the three face integrals, fixed by the constant-solution,
/// manufactured-solution and u = y^{1-2 beta} tests in test_solver.
inline constexpr double kSignOmega1 = +1.0;
inline constexpr double kSignOmega2 = -1.0;
inline constexpr double kSignSphere = -1.0;

struct SolveReport {
  double value = 0.0;
  std::array<double, 3> face_contributions{};  ///< Omega1, Omega2, sphere
  double est_error = 0.0;                      ///< |value(n) - value(n/2)|
  std::size_t kernel_evals = 0;
};

/// Minimum distance of a solve point from every face, relative to R.
inline constexpr double kFaceClearance = 1e-3;

/// Requires m0 interior and at least kFaceClearance * R from every face, resolution >= 8.
SolveReport solve_at(const KernelContext& ctx, const BoundaryData& data, const Point3& m0,
                     std::size_t resolution);

struct GridResult {
  bool ok = false;
  SolveReport report;
  std::string error;
};

/// solve_at over many points with one set of quadrature rules and one sampling
/// of the data. Failures are reported per entry; output order follows input.
/// `threads` = 0 uses the hardware concurrency.
std::vector<GridResult> solve_grid(const KernelContext& ctx, const BoundaryData& data,
                                   const std::vector<Point3>& points, std::size_t resolution,
                                   std::size_t threads = 0);

/// lim_{y->0+} y^{2 beta} du/dy at (x, z), by central differences at
/// y in {1e-3, 5e-4, 2.5e-4} R and Richardson extrapolation.
/// Throws ExtractionError when successive estimates move apart.
double weighted_neumann_sample(const VolumeField& u, double x, double z, double beta, double R);

/// Values on a tensor grid of face coordinates, row-major in (u, v):
/// (y, z) on Omega1, (x, z) on Omega2, (theta, psi) on the sphere.
struct FaceGrid {
  std::vector<double> u_axis;
  std::vector<double> v_axis;
  std::vector<double> values;
};

/// Bilinear interpolation, constant extrapolation past the axis ends.
/// Lossy: the solver sees a C^0 surrogate of the sampled field.
double bilinear(const FaceGrid& grid, double u, double v);

BoundaryData grid_data(FaceGrid tau1, FaceGrid nu2, FaceGrid phi);

}  // namespace sdn
