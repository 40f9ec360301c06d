#pragma once

// Quarter-ball domain {x^2+y^2+z^2 < R^2, x > 0, y > 0}, its faces, the
// inversion in the bounding sphere, and face quadrature rules.

#include <cstddef>
#include <string_view>
#include <vector>

namespace sdn {

/// Singularity exponents and ball radius; requires 0 < 2 alpha, 2 beta < 1 and R > 0.
struct Parameters {
  double alpha = 0.25;
  double beta = 0.25;
  double R = 1.0;
};

void validate(const Parameters& params);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double s, const Point3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(const Point3& a) { return dot(a, a); }
double norm(const Point3& a);

/// Sign of the image map. `kelvin` is m -> (R^2/|m|^2) m; `paper` negates it;
/// the negated map does not fix the sphere and is kept for the discriminating test.
enum class InversionSign { kelvin, paper };

struct Image {
  Point3 image;
  double r0 = 0.0;  ///< |m0|
};

Image invert_point(const Point3& m0, double R, InversionSign sign = InversionSign::kelvin);

/// Squared distances between m and m0 and from m to the mirror images of m0
/// in the planes x = 0 and y = 0, with xi = 1 - r1_2/r2 and eta = 1 - r2_2/r2.
struct DistanceBundle {
  double r2 = 0.0;
  double r1_2 = 0.0;
  double r2_2 = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};

/// Throws SingularPointError when m == m0.
DistanceBundle distance_bundle(const Point3& m, const Point3& m0);

enum class Membership { Interior, FaceOmega1, FaceOmega2, SphereFace, Edge, Outside };

std::string_view to_string(Membership m);

/// Classification with tolerance 1e-12 (relative to R) on the defining equalities.
/// Points on two or more boundary pieces are reported as Edge.
Membership domain_membership(const Point3& m, double R);

/// Distance from an interior point to the nearest face.
double distance_to_boundary(const Point3& m, double R);

enum class Face { Omega1, Omega2, Sphere };

std::string_view to_string(Face f);

/// Tensor-product rule on one face. Each weight carries the face weight
/// (y^{2beta}, x^{2alpha} or x^{2alpha} y^{2beta}) times the area element, so
/// sum_j weights[j] * f(nodes[j]) approximates the weighted surface integral of f.
struct FaceQuadrature {
  Face face = Face::Omega1;
  std::vector<Point3> nodes;
  std::vector<double> weights;
  std::size_t resolution = 0;
};

/// `resolution` nodes per parametric direction (resolution^2 in total).
FaceQuadrature face_quadrature(Face face, const Parameters& params, std::size_t resolution);

/// Closed-form weighted measure of a face (the integral of the constant 1).
double weighted_face_measure(Face face, const Parameters& params);

/// Gauss rule for the weight (1-s)^a (1+s)^b on (-1, 1), a, b > -1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_jacobi(std::size_t n, double a, double b);

}  // namespace sdn
