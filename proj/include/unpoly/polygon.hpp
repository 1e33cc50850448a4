#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unpoly/sampler.hpp"

namespace unpoly {

/// Complex edge variables; edge j has length |z_j|^2 and normal z_j^2.
struct PolygonConfig {
  std::vector<cplx> z;
  int size() const { return static_cast<int>(z.size()); }
};

struct ClosurePerimeter {
  cplx closure;      // sum_j z_j^2
  double perimeter;  // sum_j |z_j|^2
};
ClosurePerimeter closure_and_perimeter(const PolygonConfig& c);

struct PolygonClosing {
  PolygonConfig closed;
  double theta = 0.0;  // phase applied to every z
  double eta = 0.0;    // Re z -> e^eta Re z, Im z -> e^-eta Im z
};
/// Rotate so that sum z^2 is real and nonnegative, then rescale real and
/// imaginary parts. Closed perimeter is sqrt(E^2 - |C|^2).
PolygonClosing close_polygon(const PolygonConfig& c);

struct Polygon {
  std::vector<cplx> vertices;  // counterclockwise, vertex centroid at 0
  std::vector<cplx> normals;   // z^2 per (merged) edge, sorted by angle
  std::vector<double> lengths;
  std::vector<int> multiplicity;  // input edges merged into each edge
  double closure_residual = 0.0;  // |sum of edge vectors|
  bool convex = false;
  double perimeter() const;
  double area() const;
};

/// Edge vector of normal n is n ^ e_z = (n_y, -n_x); edges sorted by the
/// angle of their normals, parallel normals merged.
Polygon reconstruct(const PolygonConfig& c);

/// R_i = O_i1 sqrt(E/2), I_i = O_i2 sqrt(E/2) for a Haar-random orthonormal pair.
PolygonConfig sample_polygon(int n, double perimeter, Rng& rng);
PolygonConfig sample_polygon(int n, double perimeter, RandomSeed seed);

PolygonConfig apply_orthogonal(const Eigen::MatrixXd& o, const PolygonConfig& c);
/// Rotation by angle t in the (i, j) plane.
PolygonConfig on_generator(int i, int j, double t, const PolygonConfig& c);

/// Oriented graph whose vertices are polygons; a link contributes z_source to
/// its source polygon and z_target to its target polygon (if any).
struct NetworkLink {
  int source = 0;
  std::optional<int> target;
  cplx z_source;
  cplx z_target;
};

struct ComplexNetwork {
  std::vector<std::string> vertices;
  std::vector<NetworkLink> links;
};

struct NetworkReport {
  struct VertexResidual {
    int vertex;
    double residual;  // |sum z^2| / sum |z|^2
  };
  struct LinkMismatch {
    int link;
    double mismatch;  // ||z_s|^2 - |z_t|^2| / max(|z_s|^2, |z_t|^2)
  };
  std::vector<VertexResidual> vertices;
  std::vector<LinkMismatch> links;
  bool pass = true;
};

/// Passes iff every residual and mismatch is <= 1e-10.
NetworkReport validate_network(const ComplexNetwork& n);

/// Two equilateral triangles glued along one link; four boundary links.
ComplexNetwork two_triangle_network();

}  // namespace unpoly
