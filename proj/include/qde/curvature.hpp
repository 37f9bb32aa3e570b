#pragma once
// Vertex curvature as an angular deficit: at a vertex of degree n with value
// gamma <= 1, a regular star is placed in R^N whose vertex figure is the
// regular (N-1)-polytope with n vertices, tilted so the star solves the
// equation with that gamma; the curvature is one minus the boundary measure
// of the spherical convex hull of the star directions, in absolute angle
// measure (fractions of the full angle).  Closed forms exist in dimensions
// 2, 3 and 4.  Edge curvature compares the axes of neighbouring stars and
// feeds sectional / Ricci / scalar analogues.

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qde/frameworks.hpp"
#include "qde/graph.hpp"

namespace qde {

// Degree 2: (1/2pi) arccos(gamma/(gamma-2)), the exterior angle of the
// two-edge corner.  Requires gamma <= 1; image is [0, 1/2].
double curvature2(double gamma);

// Degree n with triangle/square/pentagon vertex figure (n in {3,4,5}; the
// expression is defined for any n >= 3):
// 1 - (n/2pi) arccos[(1 + 2(1-gamma) cos(2pi/n)) / (3 - 2 gamma)].
double curvature3(double gamma, int n);

// Degree n in {4, 6, 12, 20} with tetrahedron / octahedron / icosahedron /
// dodecahedron vertex figure; deficit of the spherical polyhedron swept out
// by the star directions in S^3.
double curvature4(double gamma, int n);

// Gamma of the orthogonal projection of the 600-cell skeleton: -2(1+sqrt5)/3.
// At this value the icosahedral row evaluates to 6 - (15/pi) arccos(1/3).
double gamma_600cell();

// Edge deficit of the 600-cell: 1 - (5/2pi) arccos(1/3), from the five
// regular tetrahedra sharing each edge.  Satisfies 120 delta_v = 720 delta_e
// with delta_v = curvature4(gamma_600cell(), 12).
double edge_deficit_600cell();

struct CurvatureReport {
    int dimension = 0;
    std::map<std::string, double> deficit;  // absolute angle measure
    double total = 0.0;
    double total_radians = 0.0;  // 2 pi * total
};

// Per-vertex deficits in a fixed dimension (2, 3 or 4) plus the totals used
// in Descartes-style checks.
CurvatureReport vertex_curvatures(const Graph& g, const GammaAssignment& gamma,
                                  int dimension);

struct EdgeCurvatureSuite {
    // Edge keys carry sorted endpoints; Ricci keys are ordered (base, tip).
    std::map<std::pair<std::string, std::string>, double> theta;   // angle in [0, pi]
    std::map<std::pair<std::string, std::string>, double> normal;  // theta / length
    std::map<std::string, double> mean_theta;
    std::map<std::string, double> mean_normal;
    std::map<std::pair<std::string, std::string>, double> ricci;
    std::map<std::string, double> scalar;

    double angle(const std::string& x, const std::string& y) const;
    // Sec_x(e1, e2) = theta(x y1) * theta(x y2).
    double sectional(const std::string& x, const std::string& y1,
                     const std::string& y2) const;
};

// axes: unit star axis per vertex, all in one common frame; lengths: per
// edge.  theta(xy) = arccos <axis(x), axis(y)>, normal curvature theta/l,
// Ric_x(e) = l(e)^2 sum_{z ~ x, z != y} theta(xy) theta(xz), and the scalar
// curvature is the length-free trace sum.
EdgeCurvatureSuite edge_curvature_suite(
    const Graph& g, const std::map<std::string, Vec>& axes,
    const std::map<std::pair<std::string, std::string>, double>& lengths);

// Axis at each framework vertex: normalized mean of the neighbour offsets
// (towards the centre of mass of the star).
std::map<std::string, Vec> framework_axes(const Framework& fw);

// Suite of an embedded framework with its Euclidean edge lengths.
EdgeCurvatureSuite framework_curvature(const Framework& fw);

}  // namespace qde
