#pragma once
// Configurations (zero-centroid point sets with U U^t = rho I), configured
// stars (W W^t = rho I + sigma u u^t), embedded frameworks, and the
// constructions built on them: double cones over polytope skeletons, complete
// graphs with apexes, axis extension of invariant stars, cone stacking along
// a common axis, and layered bisected cones over plane tilings.  Projection
// to the complex plane turns each framework into a field solving the
// quadratic difference equation; invariance means the per-vertex gamma does
// not depend on the ambient orthogonal transformation.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qde/graph.hpp"

namespace qde {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// n points in R^d as columns, centroid zero, U U^t = rho I.
struct Configuration {
    Mat points;
    double rho = 0.0;

    int dim() const { return static_cast<int>(points.rows()); }
    int count() const { return static_cast<int>(points.cols()); }
};

// Checks the configuration conditions and computes rho; throws if violated.
Configuration make_configuration(const Mat& points, double tol = 1e-9);

// Configuration generators.
Configuration roots_of_unity(int n);                        // R^2, rho = n/2
Configuration tetrahedron_configuration();                  // R^3, rho = 4
Configuration cross_polytope_configuration(int dim);        // R^dim, rho = 2
Configuration icosahedron_configuration(double lambda);     // R^3, 12 points
Configuration dodecahedron_configuration(double lambda);    // R^3, 20 points
Configuration simplex_configuration(int n);                 // n+1 points in R^n
Configuration quad_configuration(double lambda, double mu); // needs l^2+m^2 = 2

// The two ways of promoting a configuration in R^d to one in R^{d+1}: either
// append a constant last coordinate and one balancing vertex on the new axis,
// or append a zero last coordinate and a pair of vertices at +-sqrt(rho/2).
Configuration extend_with_balancing_vertex(const Configuration& c);
Configuration extend_with_axis_pair(const Configuration& c);

// Decomposition W W^t = rho I + sigma u u^t with column sum sqrt(n(sigma+rho)) u.
struct StarInvariants {
    double rho = 0.0;
    double sigma = 0.0;
    Vec u;
};

// Throws std::domain_error("not a configured star") when no decomposition
// fits within tol (relative to the matrix scale).
StarInvariants star_invariants(const Mat& w, double tol = 1e-9);

// gamma of a configured star: sigma / (sigma + rho).
inline double star_gamma(const StarInvariants& s) { return s.sigma / (s.sigma + s.rho); }

// Haar-uniform random orthogonal matrix (orthonormalized standard-normal
// samples, factorization made unique by a positive triangular diagonal).
Mat random_orthogonal(int dim, std::uint64_t seed);

// z_l = first two coordinates of A x_l as a complex number; A must be
// orthogonal to 1e-12.
std::vector<Complex> project_with_transform(const Mat& points, const Mat& a);

// n (sum z^2) / (sum z)^2; throws when the denominator vanishes.
double gamma_of_projection(const std::vector<Complex>& zs, double tol = 1e-9);

// A graph embedded in R^N; column l of points is the position of vertices()[l].
struct Framework {
    Graph graph;
    Mat points;

    Vec position(const std::string& id) const;
};

Framework make_framework(const std::vector<std::string>& names, const Mat& points,
                         const std::vector<std::pair<int, int>>& edges);

// Skeleton generators (all centred on the origin).
Framework regular_polygon_framework(int n);  // unit circumradius n-gon in R^2
Framework tetrahedron_framework();
Framework octahedron_framework();
Framework cube_framework();

// Field of projected values after an orthogonal transform (identity = plain
// first-two-coordinates projection).
Field projected_field(const Framework& fw, const Mat& a);

// Per-vertex gamma of the projected field; vertices where the mean difference
// vanishes are omitted from the table.
std::map<std::string, double> framework_gamma(const Framework& fw, const Mat& a,
                                              double tol = 1e-9);

struct DoubleCone {
    Framework framework;
    double height = 0.0;      // apex offset sqrt(rho_vertex_figure / 2)
    double gamma_lat = 0.0;   // gamma at the original polytope vertices
    double gamma_apex = 0.0;  // gamma at the two apexes
    bool planar_special = false;  // two-point configuration: tetrahedron projection
};

// The unique invariant double cone over a regular-polytope skeleton: two
// apexes on the symmetry axis joined to every vertex.  The height override
// exists to demonstrate that any other choice destroys invariance.
DoubleCone double_cone(const Framework& polytope,
                       std::optional<double> height_override = std::nullopt);

// Complete graph on a configuration plus two apexes at +-sqrt(rho/2);
// gamma_lat = (n+1)/(n+2) and gamma_apex = (n-2)/n, independent of the
// configuration.  close_apexes joins the apexes, which for apex distance
// sqrt(n) (unit polygon) makes gamma constant (n+1)/(n+2).
DoubleCone complete_double_cone(const Configuration& c, bool close_apexes);

// New gamma after adding an external vertex at signed position x along the
// axis of an invariant star whose centre of mass sits at distance b > 0:
// (n+1)(x^2 + n b^2 gamma) / (x + n b)^2.  Throws at the pole x = -n b.
double extend_star(int n, double b, double gamma, double x);
// Same, reading n, b and gamma off an explicit star matrix.
double extend_star(const Mat& w, double x);

struct ProbeReport {
    double max_deviation = 0.0;  // max over trials and vertices of |gamma_A - gamma_id|
    std::size_t trials = 0;
    std::vector<std::string> degenerate;  // vertices with vanishing mean difference
};

// Draws `trials` random orthogonal transforms and compares per-vertex gamma
// against the identity projection.
ProbeReport invariance_probe(const Framework& fw, std::size_t trials, std::uint64_t seed);

// Real positions x along the common axis at which a new vertex extends the
// apex of the double cone over the unit n-gon with the apex gamma brought to
// the lateral value, allowing cones to be stacked invariantly.  Returns the
// real roots of the resulting quadratic, descending (0, 1 or 2 of them).
std::vector<double> stack_cones_offset(int n);

enum class Tiling { SquareOctagon, TriangleDodecagon, Hexagon };

struct BisectedLayers {
    double gamma_lat = 0.0;            // lateral gamma with the bisecting vertex added
    std::vector<double> distances;     // real layer distances, descending
};

// Double cone over the unit polygon of the tiling with the vertex figure
// bisected by an extra axis vertex at distance d (default: the polygon edge
// length, as the tiling dictates); layer distances equate the extended apex
// gamma with the bisected lateral gamma.  Throws when d hits the lateral
// pole or no real layer distance exists.
BisectedLayers bisected_cone_layers(Tiling tiling,
                                    std::optional<double> d_override = std::nullopt);

}  // namespace qde
