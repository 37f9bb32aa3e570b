#pragma once
// Lifting a planar vertex star back into R^N: given the neighbour differences
// z_1..z_n of a solution at a vertex with gamma < 1, construct a configured
// star whose external vertices project orthogonally onto the z's.  For N = 3
// the star is the minimal-Frobenius-norm solution of a linear system and is
// unique up to the sign of the third row; an orientation (proper edge
// colouring plus a per-vertex volume form) pins that sign down.  The same
// data defines median edge lengths, hence path distance, together with the
// collapse operation and the dimension bound for invariant embeddings.

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qde/graph.hpp"

namespace qde {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Invariants of the star to be lifted.  When the projected mean direction
// (u1, u2) already has unit length the linear system turns homogeneous and
// every lift keeps the third row orthogonal to the data (degenerate case).
struct LiftParams {
    double rho = 0.0;
    double sigma = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
    bool degenerate = false;
};

// rho = (1/2)(sum |z|^2 - (gamma/n)|sum z|^2), sigma = gamma rho / (1 - gamma),
// u1 + i u2 = (sum z) / sqrt(n (sigma + rho)).  Requires gamma < 1, at least
// one nonzero z, and (gamma/n)(sum z)^2 = sum z^2 to tol.
LiftParams lift_params(const std::vector<Complex>& zs, double gamma,
                       double tol = kDefaultTol);

// 3 x n star matrix W with rows (Re z, Im z, third row), W W^t = rho I + sigma
// u u^t and column sum sqrt(n(sigma+rho)) u.  Unique up to the sign of the
// third row; `sign` = -1 flips the canonical choice (u3 >= 0, ties broken by
// making the first significant third-row entry positive).  With `regular` set
// the lift is searched among stars whose columns share a common length;
// throws when none exists.
Mat lift3(const std::vector<Complex>& zs, double gamma, int sign = +1,
          bool regular = false, double tol = kDefaultTol);

// N x n star matrix, 3 <= N <= n: the minimal solution supplies row 3 and the
// remaining rows come from an orthonormal set of length-sqrt(rho) vectors
// orthogonal to the data, drawn deterministically from basis_seed.
Mat liftN(const std::vector<Complex>& zs, double gamma, int N,
          std::uint64_t basis_seed = 0, int sign = +1, double tol = kDefaultTol);

// Proper edge colouring plus a volume-form sign per vertex, evaluated on the
// colour-sorted tuple of incident edges.
struct Orientation {
    std::map<std::pair<std::string, std::string>, int> colour;  // endpoints sorted
    std::map<std::string, int> volume;                          // +1 or -1
};

// Proper edge colouring with at most (max degree + 1) colours, numbered from 1.
std::map<std::pair<std::string, std::string>, int> colour_edges(const Graph& g);

// Neighbours of x sorted by the colour of the connecting edge.
std::vector<std::string> colour_ordered_neighbors(
    const Graph& g, const std::map<std::pair<std::string, std::string>, int>& colour,
    const std::string& x);

// Sign s in {+1, -1} such that flipping the third row of w by s makes the
// first nonvanishing 3x3 minor (columns scanned in lexicographic order) carry
// the sign volume_sign.  Throws when every minor vanishes.
int oriented_sign(const Mat& w, int volume_sign, double tol = kDefaultTol);

// lift3 with the sign dictated by volume_sign, columns in the order of zs.
Mat lift3_oriented(const std::vector<Complex>& zs, double gamma, int volume_sign,
                   bool regular = false, double tol = kDefaultTol);

// Lift of the star at x: neighbour differences in colour order, sign from the
// vertex's volume form.
Mat lift3_at(const Graph& g, const Field& phi, const GammaAssignment& gamma,
             const Orientation& orientation, const std::string& x,
             bool regular = false, double tol = kDefaultTol);

// rho of the star at x: (1/2){sum |dphi|^2 - (gamma/n)|sum dphi|^2}.
double vertex_rho(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                  const std::string& x);

// Median edge length r with r^2 = [N + (1-N) gamma] rho / (n (1 - gamma)):
// the mean edge length of a virtual configured star in R^N projecting onto
// the zs.  Requires gamma < 1.
double median_edge_length(const std::vector<Complex>& zs, double gamma, int N);

// Graph version; vertices of degree 2 fall back to the modulus of the
// increments (root mean square of the two).
double median_edge_length(const Graph& g, const Field& phi,
                          const GammaAssignment& gamma, const std::string& x,
                          int N = 3);

// Mean of the median edge lengths at the two endpoints; x and y must be
// adjacent.
double edge_length(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                   const std::string& x, const std::string& y, int N = 3);

// ||dphi||^2 = sum over edges of |phi(y) - phi(x)|^2.
double derivative_norm2(const Graph& g, const Field& phi);

// Median/edge lengths divided by ||dphi||; invariant under phi -> lambda phi + mu.
double absolute_median_edge_length(const Graph& g, const Field& phi,
                                   const GammaAssignment& gamma,
                                   const std::string& x, int N = 3);
double absolute_edge_length(const Graph& g, const Field& phi,
                            const GammaAssignment& gamma, const std::string& x,
                            const std::string& y, int N = 3);

struct Collapsed {
    Graph graph;
    Field field;
    GammaAssignment gamma;  // per-vertex rescale: new_degree * gamma / old_degree
};

// Removes every edge whose endpoints carry equal field values, then every
// vertex left isolated.  The restricted field still solves the equation with
// the rescaled gamma.
Collapsed collapse(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                   double tol = kDefaultTol);

// Infimum over paths from x to y of the summed edge lengths.  Requires the
// graph to be collapsed with respect to phi, gamma < 1 on the component of x,
// and y reachable from x.
double path_distance(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                     int N, const std::string& x, const std::string& y);

struct EmbeddingBound {
    std::size_t min_degree = 0;  // largest admissible ambient dimension
    std::string verdict;
};

// When gamma < 1 everywhere, no invariant embedded realization exists in R^N
// for N exceeding the smallest vertex degree.
EmbeddingBound embedding_bound(const Graph& g, const GammaAssignment& gamma);

}  // namespace qde
