#pragma once
// Particles and their interactions.  A particle is a connected graph carrying
// a catalog of states: fields solving the equation with gamma <= 1 at every
// vertex, considered up to the affine replacement phi -> lambda phi + mu.
// Three events change a universe of particles: correlation joins two
// particles by new edges (an affine match on one side must make the combined
// field a state again), separation collapses a state and splits the graph
// into components, and mutation rewires the edge set while the field keeps
// solving the equation.  The attachment locus describes where a new
// neighbour can be placed so that the equation survives at a chosen vertex,
// and thermal time measures how far the degree sequence sits from a cycle.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qde/graph.hpp"

namespace qde {

// Per-vertex gamma read off a field.  A star is constrained when its mean
// difference does not vanish; an unconstrained star (both the mean and the
// mean square vanish) solves the equation with every gamma and is filled with
// the common constrained value when one exists, otherwise with 1.  Throws
// std::domain_error when some constrained vertex admits no real gamma.
struct StateGamma {
    GammaAssignment gamma;
    std::map<std::string, bool> constrained;
    std::optional<double> constant;  // present when all constrained values agree
};

StateGamma state_gamma(const Graph& g, const Field& phi, double tol = kDefaultTol);

// True when every vertex carries a real gamma <= 1 and the residuals pass.
bool is_state(const Graph& g, const Field& phi, double tol = kDefaultTol);

// A state whose constrained gamma values all coincide.
bool is_isostate(const Graph& g, const Field& phi, double tol = kDefaultTol);

// Affine equivalence phi ~ lambda phi + mu of two fields on the same vertices.
bool same_state(const Field& a, const Field& b, double tol = kDefaultTol);

struct Particle {
    Graph graph;
    std::vector<Field> states;  // a finite catalog, never claimed complete
};

// Validates connectivity and each catalogued state; throws on failure.
Particle make_particle(Graph graph, std::vector<Field> states,
                       double tol = kDefaultTol);

struct Correlation {
    Particle particle;             // combined graph; catalog = the witnesses
    std::vector<Field> witnesses;  // each restricts to phi1 on side one and to
                                   // an affine image of phi2 on side two
};

// Joins two particles (disjoint vertex ids) by new edges.  Vertex sets are
// preserved; new edges may run across the sides or within one side.  The
// combined field keeps phi1 on side one and carries lambda phi2 + mu on side
// two; candidate (lambda, mu) come from value and edge-difference anchors on
// the new edges, are polished by a damped least-squares pass on the realness
// defect at the affected vertices, and every surviving candidate is verified
// as a state.  Witnesses are deduplicated and listed isostates first.
// Throws std::invalid_argument when phi1 or phi2 is not catalogued or the
// vertex sets overlap, and std::runtime_error when no witness exists.
Correlation correlate(const Particle& p1, const Field& phi1,
                      const Particle& p2, const Field& phi2,
                      const std::vector<std::pair<std::string, std::string>>& new_edges,
                      double tol = kDefaultTol);

// Collapses the state (removing equal-value edges and isolated vertices) and
// returns one particle per connected component, each carrying the restricted
// field as its catalog.  Throws std::invalid_argument when phi is not
// catalogued and std::runtime_error when the collapse empties the graph.
std::vector<Particle> separate(const Particle& p, const Field& phi,
                               double tol = kDefaultTol);

struct EdgeEdit {
    bool add = true;  // false removes the edge
    std::string a;
    std::string b;
};

// Rewires the particle on the same vertex set.  The edited graph must stay
// connected and phi must still be a state on it; the returned catalog keeps
// the old states that survive the rewiring.  Throws std::invalid_argument
// when phi is not catalogued or an edit is malformed, std::runtime_error
// when the result disconnects or phi stops being a state.
Particle mutate(const Particle& p, const Field& phi,
                const std::vector<EdgeEdit>& edits, double tol = kDefaultTol);

// Imaginary part of (sum z^2 + w^2) / (sum z + w)^2: the defect of placing a
// new neighbour at w next to a vertex at the origin whose existing
// neighbours sit at zs.  Throws std::domain_error at the pole sum z + w = 0.
double attach_defect(const std::vector<Complex>& zs, Complex w);

// Real cubic in (u, v) whose zero set is the attachment locus of the
// two-neighbour star {1, r e^{i theta}}; it equals
// -(1/2) Im[(sum z^2 + w^2) conj((sum z + w)^2)] at w = u + iv, so the pole
// of the defect lies on the curve.
double attach_cubic(double r, double theta, Complex w);

// Points of the attachment locus inside the rectangle [lo, hi] (corners as
// complex numbers), found by a sign-change scan of the defect on a
// (resolution+1)^2 grid followed by bisection to 1e-9 along each crossing
// segment.  An empty result just means the window misses the locus.
std::vector<Complex> attach_locus(const std::vector<Complex>& zs, Complex lo,
                                  Complex hi, int resolution);

// sqrt(sum (deg(x) - 2)^2) / (2 |E|); zero exactly on disjoint cycles.
// Throws std::invalid_argument on an edgeless graph.
double thermal_time(const Graph& g);

}  // namespace qde
