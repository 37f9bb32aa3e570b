#pragma once
// Energy of a solution: per vertex, the squared norm of the lifted rows of
// the minimal configured star, normalized by the mean squared neighbour
// difference; at a two-edge corner this reduces to 1 + cos(exterior angle).
// For closed polygonal chains of unit bars, the configuration space is
// parametrized by M-3 exterior angles; the energy has a closed form with a
// two-branch square root, regular polygons and star polygons are critical
// points of it, and a fixed-step gradient flow explores the landscape.

#include <string>
#include <vector>

#include "qde/graph.hpp"

namespace qde {

// n ||Z||^2 / sum |z|^2 = (1/(2(1-gamma))) { n - gamma (3-2gamma)
// |sum z|^2 / sum |z|^2 } for a star of n >= 3 differences; invariant under
// zs -> lambda zs; zero for a constant star.  Requires gamma < 1.
double vertex_energy(const std::vector<Complex>& zs, double gamma);

// 1 + cos(exterior angle) at a two-edge corner with neighbour offsets z1, z2;
// zero when the corner is fully folded (offsets parallel).
double corner_energy(const Complex& z1, const Complex& z2);

// Sum over vertices: degree-2 corners use the planar angle, constant stars
// contribute zero, other vertices the n >= 3 formula with their gamma.
double total_energy(const Graph& g, const Field& phi, const GammaAssignment& gamma);

// Closed-chain data for exterior angles sigma_1..sigma_{M-3} of an M-sided
// polygon of unit bars (M = sigma.size() + 3).  s, r, t are the moduli of the
// partial edge-direction sums; the chain closes iff s <= 2.  The last three
// angles are determined up to signs: cos(theta2) = (s^2-2)/2 and theta1,
// theta3 carry a further two-fold ambiguity each.  The energy
//   E = M + sum cos(sigma) + cos(theta1) + cos(theta2) + cos(theta3)
// has two branches from the sign of sqrt(4-s^2).  At s = 0 (folded: theta2 =
// +-pi, theta1 free) the quotient T/s is evaluated by a symmetric +-1e-6
// average along the uniform direction, which keeps the energy finite.
struct ChainQuantities {
    int m = 0;
    double s = 0.0;
    double r = 0.0;
    double t = 0.0;
    double cos_theta2 = 0.0;
    double cos_theta1_plus = 0.0;   // NaN when folded
    double cos_theta1_minus = 0.0;
    double cos_theta3_plus = 0.0;
    double cos_theta3_minus = 0.0;
    double energy_plus = 0.0;
    double energy_minus = 0.0;
    bool folded = false;

    double energy(int branch) const { return branch >= 0 ? energy_plus : energy_minus; }
};

// Throws std::domain_error when s > 2 (the chain cannot close).
ChainQuantities chain_quantities(const std::vector<double>& sigma, double tol = 1e-8);

// dE/dsigma_l on the requested branch, by the recursion on l seeded with the
// explicit first partial.  Throws when s <= eps (singular chart).
std::vector<double> chain_gradient(const std::vector<double>& sigma, int branch = +1,
                                   double eps = 1e-8);

struct ChainFlowStep {
    std::vector<double> sigma;
    double energy = 0.0;
};

struct ChainFlow {
    std::vector<ChainFlowStep> trajectory;
    std::string stop_reason;  // "gradient", "iterations", "boundary", "step"
};

// Fixed-step gradient ascent (direction +1) or descent (-1) with step
// halving on a non-monotone proposal (at most 20 halvings per iteration).
// Stops when the gradient norm falls below 1e-9, after `iters` accepted
// steps, or at the chart boundary s in {0, 2}.  Throws when the start is
// already outside the chart.
ChainFlow chain_flow(const std::vector<double>& sigma0, double step, int iters,
                     int direction, int branch = +1);

// The M vertices of the closed chain, first bar from 0 to 1: the sign
// ambiguities of theta1, theta2, theta3 are resolved by requiring closure
// and the requested branch energy.  Folded chains take theta1 = theta2 = pi.
std::vector<Complex> chain_vertices(const std::vector<double>& sigma, int branch = +1,
                                    double tol = 1e-9);

}  // namespace qde
