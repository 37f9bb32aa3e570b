#pragma once
// Buchberger's algorithm over exact rationals (lexicographic order), the
// per-graph polynomial ideal of the quadratic difference equation, the
// gamma-polynomial, and spectrum-membership testing.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qde/graph.hpp"
#include "qde/multipoly.hpp"
#include "qde/unipoly.hpp"

namespace qde {

struct GroebnerBasis {
    std::vector<MultiPoly> polys;  // reduced, monic, ascending leading monomials
    bool contains_one() const;
};

// Reduced Groebner basis under the lexicographic order the inputs share.
GroebnerBasis buchberger(const std::vector<MultiPoly>& generators);

struct EquationSystem {
    std::vector<MultiPoly> polys;        // one per vertex, integer coefficients
    std::vector<std::string> var_names;  // z variables first, "g" last
    std::vector<std::string> var_vertices;  // vertex id per z variable
    int gamma_index = 0;                 // index of g (always last)
};

// The vertex equations gamma*(sum of differences)^2 - n*(sum of squared
// differences) with the field pinned to 0 at the first vertex and 1 at the
// anchor; the anchor is given by vertex id.
EquationSystem equation_system(const Graph& g, const std::string& anchor);

struct GammaPolynomial {
    UniPoly p;                         // primitive integer, positive leading
    std::vector<UniPoly> per_anchor;   // p_ell, ell = 2..N (anchor order below)
    std::vector<std::string> anchors;
    std::vector<std::string> failed_anchors;  // no univariate-in-g element
    bool ok() const { return failed_anchors.empty(); }
};

GammaPolynomial gamma_polynomial(const Graph& g);

// True iff the graph admits a constant-gamma solution at the given root,
// encoded by an exact annihilating polynomial m(g) (e.g. b*g - a, or the
// square-free factor from real_roots): for some anchor the augmented ideal
// is proper.
bool spectrum_membership(const Graph& g, const UniPoly& annihilator);

// Numeric solutions of the equation with a fixed constant gamma, found by
// specializing each anchor's lex basis and back-substituting (Durand-Kerner
// on each univariate elimination step).  Returns fields with residual below
// tol; empty when none are found.
std::vector<Field> solve_states(const Graph& g, double gamma, double tol = 1e-6,
                                std::size_t max_branches = 256);

// Same search with the generators augmented by an exact annihilator of gamma
// (b*g - a for a rational root a/b, or the irreducible factor).  Pinning
// gamma symbolically keeps the basis computation small on graphs whose free
// ideal is expensive, so this is the form used for heavy instances.
std::vector<Field> solve_states(const Graph& g, double gamma,
                                const UniPoly& annihilator, double tol = 1e-6,
                                std::size_t max_branches = 256);

// Roots of a complex-coefficient polynomial (ascending coefficients).
std::vector<std::complex<double>> complex_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace qde
