#pragma once
// Finite simple graphs, complex-valued vertex fields, and the pointwise
// operators of the quadratic difference equation
//     gamma(x) * (Laplacian phi)(x)^2 = (dphi)^2(x),
// where both the Laplacian and the squared difference are averaged over the
// neighbours of x.  Also carries the discrete calculus (1-forms, d, d*,
// symmetric products), colouring solutions, the weak form of the equation
// and dilations of graph maps.

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qde {

using Complex = std::complex<double>;

// Undirected simple graph over opaque string ids.  Iteration order of
// vertices and of each adjacency list is insertion order, so every
// report produced from a graph is reproducible.
class Graph {
public:
    void add_vertex(const std::string& id);
    void add_edge(const std::string& a, const std::string& b);

    bool has_vertex(const std::string& id) const;
    bool adjacent(const std::string& a, const std::string& b) const;

    const std::vector<std::string>& vertices() const { return order_; }
    const std::vector<std::string>& neighbors(const std::string& id) const;
    std::size_t degree(const std::string& id) const;
    std::size_t vertex_count() const { return order_.size(); }

    // Edges as (a, b) pairs in first-insertion order.
    const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::vector<std::vector<std::string>> connected_components() const;
    bool is_connected() const;

private:
    std::vector<std::string> order_;
    std::map<std::string, std::vector<std::string>> adj_;
    std::vector<std::pair<std::string, std::string>> edges_;
};

// Total map vertex id -> complex value.
class Field {
public:
    Field() = default;
    void set(const std::string& id, Complex value) { values_[id] = value; }
    Complex at(const std::string& id) const;
    bool defined_on(const Graph& g) const;
    const std::map<std::string, Complex>& values() const { return values_; }

private:
    std::map<std::string, Complex> values_;
};

// Either one constant gamma for the whole graph or a per-vertex table.
class GammaAssignment {
public:
    static GammaAssignment constant(double gamma);
    static GammaAssignment table(std::map<std::string, double> values);

    double at(const std::string& id) const;
    bool is_constant() const { return constant_.has_value(); }
    double constant_value() const;

private:
    std::optional<double> constant_;
    std::map<std::string, double> per_vertex_;
};

// Antisymmetric edge map: omega(x->y) = -omega(y->x).
class OneForm {
public:
    explicit OneForm(const Graph& g) : graph_(&g) {}
    void set(const std::string& from, const std::string& to, Complex value);
    Complex at(const std::string& from, const std::string& to) const;
    const Graph& graph() const { return *graph_; }

private:
    const Graph* graph_;
    // Keyed on the edge with endpoints in lexicographic order; the stored
    // value is the evaluation on (smaller -> larger).
    std::map<std::pair<std::string, std::string>, Complex> values_;
};

inline constexpr double kDefaultTol = 1e-9;

struct LocalInvariants {
    Complex laplacian;   // (1/n) sum (phi(y) - phi(x))
    Complex d_squared;   // (1/n) sum (phi(y) - phi(x))^2
    std::optional<double> gamma;  // d_squared / laplacian^2 when that ratio is real
    bool gamma_borderline = false;  // ratio had a nonzero but sub-tolerance imaginary part
};

LocalInvariants local_invariants(const Graph& g, const Field& phi,
                                 const std::string& x, double tol = kDefaultTol);

struct StateReport {
    std::map<std::string, Complex> residuals;  // gamma * laplacian^2 - d_squared
    double scale = 1.0;                        // max |phi(y)-phi(x)|^2 over edges
    double max_residual = 0.0;
    bool pass = false;
};

StateReport verify_state(const Graph& g, const Field& phi,
                         const GammaAssignment& gamma, double tol = kDefaultTol);

// Affine renormalization phi -> lambda phi + mu sending phi(x1) to 0 and
// phi(x2) to 1; the equation is invariant under this replacement.
Field normalize(const Field& phi, const std::string& x1, const std::string& x2);

struct ColoringSolution {
    Field field;
    GammaAssignment gamma;                 // defined value per constrained vertex
    std::map<std::string, bool> constrained;  // false where both sides vanish for every gamma
    bool trivial = false;                  // single-colour case: constant field
    std::optional<double> constant_gamma;  // present when the constrained values agree
};

// Builds the field determined by a vertex colouring and a palette and returns
// the gamma values it solves the equation with.  Supports the two-colour case
// (gamma(x) = n(x)/k(x), k(x) = neighbours of the other colour) and the
// zero-sum, zero-square-sum palette where every vertex sees exactly one
// neighbour of each other colour (gamma(x) = n(x)/(palette size)).
ColoringSolution coloring_field(const Graph& g,
                                const std::map<std::string, int>& colour,
                                const std::vector<Complex>& palette,
                                double tol = kDefaultTol);

// Discrete calculus.
OneForm d(const Graph& g, const Field& phi);
Field d_star(const OneForm& omega);
Field laplacian(const Graph& g, const Field& phi);
Complex pointwise_product(const OneForm& omega, const OneForm& eta, const std::string& x);
Complex global_product(const OneForm& omega, const OneForm& eta);
Complex global_product(const Graph& g, const Field& phi, const Field& psi);
// Midpoint-weighted module action: (xi omega)(x->y) = ((xi(x)+xi(y))/2) omega(x->y).
OneForm scale_form(const Field& xi, const OneForm& omega);

// Weak form (Delta phi, xi gamma Delta phi) - 2(dphi, xi dphi); vanishing for
// every indicator xi is equivalent to the pointwise equation.
Complex weak_residual(const Graph& g, const Field& phi,
                      const GammaAssignment& gamma, const Field& xi);

// Dilation of a vertex map f : g -> h (edges to edges or points).  Present iff
// for every x the number of neighbours of x above each neighbour of f(x) is
// independent of that neighbour.
std::optional<std::map<std::string, int>>
map_dilation(const std::map<std::string, std::string>& f, const Graph& g, const Graph& h);

// gamma pulled back through a dilation-lambda map when the image satisfies the
// equation with mu at f(x); requires lambda(x) != 0.
double pullback_gamma(const Graph& g, const Graph& h,
                      const std::map<std::string, std::string>& f,
                      const std::map<std::string, int>& lambda,
                      const std::string& x, double mu_at_image);

}  // namespace qde
