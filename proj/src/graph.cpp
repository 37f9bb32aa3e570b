#include "qde/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace qde {

void Graph::add_vertex(const std::string& id) {
    if (adj_.count(id)) throw std::invalid_argument("duplicate vertex: " + id);
    order_.push_back(id);
    adj_[id] = {};
}

void Graph::add_edge(const std::string& a, const std::string& b) {
    if (a == b) throw std::invalid_argument("self-loop at vertex: " + a);
    if (!has_vertex(a)) throw std::invalid_argument("unknown vertex: " + a);
    if (!has_vertex(b)) throw std::invalid_argument("unknown vertex: " + b);
    if (adjacent(a, b)) throw std::invalid_argument("duplicate edge: " + a + " " + b);
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    edges_.emplace_back(a, b);
}

bool Graph::has_vertex(const std::string& id) const { return adj_.count(id) > 0; }

bool Graph::adjacent(const std::string& a, const std::string& b) const {
    auto it = adj_.find(a);
    if (it == adj_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), b) != it->second.end();
}

const std::vector<std::string>& Graph::neighbors(const std::string& id) const {
    auto it = adj_.find(id);
    if (it == adj_.end()) throw std::invalid_argument("unknown vertex: " + id);
    return it->second;
}

std::size_t Graph::degree(const std::string& id) const { return neighbors(id).size(); }

std::vector<std::vector<std::string>> Graph::connected_components() const {
    std::vector<std::vector<std::string>> components;
    std::map<std::string, bool> seen;
    for (const auto& start : order_) {
        if (seen[start]) continue;
        std::vector<std::string> comp;
        std::deque<std::string> queue{start};
        seen[start] = true;
        while (!queue.empty()) {
            std::string v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (const auto& w : neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        components.push_back(std::move(comp));
    }
    return components;
}

bool Graph::is_connected() const {
    return order_.empty() || connected_components().size() == 1;
}

Complex Field::at(const std::string& id) const {
    auto it = values_.find(id);
    if (it == values_.end()) throw std::invalid_argument("field undefined at vertex: " + id);
    return it->second;
}

bool Field::defined_on(const Graph& g) const {
    for (const auto& v : g.vertices())
        if (!values_.count(v)) return false;
    return true;
}

GammaAssignment GammaAssignment::constant(double gamma) {
    GammaAssignment a;
    a.constant_ = gamma;
    return a;
}

GammaAssignment GammaAssignment::table(std::map<std::string, double> values) {
    GammaAssignment a;
    a.per_vertex_ = std::move(values);
    return a;
}

double GammaAssignment::at(const std::string& id) const {
    if (constant_) return *constant_;
    auto it = per_vertex_.find(id);
    if (it == per_vertex_.end()) throw std::invalid_argument("gamma undefined at vertex: " + id);
    return it->second;
}

double GammaAssignment::constant_value() const {
    if (!constant_) throw std::logic_error("gamma is not constant");
    return *constant_;
}

void OneForm::set(const std::string& from, const std::string& to, Complex value) {
    if (from <= to)
        values_[{from, to}] = value;
    else
        values_[{to, from}] = -value;
}

Complex OneForm::at(const std::string& from, const std::string& to) const {
    auto key = from <= to ? std::make_pair(from, to) : std::make_pair(to, from);
    auto it = values_.find(key);
    Complex v = it == values_.end() ? Complex{0.0, 0.0} : it->second;
    return from <= to ? v : -v;
}

LocalInvariants local_invariants(const Graph& g, const Field& phi,
                                 const std::string& x, double tol) {
    const auto& nbrs = g.neighbors(x);
    if (nbrs.empty()) throw std::invalid_argument("isolated vertex: " + x);
    const double n = static_cast<double>(nbrs.size());
    Complex lap{0.0, 0.0}, dsq{0.0, 0.0};
    const Complex px = phi.at(x);
    for (const auto& y : nbrs) {
        Complex diff = phi.at(y) - px;
        lap += diff;
        dsq += diff * diff;
    }
    lap /= n;
    dsq /= n;

    LocalInvariants out{lap, dsq, std::nullopt, false};
    if (std::abs(lap) > tol) {
        Complex ratio = dsq / (lap * lap);
        if (std::abs(ratio.imag()) <= tol * (1.0 + std::abs(ratio))) {
            out.gamma = ratio.real();
            out.gamma_borderline = ratio.imag() != 0.0;
        }
    }
    return out;
}

StateReport verify_state(const Graph& g, const Field& phi,
                         const GammaAssignment& gamma, double tol) {
    StateReport report;
    double scale = 0.0;
    for (const auto& [a, b] : g.edges())
        scale = std::max(scale, std::norm(phi.at(b) - phi.at(a)));
    report.scale = scale;
    for (const auto& x : g.vertices()) {
        if (g.degree(x) == 0) continue;
        auto inv = local_invariants(g, phi, x, tol);
        Complex residual = gamma.at(x) * inv.laplacian * inv.laplacian - inv.d_squared;
        report.residuals[x] = residual;
        report.max_residual = std::max(report.max_residual, std::abs(residual));
    }
    report.pass = report.max_residual <= tol * std::max(1.0, scale);
    return report;
}

Field normalize(const Field& phi, const std::string& x1, const std::string& x2) {
    Complex a = phi.at(x1), b = phi.at(x2);
    if (a == b) throw std::invalid_argument("normalize: coincident anchor values");
    Field out;
    for (const auto& [v, value] : phi.values()) out.set(v, (value - a) / (b - a));
    return out;
}

ColoringSolution coloring_field(const Graph& g,
                                const std::map<std::string, int>& colour,
                                const std::vector<Complex>& palette,
                                double tol) {
    for (std::size_t i = 0; i < palette.size(); ++i)
        for (std::size_t j = i + 1; j < palette.size(); ++j)
            if (palette[i] == palette[j])
                throw std::invalid_argument("palette values must be distinct");

    ColoringSolution out;
    std::map<std::string, double> gamma_values;
    bool single_colour = true;
    int first_colour = colour.empty() ? 0 : colour.begin()->second;
    for (const auto& x : g.vertices()) {
        auto it = colour.find(x);
        if (it == colour.end()) throw std::invalid_argument("uncoloured vertex: " + x);
        if (it->second < 0 || it->second >= static_cast<int>(palette.size()))
            throw std::invalid_argument("palette index out of range at vertex: " + x);
        out.field.set(x, palette[it->second]);
        if (it->second != first_colour) single_colour = false;
    }
    if (single_colour) {
        out.trivial = true;
        out.gamma = GammaAssignment::table({});
        return out;
    }

    if (palette.size() == 2) {
        // Two-colour case: gamma(x) = n(x) / (number of other-colour neighbours).
        for (const auto& x : g.vertices()) {
            std::size_t k = 0;
            for (const auto& y : g.neighbors(x))
                if (colour.at(y) != colour.at(x)) ++k;
            if (k > 0) {
                gamma_values[x] = static_cast<double>(g.degree(x)) / static_cast<double>(k);
                out.constrained[x] = true;
            } else {
                out.constrained[x] = false;  // both sides vanish; gamma free here
            }
        }
    } else {
        // Palette must sum to zero and have zero square sum (a projected
        // simplex); every vertex must see exactly one neighbour of each other
        // colour.  Then gamma(x) = n(x) / (number of colours).
        Complex sum{0, 0}, sq{0, 0};
        for (Complex z : palette) {
            sum += z;
            sq += z * z;
        }
        if (std::abs(sum) > tol || std::abs(sq) > tol)
            throw std::invalid_argument(
                "palette must have zero sum and zero square sum for the multi-colour case");
        const int m = static_cast<int>(palette.size());
        for (const auto& x : g.vertices()) {
            std::vector<int> count(m, 0);
            for (const auto& y : g.neighbors(x)) ++count[colour.at(y)];
            for (int c = 0; c < m; ++c) {
                if (c == colour.at(x)) continue;
                if (count[c] != 1)
                    throw std::invalid_argument(
                        "vertex " + x + " does not see exactly one neighbour of each other colour");
            }
            if (std::abs(palette[colour.at(x)]) > tol) {
                gamma_values[x] = static_cast<double>(g.degree(x)) / static_cast<double>(m);
                out.constrained[x] = true;
            } else {
                out.constrained[x] = false;  // projected to the origin: holomorphic point
            }
        }
    }

    bool constant_ok = true;
    std::optional<double> value;
    for (const auto& [x, gval] : gamma_values) {
        if (!value)
            value = gval;
        else if (std::abs(*value - gval) > tol)
            constant_ok = false;
    }
    if (constant_ok && value) out.constant_gamma = value;

    // Unconstrained vertices get a value anyway (the constant if one exists)
    // so verify_state can run over the whole graph.
    double fill = out.constant_gamma.value_or(value.value_or(0.0));
    for (const auto& x : g.vertices())
        if (!gamma_values.count(x)) gamma_values[x] = fill;
    out.gamma = GammaAssignment::table(std::move(gamma_values));
    return out;
}

OneForm d(const Graph& g, const Field& phi) {
    OneForm omega(g);
    for (const auto& [a, b] : g.edges()) omega.set(a, b, phi.at(b) - phi.at(a));
    return omega;
}

Field d_star(const OneForm& omega) {
    const Graph& g = omega.graph();
    Field out;
    for (const auto& x : g.vertices()) {
        Complex sum{0, 0};
        const auto& nbrs = g.neighbors(x);
        for (const auto& y : nbrs) sum += omega.at(x, y);
        double n = static_cast<double>(nbrs.size());
        out.set(x, nbrs.empty() ? Complex{0, 0} : -sum / n);
    }
    return out;
}

Field laplacian(const Graph& g, const Field& phi) {
    Field out;
    for (const auto& x : g.vertices()) {
        const auto& nbrs = g.neighbors(x);
        Complex sum{0, 0};
        for (const auto& y : nbrs) sum += phi.at(y) - phi.at(x);
        double n = static_cast<double>(nbrs.size());
        out.set(x, nbrs.empty() ? Complex{0, 0} : sum / n);
    }
    return out;
}

Complex pointwise_product(const OneForm& omega, const OneForm& eta, const std::string& x) {
    Complex sum{0, 0};
    for (const auto& y : omega.graph().neighbors(x)) sum += omega.at(x, y) * eta.at(x, y);
    return sum;
}

Complex global_product(const OneForm& omega, const OneForm& eta) {
    Complex sum{0, 0};
    for (const auto& [a, b] : omega.graph().edges()) sum += omega.at(a, b) * eta.at(a, b);
    return sum;
}

Complex global_product(const Graph& g, const Field& phi, const Field& psi) {
    Complex sum{0, 0};
    for (const auto& x : g.vertices())
        sum += static_cast<double>(g.degree(x)) * phi.at(x) * psi.at(x);
    return sum;
}

OneForm scale_form(const Field& xi, const OneForm& omega) {
    const Graph& g = omega.graph();
    OneForm out(g);
    for (const auto& [a, b] : g.edges())
        out.set(a, b, 0.5 * (xi.at(a) + xi.at(b)) * omega.at(a, b));
    return out;
}

Complex weak_residual(const Graph& g, const Field& phi,
                      const GammaAssignment& gamma, const Field& xi) {
    Field lap = laplacian(g, phi);
    Field xi_gamma_lap;
    for (const auto& x : g.vertices())
        xi_gamma_lap.set(x, xi.at(x) * gamma.at(x) * lap.at(x));
    OneForm dphi = d(g, phi);
    // With a vertex indicator xi this evaluates to n(x) times the pointwise
    // residual, so vanishing for every indicator is exactly the equation.
    return global_product(g, lap, xi_gamma_lap) -
           2.0 * global_product(dphi, scale_form(xi, dphi));
}

std::optional<std::map<std::string, int>>
map_dilation(const std::map<std::string, std::string>& f, const Graph& g, const Graph& h) {
    // f must send vertices to vertices and edges to edges or to points.
    for (const auto& x : g.vertices()) {
        auto it = f.find(x);
        if (it == f.end() || !h.has_vertex(it->second)) return std::nullopt;
    }
    for (const auto& [a, b] : g.edges()) {
        const std::string &fa = f.at(a), &fb = f.at(b);
        if (fa != fb && !h.adjacent(fa, fb)) return std::nullopt;
    }
    std::map<std::string, int> lambda;
    for (const auto& x : g.vertices()) {
        const std::string& z = f.at(x);
        std::optional<int> common;
        for (const auto& zp : h.neighbors(z)) {
            int count = 0;
            for (const auto& xp : g.neighbors(x))
                if (f.at(xp) == zp) ++count;
            if (!common)
                common = count;
            else if (*common != count)
                return std::nullopt;
        }
        lambda[x] = common.value_or(0);
    }
    return lambda;
}

double pullback_gamma(const Graph& g, const Graph& h,
                      const std::map<std::string, std::string>& f,
                      const std::map<std::string, int>& lambda,
                      const std::string& x, double mu_at_image) {
    int lam = lambda.at(x);
    if (lam == 0) throw std::invalid_argument("pullback_gamma: dilation vanishes at " + x);
    double n = static_cast<double>(g.degree(x));
    double m = static_cast<double>(h.degree(f.at(x)));
    return n * mu_at_image / (static_cast<double>(lam) * m);
}

}  // namespace qde
