#include "qde/universe.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "qde/lifting.hpp"

namespace qde {

namespace {

double field_scale(const Graph& g, const Field& phi) {
    double scale = 0.0;
    for (const auto& [a, b] : g.edges())
        scale = std::max(scale, std::abs(phi.at(b) - phi.at(a)));
    return scale;
}

}  // namespace

StateGamma state_gamma(const Graph& g, const Field& phi, double tol) {
    StateGamma out;
    const double scale = std::max(1.0, field_scale(g, phi));
    std::map<std::string, double> table;
    bool agree = true;
    std::optional<double> common;
    for (const auto& x : g.vertices()) {
        if (g.degree(x) == 0) {
            out.constrained[x] = false;
            continue;
        }
        auto inv = local_invariants(g, phi, x, tol);
        if (inv.gamma.has_value()) {
            out.constrained[x] = true;
            table[x] = *inv.gamma;
            if (common.has_value() && std::abs(*common - *inv.gamma) > 1e3 * tol)
                agree = false;
            if (!common.has_value()) common = *inv.gamma;
        } else if (std::abs(inv.laplacian) <= tol * scale &&
                   std::abs(inv.d_squared) <= tol * scale * scale) {
            out.constrained[x] = false;
        } else {
            throw std::domain_error("no real gamma at vertex " + x);
        }
    }
    if (agree && common.has_value()) out.constant = common;
    const double fill = out.constant.value_or(1.0);
    for (const auto& [x, c] : out.constrained)
        if (!c) table[x] = fill;
    out.gamma = GammaAssignment::table(std::move(table));
    return out;
}

bool is_state(const Graph& g, const Field& phi, double tol) {
    if (!phi.defined_on(g)) return false;
    StateGamma sg;
    try {
        sg = state_gamma(g, phi, tol);
    } catch (const std::domain_error&) {
        return false;
    }
    for (const auto& x : g.vertices())
        if (sg.gamma.at(x) > 1.0 + 1e3 * tol) return false;
    return verify_state(g, phi, sg.gamma, tol).pass;
}

bool is_isostate(const Graph& g, const Field& phi, double tol) {
    if (!is_state(g, phi, tol)) return false;
    return state_gamma(g, phi, tol).constant.has_value();
}

bool same_state(const Field& a, const Field& b, double tol) {
    const auto& av = a.values();
    const auto& bv = b.values();
    if (av.size() != bv.size()) return false;
    for (const auto& [k, v] : av)
        if (!bv.count(k)) return false;

    // Two anchor vertices with distinct b-values determine lambda and mu.
    std::string x1, x2;
    double best = 0.0;
    for (const auto& [k1, v1] : bv)
        for (const auto& [k2, v2] : bv)
            if (std::abs(v1 - v2) > best) {
                best = std::abs(v1 - v2);
                x1 = k1;
                x2 = k2;
            }
    double bscale = 0.0, ascale = 0.0;
    for (const auto& [k, v] : bv) bscale = std::max(bscale, std::abs(v - bv.begin()->second));
    for (const auto& [k, v] : av) ascale = std::max(ascale, std::abs(v - av.begin()->second));
    if (best <= tol * std::max(1.0, bscale)) {
        // b is constant: a must be constant as well.
        return ascale <= tol * std::max(1.0, ascale);
    }
    Complex lambda = (a.at(x1) - a.at(x2)) / (b.at(x1) - b.at(x2));
    if (std::abs(lambda) <= tol) return false;  // the replacement must be invertible
    Complex mu = a.at(x1) - lambda * b.at(x1);
    const double allow = tol * std::max({1.0, ascale, std::abs(lambda) * bscale});
    for (const auto& [k, v] : bv)
        if (std::abs(a.at(k) - (lambda * v + mu)) > allow) return false;
    return true;
}

Particle make_particle(Graph graph, std::vector<Field> states, double tol) {
    if (graph.vertex_count() == 0)
        throw std::invalid_argument("particle needs at least one vertex");
    if (!graph.is_connected())
        throw std::invalid_argument("a particle must be connected");
    for (const auto& phi : states) {
        if (!phi.defined_on(graph))
            throw std::invalid_argument("catalogued field not defined on the graph");
        if (graph.edge_count() > 0 && !is_state(graph, phi, tol))
            throw std::invalid_argument("catalogued field is not a state");
    }
    return Particle{std::move(graph), std::move(states)};
}

namespace {

bool catalogued(const Particle& p, const Field& phi, double tol) {
    if (p.graph.vertex_count() == 1) return phi.defined_on(p.graph);
    for (const auto& s : p.states)
        if (same_state(phi, s, std::max(tol, 1e-7))) return true;
    return false;
}

// Realness defect of the star at x: vanishes when gamma is real or the star
// is fully degenerate; scale-free in the field.
double star_defect(const Graph& g, const Field& phi, const std::string& x) {
    Complex lap{0.0, 0.0}, dsq{0.0, 0.0};
    double norm2 = 0.0;
    const Complex px = phi.at(x);
    for (const auto& y : g.neighbors(x)) {
        Complex z = phi.at(y) - px;
        lap += z;
        dsq += z * z;
        norm2 += std::norm(z);
    }
    const double n = static_cast<double>(g.degree(x));
    lap /= n;
    dsq /= n;
    norm2 /= n;
    if (norm2 <= 1e-24) return 0.0;
    return std::imag(dsq * std::conj(lap * lap)) / (norm2 * norm2);
}

struct AffinePair {
    Complex lambda;
    Complex mu;
};

}  // namespace

Correlation correlate(const Particle& p1, const Field& phi1, const Particle& p2,
                      const Field& phi2,
                      const std::vector<std::pair<std::string, std::string>>& new_edges,
                      double tol) {
    if (!catalogued(p1, phi1, tol) || !catalogued(p2, phi2, tol))
        throw std::invalid_argument("correlation requires catalogued states");
    for (const auto& v : p2.graph.vertices())
        if (p1.graph.has_vertex(v))
            throw std::invalid_argument("overlapping vertex id: " + v);
    if (new_edges.empty()) throw std::invalid_argument("correlation adds at least one edge");

    Graph combined;
    for (const auto& v : p1.graph.vertices()) combined.add_vertex(v);
    for (const auto& v : p2.graph.vertices()) combined.add_vertex(v);
    for (const auto& [a, b] : p1.graph.edges()) combined.add_edge(a, b);
    for (const auto& [a, b] : p2.graph.edges()) combined.add_edge(a, b);
    for (const auto& [a, b] : new_edges) combined.add_edge(a, b);

    std::vector<std::string> affected;
    for (const auto& [a, b] : new_edges)
        for (const auto& v : {a, b})
            if (std::find(affected.begin(), affected.end(), v) == affected.end())
                affected.push_back(v);

    auto build = [&](const AffinePair& ab) {
        Field phi;
        for (const auto& v : p1.graph.vertices()) phi.set(v, phi1.at(v));
        for (const auto& v : p2.graph.vertices())
            phi.set(v, ab.lambda * phi2.at(v) + ab.mu);
        return phi;
    };
    // Residuals: the realness defects at the affected vertices, plus, when an
    // isostate is targeted, the deviation of every readable gamma from their
    // mean (isostates are the favoured outcome of a correlation).
    auto residuals = [&](const AffinePair& ab, bool iso) {
        Field phi = build(ab);
        std::vector<double> f;
        for (const auto& x : affected) f.push_back(star_defect(combined, phi, x));
        if (iso) {
            std::vector<double> gs;
            for (const auto& x : combined.vertices()) {
                Complex lap{0.0, 0.0}, dsq{0.0, 0.0};
                double norm2 = 0.0;
                for (const auto& y : combined.neighbors(x)) {
                    Complex z = phi.at(y) - phi.at(x);
                    lap += z;
                    dsq += z * z;
                    norm2 += std::norm(z);
                }
                const double n = static_cast<double>(combined.degree(x));
                lap /= n;
                dsq /= n;
                norm2 /= n;
                if (std::abs(lap) > 1e-6 * std::sqrt(std::max(norm2, 1e-30)))
                    gs.push_back(std::real(dsq / (lap * lap)));
            }
            double mean = 0.0;
            for (double g : gs) mean += g;
            if (!gs.empty()) mean /= static_cast<double>(gs.size());
            for (double g : gs) f.push_back(g - mean);
        }
        Eigen::VectorXd out(static_cast<int>(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) out(static_cast<int>(i)) = f[i];
        return out;
    };

    // Cross edges (side one, side two) supply the anchors.
    std::vector<std::pair<std::string, std::string>> cross;
    for (const auto& [a, b] : new_edges) {
        if (p1.graph.has_vertex(a) && p2.graph.has_vertex(b)) cross.emplace_back(a, b);
        else if (p2.graph.has_vertex(a) && p1.graph.has_vertex(b)) cross.emplace_back(b, a);
    }

    double diam1 = 0.0, diam2 = 0.0;
    for (const auto& [k1, v1] : phi1.values())
        for (const auto& [k2, v2] : phi1.values()) diam1 = std::max(diam1, std::abs(v1 - v2));
    for (const auto& [k1, v1] : phi2.values())
        for (const auto& [k2, v2] : phi2.values()) diam2 = std::max(diam2, std::abs(v1 - v2));

    std::vector<Complex> lambdas{Complex(1.0, 0.0)};
    for (const auto& [a1, b1] : cross)
        for (const auto& [a2, b2] : cross) {
            Complex num = phi1.at(a1) - phi1.at(a2);
            Complex den = phi2.at(b1) - phi2.at(b2);
            if (std::abs(den) > 1e-12 && std::abs(num) > 1e-12) {
                Complex cand = num / den;
                bool fresh = true;
                for (const auto& l : lambdas)
                    if (std::abs(l - cand) <= 1e-9 * (1.0 + std::abs(l))) fresh = false;
                if (fresh) lambdas.push_back(cand);
            }
        }

    std::vector<AffinePair> seeds;
    for (const auto& lambda : lambdas) {
        const double spread =
            std::max(1.0, std::max(diam1, std::abs(lambda) * diam2));
        std::vector<Complex> bases;
        if (cross.empty()) bases.push_back(Complex(2.0 * spread, 0.0));
        for (const auto& [a, b] : cross) bases.push_back(phi1.at(a) - lambda * phi2.at(b));
        for (const auto& base : bases)
            for (double du = -2.0; du <= 2.0 + 1e-12; du += 0.25)
                for (double dv = -2.0; dv <= 2.0 + 1e-12; dv += 0.25)
                    seeds.push_back({lambda, base + spread * Complex(du, dv)});
    }

    // Damped least squares on (lambda, mu) in R^4 against the realness
    // defects at the affected vertices.
    auto polish = [&](AffinePair ab, bool iso) -> std::optional<AffinePair> {
        for (int iter = 0; iter < 60; ++iter) {
            Eigen::VectorXd f = residuals(ab, iso);
            if (f.lpNorm<Eigen::Infinity>() <= 1e-11) return ab;
            Eigen::MatrixXd jac(f.size(), 4);
            const double h = 1e-6;
            for (int c = 0; c < 4; ++c) {
                AffinePair hi = ab, lo = ab;
                Complex delta = (c % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, h);
                if (c < 2) {
                    hi.lambda += delta;
                    lo.lambda -= delta;
                } else {
                    hi.mu += delta;
                    lo.mu -= delta;
                }
                jac.col(c) = (residuals(hi, iso) - residuals(lo, iso)) / (2.0 * h);
            }
            Eigen::MatrixXd normal = jac.transpose() * jac;
            normal.diagonal().array() += 1e-9 + 1e-3 * f.squaredNorm();
            Eigen::VectorXd step = normal.ldlt().solve(-jac.transpose() * f);
            ab.lambda += Complex(step(0), step(1));
            ab.mu += Complex(step(2), step(3));
            if (std::abs(ab.lambda) < 1e-8) return std::nullopt;
            if (step.norm() < 1e-14) break;
        }
        return residuals(ab, iso).lpNorm<Eigen::Infinity>() <= 1e-11
                   ? std::optional<AffinePair>(ab)
                   : std::nullopt;
    };

    std::vector<AffinePair> found;
    std::vector<Field> witnesses;
    std::vector<bool> iso;
    std::vector<std::vector<double>> gvec;
    auto consider = [&](const std::optional<AffinePair>& sol) {
        if (!sol) return;
        for (const auto& prev : found)
            if (std::abs(prev.lambda - sol->lambda) <= 1e-3 * (1.0 + std::abs(prev.lambda)) &&
                std::abs(prev.mu - sol->mu) <= 1e-3 * (1.0 + std::abs(prev.mu)))
                return;
        Field phi = build(*sol);
        if (!is_state(combined, phi, std::max(tol, 1e-8))) return;
        found.push_back(*sol);
        StateGamma sg = state_gamma(combined, phi, std::max(tol, 1e-8));
        iso.push_back(sg.constant.has_value());
        std::vector<double> gs;
        for (const auto& v : combined.vertices()) gs.push_back(sg.gamma.at(v));
        gvec.push_back(std::move(gs));
        witnesses.push_back(std::move(phi));
    };
    for (const auto& seed : seeds) {
        auto sol = polish(seed, false);
        if (!sol) continue;
        // Refine toward a constant-gamma state first: when the solutions form
        // a family, the isostate on it is the favoured outcome.
        consider(polish(*sol, true));
        consider(sol);
    }
    if (witnesses.empty())
        throw std::runtime_error("no compatible affine match for the correlation");

    std::vector<std::size_t> order(witnesses.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (iso[i] != iso[j]) return static_cast<bool>(iso[i]);
        if (gvec[i] != gvec[j]) return gvec[i] < gvec[j];
        auto key = [&](std::size_t k) {
            return std::make_tuple(found[k].lambda.real(), found[k].lambda.imag(),
                                   found[k].mu.real(), found[k].mu.imag());
        };
        return key(i) < key(j);
    });
    std::vector<Field> sorted;
    for (auto i : order) sorted.push_back(witnesses[i]);

    Correlation out;
    out.witnesses = sorted;
    out.particle = Particle{std::move(combined), std::move(sorted)};
    return out;
}

std::vector<Particle> separate(const Particle& p, const Field& phi, double tol) {
    if (!catalogued(p, phi, tol))
        throw std::invalid_argument("separation requires a catalogued state");
    StateGamma sg = state_gamma(p.graph, phi, tol);
    Collapsed c = collapse(p.graph, phi, sg.gamma, tol);
    if (c.graph.vertex_count() == 0)
        throw std::runtime_error("collapse emptied the particle");
    std::vector<Particle> parts;
    for (const auto& comp : c.graph.connected_components()) {
        std::set<std::string> inside(comp.begin(), comp.end());
        Graph sub;
        for (const auto& v : c.graph.vertices())
            if (inside.count(v)) sub.add_vertex(v);
        for (const auto& [a, b] : c.graph.edges())
            if (inside.count(a) && inside.count(b)) sub.add_edge(a, b);
        Field restricted;
        for (const auto& v : sub.vertices()) restricted.set(v, phi.at(v));
        parts.push_back(make_particle(std::move(sub), {std::move(restricted)}, tol));
    }
    return parts;
}

Particle mutate(const Particle& p, const Field& phi, const std::vector<EdgeEdit>& edits,
                double tol) {
    if (!catalogued(p, phi, tol))
        throw std::invalid_argument("mutation requires a catalogued state");
    std::vector<std::pair<std::string, std::string>> edges = p.graph.edges();
    auto matches = [](const std::pair<std::string, std::string>& e, const EdgeEdit& ed) {
        return (e.first == ed.a && e.second == ed.b) || (e.first == ed.b && e.second == ed.a);
    };
    for (const auto& ed : edits) {
        if (!p.graph.has_vertex(ed.a) || !p.graph.has_vertex(ed.b) || ed.a == ed.b)
            throw std::invalid_argument("malformed edge edit");
        auto it = std::find_if(edges.begin(), edges.end(),
                               [&](const auto& e) { return matches(e, ed); });
        if (ed.add) {
            if (it != edges.end())
                throw std::invalid_argument("edge already present: " + ed.a + " " + ed.b);
            edges.emplace_back(ed.a, ed.b);
        } else {
            if (it == edges.end())
                throw std::invalid_argument("edge not present: " + ed.a + " " + ed.b);
            edges.erase(it);
        }
    }
    Graph rewired;
    for (const auto& v : p.graph.vertices()) rewired.add_vertex(v);
    for (const auto& [a, b] : edges) rewired.add_edge(a, b);
    if (!rewired.is_connected())
        throw std::runtime_error("mutation disconnects the particle; use separation");
    if (!is_state(rewired, phi, tol))
        throw std::runtime_error("field is not a state of the rewired graph");
    std::vector<Field> catalog;
    for (const auto& s : p.states)
        if (is_state(rewired, s, tol)) catalog.push_back(s);
    if (catalog.empty()) catalog.push_back(phi);
    return Particle{std::move(rewired), std::move(catalog)};
}

double attach_defect(const std::vector<Complex>& zs, Complex w) {
    if (zs.empty()) throw std::invalid_argument("attachment needs existing neighbours");
    Complex sum{0.0, 0.0}, sumsq{0.0, 0.0};
    double scale = std::abs(w);
    for (const auto& z : zs) {
        sum += z;
        sumsq += z * z;
        scale = std::max(scale, std::abs(z));
    }
    Complex den = sum + w;
    if (std::abs(den) <= 1e-12 * std::max(1.0, scale))
        throw std::domain_error("attachment defect pole");
    return std::imag((sumsq + w * w) / (den * den));
}

double attach_cubic(double r, double theta, Complex w) {
    const double u = w.real(), v = w.imag();
    const double s = std::sin(theta), c = std::cos(theta);
    return (u * r * s - v * (1.0 + r * c)) * (u * u + v * v) + r * s * (u * u - v * v) -
           2.0 * u * v * r * c + r * s * (1.0 - r * r - 2.0 * r * c) * u +
           (1.0 + r * c + r * r * r * c + r * r * std::cos(2.0 * theta)) * v +
           r * (1.0 - r * r) * s;
}

std::vector<Complex> attach_locus(const std::vector<Complex>& zs, Complex lo, Complex hi,
                                  int resolution) {
    if (resolution < 1) throw std::invalid_argument("resolution must be positive");
    const int n = resolution;
    const double du = (hi.real() - lo.real()) / n;
    const double dv = (hi.imag() - lo.imag()) / n;
    auto eval = [&](double u, double v, double& out) {
        try {
            out = attach_defect(zs, Complex(u, v));
            return true;
        } catch (const std::domain_error&) {
            return false;
        }
    };
    std::vector<std::vector<double>> f(n + 1, std::vector<double>(n + 1));
    std::vector<std::vector<bool>> ok(n + 1, std::vector<bool>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            ok[i][j] = eval(lo.real() + i * du, lo.imag() + j * dv, f[i][j]);

    std::vector<Complex> points;
    auto bisect = [&](Complex a, Complex b, double fa, double fb) {
        for (int it = 0; it < 100 && std::abs(b - a) > 1e-13; ++it) {
            Complex m = 0.5 * (a + b);
            double fm;
            if (!eval(m.real(), m.imag(), fm)) return;
            if ((fa < 0.0) != (fm < 0.0)) {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
        }
        Complex m = 0.5 * (a + b);
        double fm;
        // Crossings squeezed against the pole cannot be resolved to the
        // advertised accuracy in double precision and are dropped.
        if (eval(m.real(), m.imag(), fm) && std::abs(fm) <= 1e-8) points.push_back(m);
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (!ok[i][j]) continue;
            const double u = lo.real() + i * du, v = lo.imag() + j * dv;
            if (i < n && ok[i + 1][j] && (f[i][j] < 0.0) != (f[i + 1][j] < 0.0))
                bisect(Complex(u, v), Complex(u + du, v), f[i][j], f[i + 1][j]);
            if (j < n && ok[i][j + 1] && (f[i][j] < 0.0) != (f[i][j + 1] < 0.0))
                bisect(Complex(u, v), Complex(u, v + dv), f[i][j], f[i][j + 1]);
        }
    return points;
}

double thermal_time(const Graph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("thermal time needs an edge");
    double sum = 0.0;
    for (const auto& x : g.vertices()) {
        const double d = static_cast<double>(g.degree(x)) - 2.0;
        sum += d * d;
    }
    return std::sqrt(sum) / (2.0 * static_cast<double>(g.edge_count()));
}

}  // namespace qde
