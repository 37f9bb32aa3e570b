#include "qde/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "qde/curvature.hpp"
#include "qde/cyclic.hpp"
#include "qde/energy.hpp"
#include "qde/frameworks.hpp"
#include "qde/groebner.hpp"
#include "qde/lifting.hpp"
#include "qde/rational.hpp"
#include "qde/universe.hpp"

namespace qde {

namespace {

double parse_real(const std::string& token) {
    return to_double(parse_rational(token));
}

int parse_int(const std::string& token) {
    try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw UsageError("not an integer: " + token);
    }
}

std::string fmt(double v, int digits = 12) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

[[noreturn]] void fail_line(int number, const std::string& message) {
    throw UsageError("line " + std::to_string(number) + ": " + message);
}

}  // namespace

Graph GraphDocument::graph() const {
    Graph g;
    for (const auto& v : vertices) g.add_vertex(v);
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

Field GraphDocument::field_values() const {
    if (field.empty()) throw std::runtime_error("document declares no field");
    Field phi;
    for (const auto& [id, value] : field) phi.set(id, value);
    return phi;
}

GammaAssignment GraphDocument::gamma_assignment() const {
    if (gamma.has_value()) return GammaAssignment::constant(*gamma);
    if (gamma_at.empty()) throw std::runtime_error("document declares no gamma");
    std::map<std::string, double> table(gamma_at.begin(), gamma_at.end());
    return GammaAssignment::table(std::move(table));
}

GraphDocument parse_graph(const std::string& text) {
    GraphDocument doc;
    Graph check;  // validates references incrementally
    std::set<std::string> field_seen, gamma_seen, point_seen;
    std::optional<std::size_t> point_dim;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;
        try {
            const std::string& kind = tok[0];
            if (kind == "graph" && tok.size() == 2) {
                if (!doc.name.empty()) fail_line(number, "duplicate graph name");
                doc.name = tok[1];
            } else if (kind == "vertex" && tok.size() == 2) {
                check.add_vertex(tok[1]);
                doc.vertices.push_back(tok[1]);
            } else if (kind == "edge" && tok.size() == 3) {
                check.add_edge(tok[1], tok[2]);
                doc.edges.emplace_back(tok[1], tok[2]);
            } else if (kind == "field" && tok.size() == 4) {
                if (!check.has_vertex(tok[1])) fail_line(number, "unknown vertex: " + tok[1]);
                if (!field_seen.insert(tok[1]).second)
                    fail_line(number, "duplicate field value for " + tok[1]);
                doc.field.emplace_back(tok[1],
                                       Complex{parse_real(tok[2]), parse_real(tok[3])});
            } else if (kind == "gamma" && tok.size() == 2) {
                if (doc.gamma.has_value()) fail_line(number, "duplicate gamma");
                doc.gamma = parse_real(tok[1]);
            } else if (kind == "gamma_at" && tok.size() == 3) {
                if (!check.has_vertex(tok[1])) fail_line(number, "unknown vertex: " + tok[1]);
                if (!gamma_seen.insert(tok[1]).second)
                    fail_line(number, "duplicate gamma for " + tok[1]);
                doc.gamma_at.emplace_back(tok[1], parse_real(tok[2]));
            } else if (kind == "point" && tok.size() >= 3) {
                if (!check.has_vertex(tok[1])) fail_line(number, "unknown vertex: " + tok[1]);
                if (!point_seen.insert(tok[1]).second)
                    fail_line(number, "duplicate point for " + tok[1]);
                std::vector<double> coords;
                for (std::size_t k = 2; k < tok.size(); ++k)
                    coords.push_back(parse_real(tok[k]));
                if (point_dim.has_value() && coords.size() != *point_dim)
                    fail_line(number, "inconsistent point dimension");
                point_dim = coords.size();
                doc.points.emplace_back(tok[1], std::move(coords));
            } else {
                fail_line(number, "unrecognized directive: " + kind);
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            fail_line(number, e.what());
        }
    }
    return doc;
}

std::string serialize_graph(const GraphDocument& doc) {
    std::ostringstream out;
    out << std::setprecision(17);
    if (!doc.name.empty()) out << "graph " << doc.name << "\n";
    for (const auto& v : doc.vertices) out << "vertex " << v << "\n";
    for (const auto& [a, b] : doc.edges) out << "edge " << a << " " << b << "\n";
    for (const auto& [id, z] : doc.field)
        out << "field " << id << " " << z.real() << " " << z.imag() << "\n";
    if (doc.gamma.has_value()) out << "gamma " << *doc.gamma << "\n";
    for (const auto& [id, g] : doc.gamma_at) out << "gamma_at " << id << " " << g << "\n";
    for (const auto& [id, coords] : doc.points) {
        out << "point " << id;
        for (double c : coords) out << " " << c;
        out << "\n";
    }
    return out.str();
}

namespace {

GraphDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_graph(text.str());
}

GammaAssignment resolve_gamma(const GraphDocument& doc, const Graph& g, const Field& phi) {
    if (doc.has_gamma()) return doc.gamma_assignment();
    return state_gamma(g, phi).gamma;
}

std::vector<double> parse_csv_reals(const std::string& text) {
    std::vector<double> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) values.push_back(parse_real(token));
    return values;
}

std::vector<Complex> star_differences(const Graph& g, const Field& phi,
                                      const std::string& x) {
    std::vector<Complex> zs;
    for (const auto& y : g.neighbors(x)) zs.push_back(phi.at(y) - phi.at(x));
    return zs;
}

GraphDocument document_from_framework(const Framework& fw, const std::string& name) {
    GraphDocument doc;
    doc.name = name;
    doc.vertices = fw.graph.vertices();
    doc.edges = fw.graph.edges();
    Field phi = projected_field(fw, Mat::Identity(fw.points.rows(), fw.points.rows()));
    for (const auto& v : doc.vertices) doc.field.emplace_back(v, phi.at(v));
    std::map<std::string, double> gamma = framework_gamma(fw, Mat::Identity(
                                              fw.points.rows(), fw.points.rows()));
    // Vertices whose projected mean difference vanishes are omitted from the
    // table; their stars accept any gamma, so agreeing values become a
    // constant and otherwise the gaps are filled with 1.
    bool constant = !gamma.empty();
    for (const auto& [id, g] : gamma)
        if (std::abs(g - gamma.begin()->second) > 1e-9) constant = false;
    if (constant)
        doc.gamma = gamma.begin()->second;
    else
        for (const auto& v : doc.vertices)
            doc.gamma_at.emplace_back(v, gamma.count(v) ? gamma.at(v) : 1.0);
    for (const auto& v : doc.vertices) {
        Vec p = fw.position(v);
        doc.points.emplace_back(v, std::vector<double>(p.data(), p.data() + p.size()));
    }
    return doc;
}

int cmd_verify(const std::string& file, double tol, std::ostream& out) {
    GraphDocument doc = load_document(file);
    Graph g = doc.graph();
    Field phi = doc.field_values();
    out << "vertices: " << g.vertex_count() << "\n";
    out << "edges: " << g.edge_count() << "\n";
    GammaAssignment gamma = GammaAssignment::constant(0.0);
    try {
        gamma = resolve_gamma(doc, g, phi);
    } catch (const std::domain_error& e) {
        out << "gamma: none (" << e.what() << ")\n";
        out << "verdict: fail\n";
        return 1;
    }
    out << "gamma: " << (gamma.is_constant() ? fmt(gamma.constant_value()) : "per-vertex")
        << "\n";
    StateReport report = verify_state(g, phi, gamma, tol);
    out << "max_residual: " << fmt(report.max_residual, 6) << "\n";
    out << "verdict: " << (report.pass ? "pass" : "fail") << "\n";
    return report.pass ? 0 : 1;
}

int cmd_spectrum(const std::string& file, bool membership, std::ostream& out) {
    GraphDocument doc = load_document(file);
    Graph g = doc.graph();
    GammaPolynomial gp = gamma_polynomial(g);
    for (const auto& a : gp.failed_anchors) out << "anchor_failed: " << a << "\n";
    out << "p(g) = " << gp.p.str("g") << "\n";
    if (gp.p.degree() <= 0) {
        out << "roots: none\n";
        return 0;
    }
    std::vector<RealRoot> roots = real_roots(gp.p);
    if (roots.empty()) out << "roots: none\n";
    for (const auto& r : roots) {
        out << "root: ";
        if (r.rational)
            out << to_string(r.value);
        else
            out << fmt(r.approx) << " minimal " << r.annihilator.str("g");
        if (membership) {
            UniPoly ann = r.rational
                              ? UniPoly({BigRational(-r.value), BigRational(1)})
                              : r.annihilator;
            out << (spectrum_membership(g, ann) ? " (member)" : " (non-member)");
        }
        out << "\n";
    }
    return 0;
}

int cmd_lift(const std::string& file, const std::string& vertex, int dim,
             const std::string& sign_text, std::uint64_t seed, std::ostream& out) {
    if (dim < 3) throw UsageError("--dim must be at least 3");
    int sign = sign_text == "-" ? -1 : +1;
    GraphDocument doc = load_document(file);
    Graph g = doc.graph();
    Field phi = doc.field_values();
    if (!g.has_vertex(vertex)) throw UsageError("unknown vertex: " + vertex);
    GammaAssignment gamma = resolve_gamma(doc, g, phi);
    std::vector<Complex> zs = star_differences(g, phi, vertex);
    Mat w = dim == 3 ? lift3(zs, gamma.at(vertex), sign)
                     : liftN(zs, gamma.at(vertex), dim, seed, sign);
    out << "vertex: " << vertex << "\n";
    out << "degree: " << zs.size() << "\n";
    out << "gamma: " << fmt(gamma.at(vertex)) << "\n";
    for (int r = 0; r < w.rows(); ++r) {
        out << "row " << (r + 1) << ":";
        for (int c = 0; c < w.cols(); ++c) out << " " << fmt(w(r, c));
        out << "\n";
    }
    return 0;
}

int cmd_curvature(const std::string& file, int dim, std::ostream& out) {
    GraphDocument doc = load_document(file);
    Graph g = doc.graph();
    GammaAssignment gamma =
        doc.has_gamma() ? doc.gamma_assignment()
                        : state_gamma(g, doc.field_values()).gamma;
    CurvatureReport report = vertex_curvatures(g, gamma, dim);
    for (const auto& [id, d] : report.deficit) out << "deficit " << id << ": " << fmt(d) << "\n";
    out << "total: " << fmt(report.total) << "\n";
    out << "total_radians: " << fmt(report.total_radians) << "\n";
    return 0;
}

int cmd_distance(const std::string& file, const std::string& from, const std::string& to,
                 int dim, std::ostream& out) {
    GraphDocument doc = load_document(file);
    Graph g = doc.graph();
    Field phi = doc.field_values();
    if (!g.has_vertex(from)) throw UsageError("unknown vertex: " + from);
    if (!g.has_vertex(to)) throw UsageError("unknown vertex: " + to);
    GammaAssignment gamma = resolve_gamma(doc, g, phi);
    out << "distance: " << fmt(path_distance(g, phi, gamma, dim, from, to)) << "\n";
    return 0;
}

int cmd_energy(const std::string& file, std::ostream& out) {
    GraphDocument doc = load_document(file);
    Graph g = doc.graph();
    Field phi = doc.field_values();
    GammaAssignment gamma = resolve_gamma(doc, g, phi);
    double total = total_energy(g, phi, gamma);
    for (const auto& x : g.vertices()) {
        std::vector<Complex> zs = star_differences(g, phi, x);
        bool constant = true;
        for (const auto& z : zs)
            if (std::abs(z) > 0.0) constant = false;
        if (zs.empty() || constant) continue;
        double e = zs.size() == 2 ? corner_energy(zs[0], zs[1])
                                  : vertex_energy(zs, gamma.at(x));
        out << "energy " << x << ": " << fmt(e) << "\n";
    }
    out << "total: " << fmt(total) << "\n";
    return 0;
}

int cmd_flow(int order, const std::string& angles_csv, int steps, double rate,
             const std::string& direction, const std::string& branch_text,
             const std::string& out_path, std::ostream& out) {
    std::vector<double> sigma = parse_csv_reals(angles_csv);
    if (order < 4) throw UsageError("--order must be at least 4");
    if (static_cast<int>(sigma.size()) != order - 3)
        throw UsageError("--angles must list order-3 values");
    if (direction != "up" && direction != "down")
        throw UsageError("--direction must be up or down");
    int dir = direction == "up" ? +1 : -1;
    int branch = branch_text == "-" ? -1 : +1;
    ChainFlow flow = chain_flow(sigma, rate, steps, dir, branch);

    std::ofstream file_stream;
    std::ostream* target = &out;
    if (!out_path.empty()) {
        file_stream.open(out_path);
        if (!file_stream) throw UsageError("cannot write file: " + out_path);
        target = &file_stream;
    }
    *target << "iter, E";
    for (std::size_t k = 1; k <= sigma.size(); ++k) *target << ", sigma_" << k;
    *target << "\n";
    for (std::size_t i = 0; i < flow.trajectory.size(); ++i) {
        const ChainFlowStep& step = flow.trajectory[i];
        *target << i << ", " << fmt(step.energy);
        for (double s : step.sigma) *target << ", " << fmt(s);
        *target << "\n";
    }
    *target << "# stop: " << flow.stop_reason << "\n";
    if (!out_path.empty())
        out << "steps: " << (flow.trajectory.size() - 1) << "\n"
            << "stop: " << flow.stop_reason << "\n";
    return 0;
}

int cmd_generate(const std::vector<std::string>& spec, const std::string& out_path,
                 std::ostream& out) {
    if (spec.empty()) throw UsageError("generate needs a kind");
    const std::string& kind = spec[0];
    auto want = [&](std::size_t n) {
        if (spec.size() != n + 1)
            throw UsageError("generate " + kind + " takes " + std::to_string(n) +
                             " parameter(s)");
    };
    GraphDocument doc;
    doc.name = kind;
    if (kind == "cycle") {
        want(1);
        int n = parse_int(spec[1]);
        Graph g = cycle_graph(n);
        doc.vertices = g.vertices();
        doc.edges = g.edges();
    } else if (kind == "complete") {
        want(1);
        int n = parse_int(spec[1]);
        for (int k = 0; k < n; ++k) doc.vertices.push_back("v" + std::to_string(k));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                doc.edges.emplace_back(doc.vertices[a], doc.vertices[b]);
    } else if (kind == "complete_bipartite") {
        want(2);
        int na = parse_int(spec[1]), nb = parse_int(spec[2]);
        for (int k = 0; k < na; ++k) doc.vertices.push_back("a" + std::to_string(k));
        for (int k = 0; k < nb; ++k) doc.vertices.push_back("b" + std::to_string(k));
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < nb; ++b)
                doc.edges.emplace_back("a" + std::to_string(a), "b" + std::to_string(b));
    } else if (kind == "polygon") {
        want(1);
        doc = document_from_framework(regular_polygon_framework(parse_int(spec[1])), kind);
    } else if (kind == "tetrahedron") {
        want(0);
        doc = document_from_framework(tetrahedron_framework(), kind);
    } else if (kind == "cube") {
        want(0);
        doc = document_from_framework(cube_framework(), kind);
    } else if (kind == "octahedron") {
        want(0);
        doc = document_from_framework(octahedron_framework(), kind);
    } else if (kind == "double_cone") {
        want(1);
        DoubleCone dc = double_cone(regular_polygon_framework(parse_int(spec[1])));
        doc = document_from_framework(dc.framework, kind);
    } else if (kind == "two_triangles") {
        want(0);
        const Complex omega{0.5, std::sqrt(3.0) / 2};
        const Complex vals[3] = {Complex{0.0, 0.0}, Complex{1.0, 0.0}, omega};
        for (const char* side : {"o", "i"})
            for (int k = 0; k < 3; ++k) doc.vertices.push_back(side + std::to_string(k));
        for (const char* side : {"o", "i"})
            for (int k = 0; k < 3; ++k)
                doc.edges.emplace_back(side + std::to_string(k),
                                       side + std::to_string((k + 1) % 3));
        for (int k = 0; k < 3; ++k)
            doc.edges.emplace_back("o" + std::to_string(k), "i" + std::to_string(k));
        for (const char* side : {"o", "i"})
            for (int k = 0; k < 3; ++k)
                doc.field.emplace_back(side + std::to_string(k), vals[k]);
        doc.gamma = 1.0;
    } else if (kind == "real_cyclic") {
        want(2);
        std::vector<long> coeffs;
        for (double v : parse_csv_reals(spec[1])) coeffs.push_back(std::lround(v));
        CyclicSolution sol = build_real_cyclic(coeffs, static_cast<std::size_t>(parse_int(spec[2])));
        Graph g = cycle_graph(sol.order);
        doc.vertices = g.vertices();
        doc.edges = g.edges();
        for (int k = 0; k < sol.order; ++k)
            doc.field.emplace_back(doc.vertices[k], sol.values[k]);
        doc.gamma = sol.gamma;
    } else {
        throw UsageError("unknown kind: " + kind);
    }
    std::string text = serialize_graph(doc);
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path);
        if (!file) throw UsageError("cannot write file: " + out_path);
        file << text;
        out << "written: " << out_path << "\n";
    }
    return 0;
}

int cmd_cyclic(int order, std::ostream& out) {
    for (const auto& entry : enumerate_cyclic_spectrum(order)) {
        out << "gamma: " << fmt(entry.gamma);
        if (entry.exact.has_value())
            out << " exact " << to_string(*entry.exact);
        else if (entry.annihilator.has_value())
            out << " minimal " << entry.annihilator->str("g");
        out << "\n";
    }
    return 0;
}

int cmd_universe(const std::string& script_path, std::ostream& out) {
    std::ifstream in(script_path);
    if (!in) throw UsageError("cannot open file: " + script_path);
    std::map<std::string, Particle> particles;
    std::map<std::string, Field> states;
    auto get = [&](const std::string& name) -> Particle& {
        auto it = particles.find(name);
        if (it == particles.end()) throw UsageError("unknown particle: " + name);
        return it->second;
    };
    auto store = [&](const std::string& name, Particle p, Field phi) {
        states[name] = phi;
        particles.insert_or_assign(name, std::move(p));
    };
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;
        try {
            const std::string& kind = tok[0];
            if (kind == "particle" && tok.size() == 3) {
                GraphDocument doc = load_document(tok[2]);
                Graph g = doc.graph();
                Field phi = doc.field_values();
                Particle p = make_particle(g, {phi});
                out << "particle " << tok[1] << ": vertices " << g.vertex_count()
                    << " edges " << g.edge_count() << "\n";
                store(tok[1], std::move(p), std::move(phi));
            } else if (kind == "correlate" && tok.size() >= 6 && tok.size() % 2 == 0) {
                std::vector<std::pair<std::string, std::string>> edges;
                for (std::size_t k = 4; k + 1 < tok.size(); k += 2)
                    edges.emplace_back(tok[k], tok[k + 1]);
                Correlation c = correlate(get(tok[1]), states.at(tok[1]), get(tok[2]),
                                          states.at(tok[2]), edges);
                const Field& witness = c.witnesses.front();
                bool iso = is_isostate(c.particle.graph, witness, 1e-7);
                out << "correlate " << tok[3] << ": witnesses " << c.witnesses.size()
                    << " isostate " << (iso ? "yes" : "no") << " time "
                    << fmt(thermal_time(c.particle.graph)) << "\n";
                Field first = witness;
                store(tok[3], std::move(c.particle), std::move(first));
            } else if (kind == "mutate" && tok.size() >= 6 && tok.size() % 3 == 0) {
                std::vector<EdgeEdit> edits;
                for (std::size_t k = 3; k + 2 < tok.size(); k += 3) {
                    if (tok[k] != "add" && tok[k] != "del")
                        fail_line(number, "edit must be add or del");
                    edits.push_back({tok[k] == "add", tok[k + 1], tok[k + 2]});
                }
                Particle p = mutate(get(tok[1]), states.at(tok[1]), edits, 1e-7);
                out << "mutate " << tok[2] << ": edges " << p.graph.edge_count()
                    << " time " << fmt(thermal_time(p.graph)) << "\n";
                Field phi = states.at(tok[1]);
                store(tok[2], std::move(p), std::move(phi));
            } else if (kind == "separate" && tok.size() == 2) {
                std::vector<Particle> parts = separate(get(tok[1]), states.at(tok[1]));
                out << "separate " << tok[1] << ": parts " << parts.size() << "\n";
                for (std::size_t k = 0; k < parts.size(); ++k) {
                    std::string name = tok[1] + "." + std::to_string(k + 1);
                    out << "part " << name << ": vertices "
                        << parts[k].graph.vertex_count() << " edges "
                        << parts[k].graph.edge_count() << "\n";
                    Field phi = parts[k].states.front();
                    store(name, std::move(parts[k]), std::move(phi));
                }
            } else if (kind == "attach" && tok.size() == 8) {
                const Particle& p = get(tok[1]);
                const Field& phi = states.at(tok[1]);
                if (!p.graph.has_vertex(tok[2]))
                    fail_line(number, "unknown vertex: " + tok[2]);
                std::vector<Complex> zs = star_differences(p.graph, phi, tok[2]);
                std::vector<Complex> pts = attach_locus(
                    zs, Complex{parse_real(tok[3]), parse_real(tok[4])},
                    Complex{parse_real(tok[5]), parse_real(tok[6])}, parse_int(tok[7]));
                out << "attach " << tok[1] << " " << tok[2] << ": points " << pts.size()
                    << "\n";
                for (const auto& w : pts)
                    out << "locus: " << fmt(w.real()) << " " << fmt(w.imag()) << "\n";
            } else {
                fail_line(number, "unrecognized event: " + kind);
            }
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            out << "event failed (line " << number << "): " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"quadratic difference equation toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    int jobs = 1;
    app.add_option("--seed", seed, "seed for any randomized basis choices");
    app.add_option("--jobs", jobs, "parallelism opt-in (advisory)");

    std::string file, vertex, from, to, sign = "+", direction, branch = "+";
    std::string angles, out_path, script;
    std::vector<std::string> gen_spec;
    double tol = kDefaultTol, rate = 0.0;
    int dim = 3, steps = 0, order = 0;
    bool membership = false, slow = false;

    CLI::App* verify = app.add_subcommand("verify", "check a field against the equation");
    verify->add_option("file", file)->required();
    verify->add_option("--tol", tol);

    CLI::App* spectrum = app.add_subcommand("spectrum", "gamma polynomial and roots");
    spectrum->add_option("file", file)->required();
    spectrum->add_flag("--membership", membership);
    spectrum->add_flag("--slow", slow);

    CLI::App* lift = app.add_subcommand("lift", "lift a vertex star");
    lift->add_option("file", file)->required();
    lift->add_option("--vertex", vertex)->required();
    lift->add_option("--dim", dim);
    lift->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));

    CLI::App* curvature = app.add_subcommand("curvature", "vertex deficits and total");
    curvature->add_option("file", file)->required();
    curvature->add_option("--dim", dim)->required()->check(CLI::IsMember({2, 3, 4}));

    CLI::App* distance = app.add_subcommand("distance", "path distance between vertices");
    distance->add_option("file", file)->required();
    distance->add_option("--from", from)->required();
    distance->add_option("--to", to)->required();
    distance->add_option("--dim", dim);

    CLI::App* energy = app.add_subcommand("energy", "per-vertex and total energy");
    energy->add_option("file", file)->required();

    CLI::App* flow = app.add_subcommand("flow", "gradient flow of a closed chain");
    flow->add_option("--order", order)->required();
    flow->add_option("--angles", angles)->required();
    flow->add_option("--steps", steps)->required();
    flow->add_option("--rate", rate)->required();
    flow->add_option("--direction", direction)->required();
    flow->add_option("--branch", branch)->check(CLI::IsMember({"+", "-"}));
    flow->add_option("--out", out_path);

    CLI::App* generate = app.add_subcommand("generate", "emit a graph document");
    generate->add_option("spec", gen_spec)->required();
    generate->add_option("--out", out_path);

    CLI::App* cyclic = app.add_subcommand("cyclic", "spectrum of a cycle graph");
    cyclic->add_option("--order", order)->required();

    CLI::App* universe = app.add_subcommand("universe", "replay an event script");
    universe->add_option("script", script)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(file, tol, out);
        if (spectrum->parsed()) return cmd_spectrum(file, membership, out);
        if (lift->parsed()) return cmd_lift(file, vertex, dim, sign, seed, out);
        if (curvature->parsed()) return cmd_curvature(file, dim, out);
        if (distance->parsed()) return cmd_distance(file, from, to, dim, out);
        if (energy->parsed()) return cmd_energy(file, out);
        if (flow->parsed())
            return cmd_flow(order, angles, steps, rate, direction, branch, out_path, out);
        if (generate->parsed()) return cmd_generate(gen_spec, out_path, out);
        if (cyclic->parsed()) return cmd_cyclic(order, out);
        if (universe->parsed()) return cmd_universe(script, out);
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
    err << "no command\n";
    return 2;
}

}  // namespace qde
