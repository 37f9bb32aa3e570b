#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "qde/lifting.hpp"
#include "qde/universe.hpp"

using namespace qde;

namespace {

const double kPi = 3.14159265358979323846;
const double kS3 = std::sqrt(3.0);
const Complex kOmega{0.5, kS3 / 2};  // primitive sixth root of unity

// Four-cycle t-l-b-r with field values 1, omega, 0, omega: the field solves
// the equation with gamma 1 at t and b and 2/3 at l and r.
Graph square_graph(const std::string& s) {
    Graph g;
    for (const char* v : {"t", "l", "b", "r"}) g.add_vertex(v + s);
    g.add_edge("t" + s, "l" + s);
    g.add_edge("l" + s, "b" + s);
    g.add_edge("b" + s, "r" + s);
    g.add_edge("r" + s, "t" + s);
    return g;
}

Field square_field(const std::string& s) {
    Field phi;
    phi.set("t" + s, Complex{1.0, 0.0});
    phi.set("l" + s, kOmega);
    phi.set("b" + s, Complex{0.0, 0.0});
    phi.set("r" + s, kOmega);
    return phi;
}

// The same four-cycle with the diagonal l-r: in the diamond field below the
// degree-two vertices carry gamma 2/3 and the diagonal endpoints gamma 0.
Graph diamond_graph(const std::string& s) {
    Graph g = square_graph(s);
    g.add_edge("l" + s, "r" + s);
    return g;
}

Field diamond_field(const std::string& s) {
    Field phi;
    phi.set("t" + s, Complex{0.0, kS3});
    phi.set("l" + s, Complex{-1.0, 0.0});
    phi.set("b" + s, Complex{0.0, -kS3});
    phi.set("r" + s, Complex{1.0, 0.0});
    return phi;
}

Graph triangle_graph(const std::vector<std::string>& ids) {
    Graph g;
    for (const auto& v : ids) g.add_vertex(v);
    g.add_edge(ids[0], ids[1]);
    g.add_edge(ids[1], ids[2]);
    g.add_edge(ids[2], ids[0]);
    return g;
}

Particle point_particle(const std::string& id, Complex value) {
    Graph g;
    g.add_vertex(id);
    Field phi;
    phi.set(id, value);
    return make_particle(g, {phi});
}

bool is_bipartite(const Graph& g) {
    std::map<std::string, int> side;
    for (const auto& start : g.vertices()) {
        if (side.count(start)) continue;
        side[start] = 0;
        std::vector<std::string> queue{start};
        while (!queue.empty()) {
            std::string v = queue.back();
            queue.pop_back();
            for (const auto& w : g.neighbors(v)) {
                if (!side.count(w)) {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("per-vertex gamma read off a field") {
    Graph g = square_graph("");
    Field phi = square_field("");
    StateGamma sg = state_gamma(g, phi);
    CHECK(sg.gamma.at("t") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sg.gamma.at("b") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sg.gamma.at("l") == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(sg.gamma.at("r") == doctest::Approx(2.0 / 3).epsilon(1e-12));
    for (const auto& v : g.vertices()) CHECK(sg.constrained.at(v));
    CHECK_FALSE(sg.constant.has_value());
    CHECK(is_state(g, phi));
    CHECK_FALSE(is_isostate(g, phi));

    // Triangle on 0, 1, omega: constant gamma 2/3.
    Graph tri = triangle_graph({"a", "b", "c"});
    Field psi;
    psi.set("a", Complex{0.0, 0.0});
    psi.set("b", Complex{1.0, 0.0});
    psi.set("c", kOmega);
    StateGamma tg = state_gamma(tri, psi);
    REQUIRE(tg.constant.has_value());
    CHECK(*tg.constant == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(is_isostate(tri, psi));

    // A straight path has a vanishing mean difference but a nonvanishing
    // mean square at the middle vertex: no gamma exists.
    Graph path;
    for (const char* v : {"a", "b", "c"}) path.add_vertex(v);
    path.add_edge("a", "b");
    path.add_edge("b", "c");
    Field line;
    line.set("a", Complex{0.0, 0.0});
    line.set("b", Complex{1.0, 0.0});
    line.set("c", Complex{2.0, 0.0});
    CHECK_THROWS_AS(state_gamma(path, line), std::domain_error);
    CHECK_FALSE(is_state(path, line));
}

TEST_CASE("unconstrained centre of a triangle with its centroid attached") {
    Graph g = triangle_graph({"a", "b", "c"});
    g.add_vertex("m");
    for (const char* v : {"a", "b", "c"}) g.add_edge(v, "m");
    Field phi;
    phi.set("a", Complex{0.0, 0.0});
    phi.set("b", Complex{1.0, 0.0});
    phi.set("c", kOmega);
    phi.set("m", (Complex{1.0, 0.0} + kOmega) / 3.0);
    StateGamma sg = state_gamma(g, phi);
    CHECK_FALSE(sg.constrained.at("m"));
    for (const char* v : {"a", "b", "c"}) {
        CHECK(sg.constrained.at(v));
        CHECK(sg.gamma.at(v) == doctest::Approx(0.75).epsilon(1e-12));
    }
    // The free centre inherits the common value, so the state is an isostate.
    REQUIRE(sg.constant.has_value());
    CHECK(*sg.constant == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(sg.gamma.at("m") == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(is_isostate(g, phi));
}

TEST_CASE("affine equivalence of fields") {
    Field a = diamond_field("");
    Field b;
    const Complex lambda{0.4, -1.7}, mu{2.5, 0.3};
    for (const auto& [k, v] : a.values()) b.set(k, lambda * v + mu);
    CHECK(same_state(a, b));
    CHECK(same_state(b, a));
    Field c = b;
    c.set("t", b.at("t") + Complex{0.1, 0.0});
    CHECK_FALSE(same_state(a, c));

    Field k1, k2;
    for (const auto& [k, v] : a.values()) {
        k1.set(k, Complex{3.0, 1.0});
        k2.set(k, Complex{-2.0, 0.0});
    }
    CHECK(same_state(k1, k2));     // both constant
    CHECK_FALSE(same_state(k1, a));  // constant vs non-constant
}

TEST_CASE("particle construction validates connectivity and states") {
    CHECK_NOTHROW(make_particle(square_graph(""), {square_field("")}));
    CHECK_NOTHROW(make_particle(diamond_graph(""), {diamond_field("")}));

    Graph two;
    two.add_vertex("a");
    two.add_vertex("b");
    CHECK_THROWS_AS(make_particle(two, {}), std::invalid_argument);

    Graph path;
    for (const char* v : {"a", "b", "c"}) path.add_vertex(v);
    path.add_edge("a", "b");
    path.add_edge("b", "c");
    Field line;
    line.set("a", Complex{0.0, 0.0});
    line.set("b", Complex{1.0, 0.0});
    line.set("c", Complex{2.0, 0.0});
    CHECK_THROWS_AS(make_particle(path, {line}), std::invalid_argument);
}

TEST_CASE("correlation of the two diamonds lands in the constant-gamma state") {
    Particle p1 = make_particle(diamond_graph("1"), {diamond_field("1")});
    Particle p2 = make_particle(diamond_graph("2"), {diamond_field("2")});
    Correlation c = correlate(p1, diamond_field("1"), p2, diamond_field("2"),
                              {{"t1", "t2"}, {"b1", "b2"}});
    CHECK(c.particle.graph.vertex_count() == 8);
    CHECK(c.particle.graph.edge_count() == 12);
    REQUIRE(!c.witnesses.empty());

    // Every witness restricts to the given field on side one and is a state
    // with gamma at most one.
    for (const auto& w : c.witnesses) {
        for (const auto& v : p1.graph.vertices())
            CHECK(std::abs(w.at(v) - diamond_field("1").at(v)) <= 1e-9);
        CHECK(is_state(c.particle.graph, w, 1e-7));
        StateGamma sg = state_gamma(c.particle.graph, w, 1e-7);
        for (const auto& v : c.particle.graph.vertices()) CHECK(sg.gamma.at(v) <= 1.0 + 1e-7);
    }

    // The displayed outcome: side two translated by 2, constant gamma 0.
    const Field* shifted = nullptr;
    for (const auto& w : c.witnesses)
        if (std::abs(w.at("t2") - Complex{2.0, kS3}) <= 1e-6) shifted = &w;
    REQUIRE(shifted != nullptr);
    CHECK(std::abs(shifted->at("l2") - Complex{1.0, 0.0}) <= 1e-6);
    CHECK(std::abs(shifted->at("r2") - Complex{3.0, 0.0}) <= 1e-6);
    CHECK(std::abs(shifted->at("b2") - Complex{2.0, -kS3}) <= 1e-6);
    StateGamma sg = state_gamma(c.particle.graph, *shifted, 1e-7);
    REQUIRE(sg.constant.has_value());
    CHECK(*sg.constant == doctest::Approx(0.0).epsilon(1e-6));

    // Witnesses are ordered with the constant-gamma states first.
    CHECK(is_isostate(c.particle.graph, c.witnesses.front(), 1e-7));
}

TEST_CASE("correlating two point particles gives gamma one at both ends") {
    Particle pa = point_particle("a", Complex{0.5, 0.0});
    Particle pb = point_particle("b", Complex{0.3, 0.2});
    Correlation c = correlate(pa, pa.states[0], pb, pb.states[0], {{"a", "b"}});
    bool distinct_found = false;
    for (const auto& w : c.witnesses) {
        CHECK(is_state(c.particle.graph, w, 1e-7));
        if (std::abs(w.at("a") - w.at("b")) > 1e-6) {
            distinct_found = true;
            StateGamma sg = state_gamma(c.particle.graph, w, 1e-7);
            CHECK(sg.gamma.at("a") == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(sg.gamma.at("b") == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    CHECK(distinct_found);
}

TEST_CASE("correlation rejects an edge that breaks the equation") {
    // The added diagonal t-b of the square joins 1 to 0 across two omega
    // neighbours; the gamma ratio at t acquires a fixed imaginary part, so no
    // affine match on the far side can repair it.
    Particle p1 = make_particle(square_graph("1"), {square_field("1")});
    Particle p2 = point_particle("p", Complex{0.0, 0.0});
    CHECK_THROWS_AS(correlate(p1, square_field("1"), p2, p2.states[0],
                              {{"t1", "b1"}, {"r1", "p"}}),
                    std::runtime_error);
}

TEST_CASE("correlation validates its inputs") {
    Particle p1 = make_particle(diamond_graph("1"), {diamond_field("1")});
    Particle p2 = make_particle(diamond_graph("2"), {diamond_field("2")});
    Field wrong = square_field("1");  // not a state of the diamond graph catalog
    CHECK_THROWS_AS(correlate(p1, wrong, p2, diamond_field("2"), {{"t1", "t2"}}),
                    std::invalid_argument);
    Particle clash = make_particle(diamond_graph("1"), {diamond_field("1")});
    CHECK_THROWS_AS(correlate(p1, diamond_field("1"), clash, diamond_field("1"),
                              {{"t1", "b1"}}),
                    std::invalid_argument);
}

TEST_CASE("separation of the two connected triangles") {
    // Two triangles on 0, 1, omega joined across equal values: a state with
    // constant gamma one, collapsing to two disjoint triangles.
    Graph g = triangle_graph({"o0", "o1", "o2"});
    g.add_vertex("i0");
    g.add_vertex("i1");
    g.add_vertex("i2");
    g.add_edge("i0", "i1");
    g.add_edge("i1", "i2");
    g.add_edge("i2", "i0");
    for (int k = 0; k < 3; ++k)
        g.add_edge("o" + std::to_string(k), "i" + std::to_string(k));
    Field phi;
    const Complex vals[3] = {Complex{0.0, 0.0}, Complex{1.0, 0.0}, kOmega};
    for (int k = 0; k < 3; ++k) {
        phi.set("o" + std::to_string(k), vals[k]);
        phi.set("i" + std::to_string(k), vals[k]);
    }
    REQUIRE(is_isostate(g, phi));
    CHECK(*state_gamma(g, phi).constant == doctest::Approx(1.0).epsilon(1e-12));

    Particle p = make_particle(g, {phi});
    std::vector<Particle> parts = separate(p, phi);
    REQUIRE(parts.size() == 2);
    for (const auto& part : parts) {
        CHECK(part.graph.vertex_count() == 3);
        CHECK(part.graph.edge_count() == 3);
        REQUIRE(part.states.size() == 1);
        StateGamma sg = state_gamma(part.graph, part.states[0]);
        REQUIRE(sg.constant.has_value());
        CHECK(*sg.constant == doctest::Approx(2.0 / 3).epsilon(1e-12));
        for (const auto& v : part.graph.vertices())
            CHECK(std::abs(part.states[0].at(v) - phi.at(v)) <= 1e-12);
    }

    // Collapsing is idempotent: separating a collapsed component returns it
    // unchanged.
    std::vector<Particle> again = separate(parts[0], parts[0].states[0]);
    REQUIRE(again.size() == 1);
    CHECK(again[0].graph.vertex_count() == 3);
    CHECK(again[0].graph.edge_count() == 3);
    CHECK(same_state(again[0].states[0], parts[0].states[0]));
}

TEST_CASE("separation needs a surviving vertex") {
    Graph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_edge("a", "b");
    Field constant;
    constant.set("a", Complex{1.0, 1.0});
    constant.set("b", Complex{1.0, 1.0});
    Particle p = make_particle(g, {constant});
    CHECK_THROWS_AS(separate(p, constant), std::runtime_error);
}

TEST_CASE("mutation by adding the diagonal reaches a constant-gamma state") {
    Particle p = make_particle(square_graph(""), {square_field("")});
    Particle mutated = mutate(p, square_field(""), {{true, "l", "r"}});
    CHECK(mutated.graph.edge_count() == 5);
    REQUIRE(is_isostate(mutated.graph, square_field("")));
    CHECK(*state_gamma(mutated.graph, square_field("")).constant ==
          doctest::Approx(1.0).epsilon(1e-12));
    // The original field survives the rewiring and stays catalogued.
    REQUIRE(!mutated.states.empty());
    CHECK(same_state(mutated.states[0], square_field("")));

    // The identity mutation returns the same particle.
    Particle same = mutate(p, square_field(""), {});
    CHECK(same.graph.edge_count() == p.graph.edge_count());
    CHECK(same.graph.vertex_count() == p.graph.vertex_count());
}

TEST_CASE("mutation failure modes") {
    Particle p = make_particle(square_graph(""), {square_field("")});
    // The other diagonal joins 1 to 0 across two equal neighbours; the field
    // stops solving the equation there.
    CHECK_THROWS_AS(mutate(p, square_field(""), {{true, "t", "b"}}), std::runtime_error);
    // Removing two edges strands a vertex.
    CHECK_THROWS_AS(
        mutate(p, square_field(""), {{false, "t", "l"}, {false, "t", "r"}}),
        std::runtime_error);
    // Removing a missing edge or editing unknown vertices is malformed.
    CHECK_THROWS_AS(mutate(p, square_field(""), {{false, "l", "r"}}), std::invalid_argument);
    CHECK_THROWS_AS(mutate(p, square_field(""), {{true, "t", "x"}}), std::invalid_argument);
    // An uncatalogued field is refused.
    Field other;
    for (const auto& v : p.graph.vertices()) other.set(v, diamond_field("").at(v));
    CHECK_THROWS_AS(mutate(p, other, {{true, "l", "r"}}), std::invalid_argument);
}

TEST_CASE("evolution: two squares to the skeleton of the cube") {
    // Two squares gain their diagonals, fall into the diamond states,
    // correlate into the eight-vertex particle, and a final two-edge flip
    // produces the one-skeleton of the cube.
    Particle p = make_particle(square_graph("1"), {square_field("1")});
    Particle q = make_particle(square_graph("2"), {square_field("2")});
    Particle pd = mutate(p, square_field("1"), {{true, "l1", "r1"}});
    Particle qd = mutate(q, square_field("2"), {{true, "l2", "r2"}});
    CHECK(is_isostate(pd.graph, square_field("1")));

    // Each diamond falls into the state with gamma 2/3 at the degree-two
    // vertices and 0 on the diagonal; catalogs are finite and extendable.
    Particle pc = make_particle(pd.graph, {square_field("1"), diamond_field("1")});
    Particle qc = make_particle(qd.graph, {square_field("2"), diamond_field("2")});

    Correlation c = correlate(pc, diamond_field("1"), qc, diamond_field("2"),
                              {{"t1", "t2"}, {"b1", "b2"}});
    const Field* witness = nullptr;
    for (const auto& w : c.witnesses)
        if (std::abs(w.at("t2") - Complex{2.0, kS3}) <= 1e-6) witness = &w;
    REQUIRE(witness != nullptr);
    REQUIRE(is_isostate(c.particle.graph, *witness, 1e-7));

    // Two edges flip: the middle outer vertices reattach to the opposite
    // central vertices.
    Particle cube = mutate(c.particle, *witness,
                           {{false, "l1", "r1"},
                            {false, "l2", "r2"},
                            {true, "l1", "l2"},
                            {true, "r1", "r2"}},
                           1e-7);
    CHECK(cube.graph.vertex_count() == 8);
    CHECK(cube.graph.edge_count() == 12);
    for (const auto& v : cube.graph.vertices()) CHECK(cube.graph.degree(v) == 3);
    // A connected cubic bipartite graph on eight vertices is the cube.
    CHECK(is_bipartite(cube.graph));
    CHECK(cube.graph.is_connected());

    StateGamma sg = state_gamma(cube.graph, *witness, 1e-7);
    REQUIRE(sg.constant.has_value());
    CHECK(*sg.constant == doctest::Approx(0.0).epsilon(1e-6));
    // The two central vertices see a fully degenerate star: any gamma fits.
    CHECK_FALSE(sg.constrained.at("r1"));
    CHECK_FALSE(sg.constrained.at("l2"));

    CHECK(thermal_time(cube.graph) == doctest::Approx(std::sqrt(2.0) / 12).epsilon(1e-12));
}

TEST_CASE("duplication: a triangle doubles itself through attached points") {
    // Three point particles attach symmetrically to a triangle on 0, 1,
    // omega: the value facing vertex x is the reflection of x through the
    // midpoint of the other two, giving a constant-gamma-one state.
    Graph g = triangle_graph({"a", "b", "c"});
    for (const char* v : {"pa", "pb", "pc"}) g.add_vertex(v);
    g.add_edge("a", "pa");
    g.add_edge("b", "pb");
    g.add_edge("c", "pc");
    const Complex va{0.0, 0.0}, vb{1.0, 0.0}, vc = kOmega;
    const Complex s = va + vb + vc;
    Field phi;
    phi.set("a", va);
    phi.set("b", vb);
    phi.set("c", vc);
    phi.set("pa", s - 2.0 * va);
    phi.set("pb", s - 2.0 * vb);
    phi.set("pc", s - 2.0 * vc);
    CHECK(std::abs(phi.at("pa") - (Complex{1.0, 0.0} + kOmega)) <= 1e-15);
    REQUIRE(is_isostate(g, phi));
    CHECK(*state_gamma(g, phi).constant == doctest::Approx(1.0).epsilon(1e-12));

    // A single point particle correlating with the triangle always finds a
    // compatible placement.
    Particle tri = make_particle(triangle_graph({"a", "b", "c"}),
                                 {[&] {
                                     Field f;
                                     f.set("a", va);
                                     f.set("b", vb);
                                     f.set("c", vc);
                                     return f;
                                 }()});
    Particle pt = point_particle("w", Complex{0.0, 0.0});
    Correlation single = correlate(tri, tri.states[0], pt, pt.states[0], {{"a", "w"}});
    CHECK(!single.witnesses.empty());

    // Joining the attached points into a triangle leaves gamma one on the
    // original vertices and 7/9 on the new ones.
    Particle p = make_particle(g, {phi});
    Particle joined = mutate(p, phi,
                             {{true, "pa", "pb"}, {true, "pb", "pc"}, {true, "pc", "pa"}});
    StateGamma sg = state_gamma(joined.graph, phi);
    for (const char* v : {"a", "b", "c"})
        CHECK(sg.gamma.at(v) == doctest::Approx(1.0).epsilon(1e-12));
    for (const char* v : {"pa", "pb", "pc"})
        CHECK(sg.gamma.at(v) == doctest::Approx(7.0 / 9).epsilon(1e-12));
    CHECK_FALSE(sg.constant.has_value());

    // The joined graph is the two-triangles graph; it falls into the
    // constant-gamma-one state with equal values across the connecting
    // edges, and separation then duplicates the triangle.
    Field iso;
    iso.set("a", va);
    iso.set("b", vb);
    iso.set("c", vc);
    iso.set("pa", va);
    iso.set("pb", vb);
    iso.set("pc", vc);
    REQUIRE(is_isostate(joined.graph, iso));
    Particle settled = make_particle(joined.graph, {phi, iso});
    std::vector<Particle> twins = separate(settled, iso);
    REQUIRE(twins.size() == 2);
    for (const auto& t : twins) {
        CHECK(t.graph.vertex_count() == 3);
        CHECK(t.graph.edge_count() == 3);
        CHECK(*state_gamma(t.graph, t.states[0]).constant ==
              doctest::Approx(2.0 / 3).epsilon(1e-12));
    }
}

TEST_CASE("attachment locus for two perpendicular unit neighbours") {
    // Neighbours at 1 and i: the locus factors into the line u = v and the
    // circle of radius sqrt(1/2) centred at -(1+i)/2.
    const std::vector<Complex> zs{Complex{1.0, 0.0}, Complex{0.0, 1.0}};
    std::vector<Complex> pts =
        attach_locus(zs, Complex{-2.0, -2.0}, Complex{2.0, 2.0}, 200);
    REQUIRE(!pts.empty());
    bool on_line = false, on_circle = false;
    for (const auto& w : pts) {
        CHECK(std::abs(attach_defect(zs, w)) <= 1e-8);
        const double u = w.real(), v = w.imag();
        const double line = u - v;
        const double circle = u * u + v * v + u + v;
        CHECK(std::abs(line * circle) <= 1e-6);
        if (std::abs(line) <= 1e-6) on_line = true;
        if (std::abs(circle) <= 1e-6 && std::abs(line) > 1e-3) on_circle = true;
    }
    CHECK(on_line);
    CHECK(on_circle);

    // A window away from both components comes back empty.
    CHECK(attach_locus(zs, Complex{2.2, -1.0}, Complex{3.2, 0.0}, 60).empty());
}

TEST_CASE("attachment cubic matches the defect and its singular point") {
    // The cubic equals -(1/2) Im[(sum z^2 + w^2) conj((sum z + w)^2)].
    for (double r : {0.7, 1.6, 2.4})
        for (double theta : {0.4, 1.3, 2.5})
            for (double u : {-1.3, 0.2, 1.7})
                for (double v : {-0.8, 0.9}) {
                    const Complex w{u, v};
                    const std::vector<Complex> zs{Complex{1.0, 0.0},
                                                  std::polar(r, theta)};
                    Complex sum = zs[0] + zs[1] + w;
                    Complex sumsq = zs[0] * zs[0] + zs[1] * zs[1] + w * w;
                    const double expected = -0.5 * std::imag(sumsq * std::conj(sum * sum));
                    CHECK(attach_cubic(r, theta, w) ==
                          doctest::Approx(expected).epsilon(1e-10));
                }

    // Locus points of a generic two-neighbour star satisfy the cubic.
    const double r = 1.7, theta = 0.9;
    const std::vector<Complex> zs{Complex{1.0, 0.0}, std::polar(r, theta)};
    std::vector<Complex> pts =
        attach_locus(zs, Complex{-3.0, -3.0}, Complex{3.0, 3.0}, 150);
    REQUIRE(!pts.empty());
    for (const auto& w : pts) CHECK(std::abs(attach_cubic(r, theta, w)) <= 1e-6);

    // theta = pi/2: the curve is singular at (-1, -r), where both the cubic
    // and its gradient vanish.
    for (double rr : {1.5, 2.0}) {
        const Complex w0{-1.0, -rr};
        CHECK(std::abs(attach_cubic(rr, kPi / 2, w0)) <= 1e-12);
        const double h = 1e-6;
        const double gu = (attach_cubic(rr, kPi / 2, w0 + Complex{h, 0.0}) -
                           attach_cubic(rr, kPi / 2, w0 - Complex{h, 0.0})) /
                          (2.0 * h);
        const double gv = (attach_cubic(rr, kPi / 2, w0 + Complex{0.0, h}) -
                           attach_cubic(rr, kPi / 2, w0 - Complex{0.0, h})) /
                          (2.0 * h);
        CHECK(std::abs(gu) <= 1e-5);
        CHECK(std::abs(gv) <= 1e-5);
    }
}

TEST_CASE("attachment locus of a generic star keeps the ratio real") {
    const std::vector<Complex> zs{Complex{0.3, 0.7}, Complex{-1.1, 0.2},
                                  Complex{0.5, -0.9}};
    std::vector<Complex> pts =
        attach_locus(zs, Complex{-2.5, -2.5}, Complex{2.5, 2.5}, 120);
    REQUIRE(!pts.empty());
    for (const auto& w : pts) CHECK(std::abs(attach_defect(zs, w)) <= 1e-8);
    CHECK_THROWS_AS(attach_defect(zs, -(zs[0] + zs[1] + zs[2])), std::domain_error);
    CHECK_THROWS_AS(attach_defect({}, Complex{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("thermal time of simple graphs") {
    Graph cycle;
    for (int k = 0; k < 5; ++k) cycle.add_vertex("v" + std::to_string(k));
    for (int k = 0; k < 5; ++k)
        cycle.add_edge("v" + std::to_string(k), "v" + std::to_string((k + 1) % 5));
    CHECK(thermal_time(cycle) == doctest::Approx(0.0).epsilon(1e-15));

    Graph edge;
    edge.add_vertex("a");
    edge.add_vertex("b");
    edge.add_edge("a", "b");
    CHECK(thermal_time(edge) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));

    Graph path;
    for (const char* v : {"a", "b", "c"}) path.add_vertex(v);
    path.add_edge("a", "b");
    path.add_edge("b", "c");
    CHECK(thermal_time(path) == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-15));

    Graph cube;
    for (int k = 0; k < 8; ++k) cube.add_vertex("c" + std::to_string(k));
    for (int a = 0; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b) {
            int x = a ^ b;
            if (x == 1 || x == 2 || x == 4)
                cube.add_edge("c" + std::to_string(a), "c" + std::to_string(b));
        }
    CHECK(thermal_time(cube) == doctest::Approx(std::sqrt(2.0) / 12).epsilon(1e-15));

    Graph lonely;
    lonely.add_vertex("a");
    CHECK_THROWS_AS(thermal_time(lonely), std::invalid_argument);
}
