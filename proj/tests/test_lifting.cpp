#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <vector>

#include "qde/frameworks.hpp"
#include "qde/lifting.hpp"

using namespace qde;

namespace {

const std::vector<Complex> kOuter{{-1, 0}, {-1, 1}, {-1, -1}};
const std::vector<Complex> kCentral{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Mat star_matrix(const Framework& fw, const std::string& x) {
    Mat w(fw.points.rows(), static_cast<int>(fw.graph.degree(x)));
    int j = 0;
    for (const auto& y : fw.graph.neighbors(x)) w.col(j++) = fw.position(y) - fw.position(x);
    return w;
}

std::vector<Complex> project_star(const Mat& w) {
    std::vector<Complex> zs;
    for (int l = 0; l < w.cols(); ++l) zs.emplace_back(w(0, l), w(1, l));
    return zs;
}

// The five-vertex wheel-like graph: a square with both diagonals passing
// through an explicit centre vertex.
struct SquareWithCentre {
    Graph graph;
    Field field;
    GammaAssignment gamma = GammaAssignment::constant(1.0 / 3.0);

    SquareWithCentre() {
        for (const auto& v : {"c", "p1", "px", "py", "pz"}) graph.add_vertex(v);
        for (const auto& v : {"p1", "px", "py", "pz"}) graph.add_edge("c", v);
        graph.add_edge("p1", "px");
        graph.add_edge("px", "py");
        graph.add_edge("py", "pz");
        graph.add_edge("pz", "p1");
        field.set("c", {0, 0});
        field.set("p1", {1, 0});
        field.set("px", {0, 1});
        field.set("py", {-1, 0});
        field.set("pz", {0, -1});
    }
};

bool proper_colouring(const Graph& g,
                      const std::map<std::pair<std::string, std::string>, int>& colour) {
    std::size_t max_degree = 0;
    for (const auto& v : g.vertices()) max_degree = std::max(max_degree, g.degree(v));
    if (colour.size() != g.edge_count()) return false;
    for (const auto& [edge, c] : colour)
        if (c < 1 || c > static_cast<int>(max_degree) + 1) return false;
    for (const auto& v : g.vertices()) {
        std::set<int> seen;
        for (const auto& y : g.neighbors(v)) {
            auto key = v < y ? std::make_pair(v, y) : std::make_pair(y, v);
            if (!seen.insert(colour.at(key)).second) return false;
        }
    }
    return true;
}

Graph cycle(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex("c" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        g.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % n));
    return g;
}

Graph complete(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex("k" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.add_edge("k" + std::to_string(i), "k" + std::to_string(j));
    return g;
}

}  // namespace

TEST_CASE("parameters of the two stars of the square-with-centre graph") {
    LiftParams outer = lift_params(kOuter, 1.0 / 3.0);
    CHECK(outer.rho == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(outer.sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(outer.u1 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(outer.u2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(outer.degenerate);

    LiftParams central = lift_params(kCentral, 1.0 / 3.0);
    CHECK(central.rho == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(central.sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(central.u1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(central.u2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(central.degenerate);
}

TEST_CASE("parameter preconditions") {
    CHECK_THROWS(lift_params(kCentral, 1.0));                  // gamma not below one
    CHECK_THROWS(lift_params({{0, 0}, {0, 0}, {0, 0}}, 0.5));  // all increments zero
    CHECK_THROWS(lift_params({{1, 0}, {2, 0}, {3, 0}}, 0.5));  // vertex equation violated
    CHECK_THROWS(lift3({{1, 0}, {0, 1}}, 0.0));                // planar degree two
}

TEST_CASE("homogeneous lift of the outer star") {
    Mat w = lift3(kOuter, 1.0 / 3.0);
    const double s3 = std::sqrt(3.0);
    CHECK(w(2, 0) == doctest::Approx(2.0 / s3).epsilon(1e-12));
    CHECK(w(2, 1) == doctest::Approx(-1.0 / s3).epsilon(1e-12));
    CHECK(w(2, 2) == doctest::Approx(-1.0 / s3).epsilon(1e-12));
    Mat flipped = lift3(kOuter, 1.0 / 3.0, -1);
    CHECK((flipped.row(2) + w.row(2)).norm() <= 1e-12);
    CHECK((flipped.topRows(2) - w.topRows(2)).norm() <= 1e-12);

    StarInvariants inv = star_invariants(w);
    CHECK(inv.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(inv.sigma == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((w * w.transpose()).determinant() == doctest::Approx(12.0).epsilon(1e-9));
}

TEST_CASE("minimal lift of the central star") {
    Mat w = lift3(kCentral, 1.0 / 3.0);
    const double half_s3 = std::sqrt(3.0) / 2.0;
    for (int l = 0; l < 4; ++l) CHECK(w(2, l) == doctest::Approx(half_s3).epsilon(1e-12));
    StarInvariants inv = star_invariants(w);
    CHECK(inv.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(inv.sigma == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((w * w.transpose()).determinant() == doctest::Approx(12.0).epsilon(1e-9));
}

TEST_CASE("third row minimizes the norm among solutions of the linear system") {
    Mat w = lift3(kCentral, 1.0 / 3.0);
    Vec z = w.row(2).transpose();
    Mat a(3, 4);
    a.row(0) = w.row(0);
    a.row(1) = w.row(1);
    a.row(2) = Vec::Ones(4).transpose();
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v(i) = normal(rng);
        // Project onto the null space of the system matrix.
        Eigen::FullPivLU<Mat> lu(a);
        Mat null = lu.kernel();
        Vec y = null * (null.transpose() * null).ldlt().solve(null.transpose() * v);
        CHECK((a * y).norm() <= 1e-9);
        if (y.norm() > 1e-9) CHECK(z.norm() < (z + y).norm());
    }
}

TEST_CASE("four-dimensional lift of the central star") {
    Mat w = liftN(kCentral, 1.0 / 3.0, 4);
    Mat w3 = lift3(kCentral, 1.0 / 3.0);
    CHECK((w.topRows(3) - w3).norm() <= 1e-9);
    const double is2 = 1.0 / std::sqrt(2.0);
    std::vector<double> expect{is2, -is2, is2, -is2};
    for (int l = 0; l < 4; ++l)
        CHECK(std::abs(w(3, l)) == doctest::Approx(std::abs(expect[l])).epsilon(1e-9));
    CHECK(w(3, 0) * w(3, 1) < 0);
    CHECK(w(3, 0) * w(3, 2) > 0);
    StarInvariants inv = star_invariants(w);
    CHECK(inv.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(inv.sigma == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((w * w.transpose()).determinant() == doctest::Approx(24.0).epsilon(1e-9));

    CHECK((liftN(kCentral, 1.0 / 3.0, 3) - w3).norm() <= 1e-12);
    CHECK_THROWS(liftN(kCentral, 1.0 / 3.0, 5));
    CHECK_THROWS(liftN(kCentral, 1.0 / 3.0, 2));
}

TEST_CASE("degenerate full-dimension lift keeps the star constraint") {
    std::vector<Complex> zs{{-1, 1}, {1, 1}, {0, 1}, {0, 1}};
    Mat w = liftN(zs, 0.5, 4, 11);
    StarInvariants inv = star_invariants(w);
    CHECK(inv.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(inv.sigma == doctest::Approx(2.0).epsilon(1e-9));
    CHECK((w * w.transpose()).determinant() ==
          doctest::Approx(std::pow(2.0, 3) * 4.0).epsilon(1e-9));
}

TEST_CASE("regular lift of a lateral octahedron star picks the axis pair") {
    std::vector<Complex> zs{{-1, 1}, {1, 1}, {0, 1}, {0, 1}};
    Mat w = lift3(zs, 0.5, +1, true);
    Vec third = w.row(2).transpose();
    Vec expect(4);
    expect << 0, 0, 1, -1;
    CHECK((third - expect).norm() <= 1e-9);
    for (int l = 0; l < 4; ++l)
        CHECK(w.col(l).norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    // Orientation with volume sign +1 demands the flipped branch.
    Mat oriented = lift3_oriented(zs, 0.5, +1, true);
    CHECK((oriented.row(2).transpose() + expect).norm() <= 1e-9);
}

TEST_CASE("orientation fixes the sign of the apex star of the octahedron") {
    std::vector<Complex> zs{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Mat w = lift3_oriented(zs, 0.5, -1);
    for (int l = 0; l < 4; ++l) CHECK(w(2, l) == doctest::Approx(-1.0).epsilon(1e-9));
    Mat opposite = lift3_oriented(zs, 0.5, +1);
    for (int l = 0; l < 4; ++l) CHECK(opposite(2, l) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("projected framework stars lift back to themselves") {
    for (const Framework& fw :
         {tetrahedron_framework(), octahedron_framework(), cube_framework()}) {
        for (const auto& x : fw.graph.vertices()) {
            Mat truth = star_matrix(fw, x);
            StarInvariants inv = star_invariants(truth);
            const double gamma = star_gamma(inv);
            REQUIRE(gamma < 1.0);
            std::vector<Complex> zs = project_star(truth);
            LiftParams p = lift_params(zs, gamma);
            CHECK(p.rho == doctest::Approx(inv.rho).epsilon(1e-9));
            CHECK(p.sigma == doctest::Approx(inv.sigma).epsilon(1e-9));
            Mat lifted = p.degenerate ? lift3(zs, gamma, +1, true) : lift3(zs, gamma);
            CHECK((lifted.topRows(2) - truth.topRows(2)).norm() <= 1e-9);
            // The third row is recovered up to the documented sign ambiguity.
            const double match = std::min((lifted.row(2) - truth.row(2)).norm(),
                                          (lifted.row(2) + truth.row(2)).norm());
            CHECK(match <= 1e-8);
            StarInvariants relift = star_invariants(lifted);
            CHECK(relift.rho == doctest::Approx(inv.rho).epsilon(1e-9));
            CHECK(relift.sigma == doctest::Approx(inv.sigma).epsilon(1e-9));
        }
    }
}

TEST_CASE("edge colourings are proper and use at most max degree plus one colours") {
    Graph petersen;
    for (int i = 0; i < 10; ++i) petersen.add_vertex("v" + std::to_string(i));
    for (int i = 0; i < 5; ++i) {
        petersen.add_edge("v" + std::to_string(i), "v" + std::to_string((i + 1) % 5));
        petersen.add_edge("v" + std::to_string(i), "v" + std::to_string(i + 5));
        petersen.add_edge("v" + std::to_string(5 + i), "v" + std::to_string(5 + (i + 2) % 5));
    }
    for (const Graph& g : {cycle(5), cycle(6), complete(4), complete(5),
                           octahedron_framework().graph, cube_framework().graph, petersen}) {
        CHECK(proper_colouring(g, colour_edges(g)));
    }
}

TEST_CASE("oriented lifts of the whole octahedron are regular stars") {
    Framework fw = octahedron_framework();
    Orientation orientation;
    orientation.colour = colour_edges(fw.graph);
    for (const auto& v : fw.graph.vertices()) orientation.volume[v] = +1;
    Field phi = projected_field(fw, Mat::Identity(3, 3));
    GammaAssignment gamma = GammaAssignment::constant(0.5);
    for (const auto& v : fw.graph.vertices()) {
        Mat w = lift3_at(fw.graph, phi, gamma, orientation, v, true);
        for (int l = 0; l < w.cols(); ++l)
            CHECK(w.col(l).norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        StarInvariants inv = star_invariants(w);
        CHECK(inv.rho == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(inv.sigma == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("median edge lengths of the square-with-centre graph") {
    SquareWithCentre sc;
    REQUIRE(verify_state(sc.graph, sc.field, sc.gamma).pass);
    const double r_centre = std::sqrt(7.0) / 2.0;
    const double r_outer = std::sqrt(7.0 / 3.0);
    CHECK(median_edge_length(sc.graph, sc.field, sc.gamma, "c") ==
          doctest::Approx(r_centre).epsilon(1e-12));
    for (const auto& v : {"p1", "px", "py", "pz"})
        CHECK(median_edge_length(sc.graph, sc.field, sc.gamma, v) ==
              doctest::Approx(r_outer).epsilon(1e-12));
    CHECK(edge_length(sc.graph, sc.field, sc.gamma, "c", "p1") ==
          doctest::Approx((r_centre + r_outer) / 2.0).epsilon(1e-12));
    CHECK(edge_length(sc.graph, sc.field, sc.gamma, "p1", "px") ==
          doctest::Approx(r_outer).epsilon(1e-12));
    CHECK_THROWS(edge_length(sc.graph, sc.field, sc.gamma, "p1", "py"));  // not adjacent
    CHECK_THROWS(median_edge_length(kCentral, 1.5, 3));
    CHECK(derivative_norm2(sc.graph, sc.field) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("field constant around a vertex gives zero length") {
    Graph g;
    for (const auto& v : {"c", "a", "b", "d"}) g.add_vertex(v);
    for (const auto& v : {"a", "b", "d"}) g.add_edge("c", v);
    Field phi;
    for (const auto& v : {"c", "a", "b", "d"}) phi.set(v, {2, 1});
    CHECK(median_edge_length(g, phi, GammaAssignment::constant(0.5), "c") ==
          doctest::Approx(0.0));
}

TEST_CASE("shortest route between opposite corners passes through the centre") {
    SquareWithCentre sc;
    const double r_centre = std::sqrt(7.0) / 2.0;
    const double r_outer = std::sqrt(7.0 / 3.0);
    const double via_centre = r_centre + r_outer;
    CHECK(path_distance(sc.graph, sc.field, sc.gamma, 3, "px", "pz") ==
          doctest::Approx(via_centre).epsilon(1e-12));
    CHECK(via_centre < 2.0 * r_outer);  // beats the route along the square
    CHECK(path_distance(sc.graph, sc.field, sc.gamma, 3, "c", "p1") ==
          doctest::Approx((r_centre + r_outer) / 2.0).epsilon(1e-12));
    // Local triangle inequality on the triangle c, p1, px, strict since the
    // field is non-constant around c.
    const double lhs = edge_length(sc.graph, sc.field, sc.gamma, "c", "p1") +
                       edge_length(sc.graph, sc.field, sc.gamma, "c", "px");
    CHECK(lhs > edge_length(sc.graph, sc.field, sc.gamma, "p1", "px"));
}

TEST_CASE("absolute lengths survive affine renormalization") {
    SquareWithCentre sc;
    std::mt19937_64 rng(23);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double base = absolute_edge_length(sc.graph, sc.field, sc.gamma, "c", "p1");
    const double base_outer = absolute_edge_length(sc.graph, sc.field, sc.gamma, "p1", "px");
    for (int trial = 0; trial < 100; ++trial) {
        Complex lambda(normal(rng), normal(rng));
        if (std::abs(lambda) < 1e-3) lambda += 2.0;
        Complex mu(normal(rng), normal(rng));
        Field moved;
        for (const auto& [v, value] : sc.field.values()) moved.set(v, lambda * value + mu);
        CHECK(absolute_edge_length(sc.graph, moved, sc.gamma, "c", "p1") ==
              doctest::Approx(base).epsilon(1e-12));
        CHECK(absolute_edge_length(sc.graph, moved, sc.gamma, "p1", "px") ==
              doctest::Approx(base_outer).epsilon(1e-12));
    }
}

TEST_CASE("collapse is the identity on edge-injective fields") {
    SquareWithCentre sc;
    Collapsed result = collapse(sc.graph, sc.field, sc.gamma);
    CHECK(result.graph.vertex_count() == 5);
    CHECK(result.graph.edge_count() == 8);
    for (const auto& v : result.graph.vertices())
        CHECK(result.gamma.at(v) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("collapsing the segment-valued hexagon leaves two disjoint paths") {
    Graph g = cycle(6);
    Field phi;
    std::vector<double> values{0, 0, 1, 1, 0, 0};
    for (int i = 0; i < 6; ++i) phi.set("c" + std::to_string(i), {values[i], 0});
    GammaAssignment two = GammaAssignment::constant(2.0);
    REQUIRE(verify_state(g, phi, two).pass);
    Collapsed result = collapse(g, phi, two);
    CHECK(result.graph.vertex_count() == 4);
    CHECK(result.graph.edge_count() == 2);
    auto components = result.graph.connected_components();
    REQUIRE(components.size() == 2);
    for (const auto& comp : components) CHECK(comp.size() == 2);
    for (const auto& v : result.graph.vertices())
        CHECK(result.gamma.at(v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(verify_state(result.graph, result.field, result.gamma).pass);
}

TEST_CASE("path distance demands a collapsed graph") {
    Graph g = cycle(6);
    Field phi;
    std::vector<double> values{0, 0, 1, 1, 0, 0};
    for (int i = 0; i < 6; ++i) phi.set("c" + std::to_string(i), {values[i], 0});
    CHECK_THROWS(path_distance(g, phi, GammaAssignment::constant(0.5), 3, "c0", "c3"));
}

TEST_CASE("no invariant embedding above the smallest degree") {
    SquareWithCentre sc;
    EmbeddingBound bound = embedding_bound(sc.graph, sc.gamma);
    CHECK(bound.min_degree == 3);
    CHECK(bound.verdict == "no invariant embedding in R^N for N > 3");

    // Degree-two cycle: only the plane would be admissible.
    CHECK(embedding_bound(cycle(5), GammaAssignment::constant(2.0 / std::sqrt(5.0)))
              .min_degree == 2);

    // Complete graph on five vertices: nothing beyond dimension four.
    CHECK(embedding_bound(complete(5), GammaAssignment::constant(0.8)).min_degree == 4);

    CHECK_THROWS(embedding_bound(cycle(6), GammaAssignment::constant(2.0)));
}
