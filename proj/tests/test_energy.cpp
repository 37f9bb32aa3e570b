#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qde/energy.hpp"
#include "qde/lifting.hpp"

using namespace qde;

namespace {

const double kPi = 3.14159265358979323846;
const double kRoot5 = std::sqrt(5.0);

// Total chain energy recomputed from reconstructed vertices: sum over the M
// corners of 1 + cos(exterior angle).
double energy_from_vertices(const std::vector<Complex>& verts) {
    const int m = static_cast<int>(verts.size());
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
        const Complex in = verts[k] - verts[(k + m - 1) % m];
        const Complex out = verts[(k + 1) % m] - verts[k];
        total += 1.0 + (out * std::conj(in)).real() / (std::abs(out) * std::abs(in));
    }
    return total;
}

std::vector<double> random_closable(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> dist(-2.5, 2.5);
    for (;;) {
        std::vector<double> sigma(count);
        for (double& a : sigma) a = dist(rng);
        try {
            const ChainQuantities q = chain_quantities(sigma);
            if (q.s > 0.3 && q.s < 1.9) return sigma;
        } catch (const std::domain_error&) {
        }
    }
}

Field cycle_positions(Graph& g, int n, double step_angle) {
    for (int k = 0; k < n; ++k) g.add_vertex("v" + std::to_string(k));
    for (int k = 0; k < n; ++k)
        g.add_edge("v" + std::to_string(k), "v" + std::to_string((k + 1) % n));
    Field phi;
    for (int k = 0; k < n; ++k)
        phi.set("v" + std::to_string(k), std::polar(1.0, step_angle * k));
    return phi;
}

}  // namespace

TEST_CASE("corner energy is one plus the cosine of the exterior angle") {
    // Pentagon corner: interior 3pi/5, exterior 2pi/5.
    CHECK(corner_energy(1.0, std::polar(1.0, 3 * kPi / 5)) ==
          doctest::Approx((3 + kRoot5) / 4).epsilon(1e-12));
    // Star-pentagon corner: exterior 4pi/5.
    CHECK(corner_energy(1.0, std::polar(1.0, kPi / 5)) ==
          doctest::Approx((3 - kRoot5) / 4).epsilon(1e-12));
    // Fully folded corner: both offsets in the same direction.
    CHECK(corner_energy(Complex(0.7, 0.1), Complex(1.4, 0.2)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(corner_energy(0.0, 1.0) == 0.0);
}

TEST_CASE("star energy agrees with the lifted third-row norm") {
    // n ||Z||^2 / sum |z|^2 with Z the lifted row of the minimal star.
    struct Probe {
        std::vector<Complex> zs;
        double gamma;
    };
    for (const auto& [zs, gamma] : {Probe{{1.0, Complex(0, 1), -1.0, Complex(0, -1)}, 0.5},
                                    Probe{{-1.0, Complex(-1, 1), Complex(-1, -1)}, 1.0 / 3}}) {
        const Mat w = lift3(zs, gamma);
        double norm2 = 0.0;
        for (const Complex& z : zs) norm2 += std::norm(z);
        const double oracle = zs.size() * w.row(2).squaredNorm() / norm2;
        CHECK(vertex_energy(zs, gamma) == doctest::Approx(oracle).epsilon(1e-12));
    }
    CHECK(vertex_energy({1.0, Complex(0, 1), -1.0, Complex(0, -1)}, 0.5) ==
          doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("star energy invariances and preconditions") {
    std::vector<Complex> zs{Complex(1, 0.5), Complex(-0.3, 1.2), Complex(0.4, -2.0)};
    const double e = vertex_energy(zs, 0.25);
    std::vector<Complex> scaled;
    for (const Complex& z : zs) scaled.push_back(z * Complex(2, -3));
    CHECK(vertex_energy(scaled, 0.25) == doctest::Approx(e).epsilon(1e-12));
    CHECK(vertex_energy({0.0, 0.0, 0.0}, 2.0) == 0.0);  // constant star, any gamma
    CHECK_THROWS_AS(vertex_energy(zs, 1.0), std::domain_error);
    CHECK_THROWS_AS(vertex_energy({1.0, -1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("total energy of regular pentagon and star pentagon cycles") {
    Graph g1;
    Field pentagon = cycle_positions(g1, 5, 2 * kPi / 5);
    CHECK(total_energy(g1, pentagon, GammaAssignment::constant(1.0)) ==
          doctest::Approx(5 * (3 + kRoot5) / 4).epsilon(1e-12));
    Graph g2;
    Field star = cycle_positions(g2, 5, 4 * kPi / 5);
    CHECK(total_energy(g2, star, GammaAssignment::constant(1.0)) ==
          doctest::Approx(5 * (3 - kRoot5) / 4).epsilon(1e-12));
}

TEST_CASE("chain quantities at the regular five-sided configurations") {
    auto pentagon = chain_quantities({2 * kPi / 5, 2 * kPi / 5});
    CHECK(pentagon.m == 5);
    CHECK(pentagon.s == doctest::Approx(2 * std::cos(kPi / 5)).epsilon(1e-12));
    CHECK(pentagon.cos_theta2 == doctest::Approx(std::cos(2 * kPi / 5)).epsilon(1e-12));
    CHECK(pentagon.energy_plus == doctest::Approx(5 * (3 + kRoot5) / 4).epsilon(1e-12));
    CHECK_FALSE(pentagon.folded);

    auto star = chain_quantities({4 * kPi / 5, 4 * kPi / 5});
    CHECK(star.energy_plus == doctest::Approx(5 * (3 - kRoot5) / 4).epsilon(1e-12));
    CHECK(star.cos_theta2 == doctest::Approx(std::cos(4 * kPi / 5)).epsilon(1e-12));

    CHECK_THROWS_AS(chain_quantities({0.1, 0.1}), std::domain_error);  // s > 2
}

TEST_CASE("folded chains and the removable chart singularity") {
    auto folded = chain_quantities({kPi, kPi, kPi});
    CHECK(folded.folded);
    CHECK(folded.cos_theta2 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(folded.energy_plus == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(folded.energy_minus == doctest::Approx(4.0).epsilon(1e-9));

    // Transition point of the pentagon-to-star deformation: s and the sine
    // sum both vanish but the energy limit along the deformation is finite.
    auto transition = chain_quantities({2 * kPi / 3, 2 * kPi / 3});
    CHECK(transition.folded);
    CHECK(transition.energy_plus == doctest::Approx(3 - std::sqrt(3.0)).epsilon(1e-9));
    CHECK(transition.energy_minus == doctest::Approx(3 + std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("four-sided chains split into the flat and hinged families") {
    const double theta = 1.0;
    auto q = chain_quantities({theta});
    CHECK(q.energy_plus == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(q.energy_minus == doctest::Approx(2 + 2 * std::cos(theta)).epsilon(1e-12));
}

TEST_CASE("energy is invariant under traversing the chain backwards") {
    std::mt19937_64 rng(17);
    for (int count : {2, 3, 4, 5}) {
        const std::vector<double> sigma = random_closable(rng, count);
        // Reading the angle list backwards relabels the chain: same energies.
        std::vector<double> reversed(sigma.rbegin(), sigma.rend());
        const auto q = chain_quantities(sigma);
        const auto qr = chain_quantities(reversed);
        CHECK(qr.energy_plus == doctest::Approx(q.energy_plus).epsilon(1e-12));
        CHECK(qr.energy_minus == doctest::Approx(q.energy_minus).epsilon(1e-12));
        CHECK(qr.s == doctest::Approx(q.s).epsilon(1e-12));
        CHECK(qr.r == doctest::Approx(q.t).epsilon(1e-12));
        CHECK(qr.t == doctest::Approx(q.r).epsilon(1e-12));
        // Negating as well mirrors the figure and swaps the two branches.
        std::vector<double> mirrored = reversed;
        for (double& a : mirrored) a = -a;
        const auto qm = chain_quantities(mirrored);
        CHECK(qm.energy_plus == doctest::Approx(q.energy_minus).epsilon(1e-12));
        CHECK(qm.energy_minus == doctest::Approx(q.energy_plus).epsilon(1e-12));
    }
}

TEST_CASE("gradient vanishes at the regular configurations") {
    for (int m : {5, 6, 7, 8}) {
        std::vector<double> sigma(m - 3, 2 * kPi / m);
        for (double g : chain_gradient(sigma, +1)) CHECK(std::abs(g) <= 1e-9);
    }
    std::vector<double> star(2, 4 * kPi / 5);
    for (double g : chain_gradient(star, +1)) CHECK(std::abs(g) <= 1e-9);
}

TEST_CASE("gradient matches central finite differences") {
    std::mt19937_64 rng(29);
    const double h = 1e-6;
    for (int count : {2, 3, 4, 5}) {
        for (int branch : {+1, -1}) {
            const std::vector<double> sigma = random_closable(rng, count);
            const std::vector<double> grad = chain_gradient(sigma, branch);
            for (int l = 0; l < count; ++l) {
                std::vector<double> up = sigma, down = sigma;
                up[l] += h;
                down[l] -= h;
                const double fd = (chain_quantities(up).energy(branch) -
                                   chain_quantities(down).energy(branch)) /
                                  (2 * h);
                CHECK(std::abs(grad[l] - fd) <= 1e-6 * std::max(1.0, std::abs(grad[l])));
            }
        }
    }
    CHECK_THROWS_AS(chain_gradient({2 * kPi / 3, 2 * kPi / 3}), std::domain_error);
}

TEST_CASE("gradient ascent finds the regular pentagon") {
    ChainFlow flow = chain_flow({2 * kPi / 5 + 0.05, 2 * kPi / 5 - 0.03}, 0.1, 20000, +1);
    REQUIRE(flow.trajectory.size() >= 2);
    for (std::size_t k = 1; k < flow.trajectory.size(); ++k)
        CHECK(flow.trajectory[k].energy > flow.trajectory[k - 1].energy);
    const auto& last = flow.trajectory.back();
    CHECK(last.sigma[0] == doctest::Approx(2 * kPi / 5).epsilon(1e-6));
    CHECK(last.sigma[1] == doctest::Approx(2 * kPi / 5).epsilon(1e-6));
    CHECK(last.energy == doctest::Approx(5 * (3 + kRoot5) / 4).epsilon(1e-9));
}

TEST_CASE("gradient descent finds the regular star pentagon") {
    ChainFlow flow = chain_flow({4 * kPi / 5 - 0.05, 4 * kPi / 5 + 0.02}, 0.1, 20000, -1);
    for (std::size_t k = 1; k < flow.trajectory.size(); ++k)
        CHECK(flow.trajectory[k].energy < flow.trajectory[k - 1].energy);
    const auto& last = flow.trajectory.back();
    CHECK(last.sigma[0] == doctest::Approx(4 * kPi / 5).epsilon(1e-6));
    CHECK(last.sigma[1] == doctest::Approx(4 * kPi / 5).epsilon(1e-6));
    CHECK(last.energy == doctest::Approx(5 * (3 - kRoot5) / 4).epsilon(1e-9));
}

TEST_CASE("a critical start stops the flow immediately") {
    ChainFlow flow = chain_flow({2 * kPi / 5, 2 * kPi / 5}, 0.1, 100, +1);
    CHECK(flow.trajectory.size() == 1);
    CHECK(flow.stop_reason == "gradient");
    CHECK_THROWS_AS(chain_flow({kPi, kPi, kPi}, 0.1, 10, +1), std::domain_error);
}

TEST_CASE("vertex reconstruction closes with unit bars") {
    auto verts = chain_vertices({2 * kPi / 5, 2 * kPi / 5}, +1);
    REQUIRE(verts.size() == 5);
    for (int k = 0; k < 5; ++k)
        CHECK(std::abs(verts[(k + 1) % 5] - verts[k]) == doctest::Approx(1.0).epsilon(1e-9));
    // All exterior angles of the regular pentagon equal 2pi/5.
    for (int k = 0; k < 5; ++k) {
        const Complex in = verts[k] - verts[(k + 4) % 5];
        const Complex out = verts[(k + 1) % 5] - verts[k];
        CHECK(std::abs(std::arg(out / in)) == doctest::Approx(2 * kPi / 5).epsilon(1e-9));
    }
    CHECK(energy_from_vertices(verts) == doctest::Approx(5 * (3 + kRoot5) / 4).epsilon(1e-9));
}

TEST_CASE("four-sided reconstruction realizes both branch energies") {
    const double theta = 1.0;
    CHECK(energy_from_vertices(chain_vertices({theta}, +1)) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(energy_from_vertices(chain_vertices({theta}, -1)) ==
          doctest::Approx(2 + 2 * std::cos(theta)).epsilon(1e-9));
}

TEST_CASE("six-sided regular chain traverses a triangle twice") {
    auto verts = chain_vertices({2 * kPi / 3, 2 * kPi / 3, 2 * kPi / 3}, +1);
    REQUIRE(verts.size() == 6);
    CHECK(std::abs(verts[3] - verts[0]) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(verts[4] - verts[1]) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(verts[5] - verts[2]) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("reconstructed energy matches the closed form on random chains") {
    std::mt19937_64 rng(71);
    for (int count : {2, 3, 4}) {
        for (int branch : {+1, -1}) {
            const std::vector<double> sigma = random_closable(rng, count);
            const auto verts = chain_vertices(sigma, branch);
            REQUIRE(verts.size() == static_cast<std::size_t>(count + 3));
            for (std::size_t k = 0; k < verts.size(); ++k)
                CHECK(std::abs(verts[(k + 1) % verts.size()] - verts[k]) ==
                      doctest::Approx(1.0).epsilon(1e-9));
            CHECK(energy_from_vertices(verts) ==
                  doctest::Approx(chain_quantities(sigma).energy(branch)).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(chain_vertices({0.1, 0.1}), std::domain_error);
}
