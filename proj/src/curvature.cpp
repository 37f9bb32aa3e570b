#include "qde/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qde {
namespace {

constexpr double kPi = std::numbers::pi;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

void require_gamma(double gamma) {
    if (!(gamma <= 1.0)) {
        throw std::domain_error("curvature requires gamma <= 1");
    }
}

std::pair<std::string, std::string> sorted_key(const std::string& a,
                                               const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

double curvature2(double gamma) {
    require_gamma(gamma);
    return clamped_acos(gamma / (gamma - 2.0)) / (2.0 * kPi);
}

double curvature3(double gamma, int n) {
    require_gamma(gamma);
    if (n < 3) {
        throw std::invalid_argument("vertex figure needs at least 3 points");
    }
    const double arg =
        (1.0 + 2.0 * (1.0 - gamma) * std::cos(2.0 * kPi / n)) / (3.0 - 2.0 * gamma);
    return 1.0 - n / (2.0 * kPi) * clamped_acos(arg);
}

double curvature4(double gamma, int n) {
    require_gamma(gamma);
    const double s5 = std::sqrt(5.0);
    double arg = 0.0;
    double faces = 0.0;   // spherical triangles per face angle count / pi factor
    double corner = 0.0;  // leading integer term of the deficit
    switch (n) {
        case 4:  // tetrahedral vertex figure
            arg = gamma / (4.0 - 2.0 * gamma);
            corner = 2.0;
            faces = 3.0;
            break;
        case 6:  // octahedral vertex figure
            arg = 1.0 / (5.0 - 3.0 * gamma);
            corner = 3.0;
            faces = 6.0;
            break;
        case 12:  // icosahedral vertex figure
            arg = (8.0 + 4.0 * s5 - 3.0 * (1.0 + s5) * gamma) /
                  (28.0 + 8.0 * s5 - 6.0 * (3.0 + s5) * gamma);
            corner = 6.0;
            faces = 15.0;
            break;
        case 20:  // dodecahedral vertex figure
            arg = ((3.0 + s5) * gamma - 2.0 - 2.0 * s5) /
                  (2.0 * (5.0 + s5 - (3.0 + s5) * gamma));
            corner = 10.0;
            faces = 15.0;
            break;
        default:
            throw std::invalid_argument("degree must be one of 4, 6, 12, 20");
    }
    return corner - faces / kPi * clamped_acos(arg);
}

double gamma_600cell() { return -2.0 * (1.0 + std::sqrt(5.0)) / 3.0; }

double edge_deficit_600cell() {
    return 1.0 - 5.0 / (2.0 * kPi) * std::acos(1.0 / 3.0);
}

CurvatureReport vertex_curvatures(const Graph& g, const GammaAssignment& gamma,
                                  int dimension) {
    CurvatureReport report;
    report.dimension = dimension;
    for (const auto& v : g.vertices()) {
        const double gv = gamma.at(v);
        const int n = static_cast<int>(g.degree(v));
        double deficit = 0.0;
        switch (dimension) {
            case 2:
                deficit = curvature2(gv);
                break;
            case 3:
                deficit = curvature3(gv, n);
                break;
            case 4:
                deficit = curvature4(gv, n);
                break;
            default:
                throw std::invalid_argument("dimension must be 2, 3 or 4");
        }
        report.deficit[v] = deficit;
        report.total += deficit;
    }
    report.total_radians = 2.0 * kPi * report.total;
    return report;
}

double EdgeCurvatureSuite::angle(const std::string& x, const std::string& y) const {
    const auto it = theta.find(sorted_key(x, y));
    if (it == theta.end()) {
        throw std::invalid_argument("no angle recorded for edge " + x + " -- " + y);
    }
    return it->second;
}

double EdgeCurvatureSuite::sectional(const std::string& x, const std::string& y1,
                                     const std::string& y2) const {
    return angle(x, y1) * angle(x, y2);
}

EdgeCurvatureSuite edge_curvature_suite(
    const Graph& g, const std::map<std::string, Vec>& axes,
    const std::map<std::pair<std::string, std::string>, double>& lengths) {
    EdgeCurvatureSuite suite;
    auto length_of = [&lengths](const std::string& a, const std::string& b) {
        auto it = lengths.find(sorted_key(a, b));
        if (it == lengths.end()) {
            it = lengths.find(std::make_pair(b, a));
        }
        if (it == lengths.end()) {
            throw std::invalid_argument("no length recorded for edge " + a + " -- " + b);
        }
        return it->second;
    };
    for (const auto& [a, b] : g.edges()) {
        const auto ia = axes.find(a);
        const auto ib = axes.find(b);
        if (ia == axes.end() || ib == axes.end()) {
            throw std::invalid_argument("missing axis at an endpoint of " + a + " -- " + b);
        }
        const double cosine =
            ia->second.dot(ib->second) / (ia->second.norm() * ib->second.norm());
        const double angle = clamped_acos(cosine);
        const auto key = sorted_key(a, b);
        suite.theta[key] = angle;
        suite.normal[key] = angle / length_of(a, b);
    }
    for (const auto& x : g.vertices()) {
        double sum = 0.0;
        double sum_sq = 0.0;
        double sum_normal = 0.0;
        for (const auto& y : g.neighbors(x)) {
            const double angle = suite.theta.at(sorted_key(x, y));
            sum += angle;
            sum_sq += angle * angle;
            sum_normal += suite.normal.at(sorted_key(x, y));
        }
        const double n = static_cast<double>(g.degree(x));
        suite.mean_theta[x] = n > 0 ? sum / n : 0.0;
        suite.mean_normal[x] = n > 0 ? sum_normal / n : 0.0;
        suite.scalar[x] = sum * sum - sum_sq;
        for (const auto& y : g.neighbors(x)) {
            const double here = suite.theta.at(sorted_key(x, y));
            const double l = length_of(x, y);
            suite.ricci[{x, y}] = l * l * here * (sum - here);
        }
    }
    return suite;
}

std::map<std::string, Vec> framework_axes(const Framework& fw) {
    std::map<std::string, Vec> axes;
    for (const auto& x : fw.graph.vertices()) {
        Vec mean = Vec::Zero(fw.points.rows());
        for (const auto& y : fw.graph.neighbors(x)) {
            mean += fw.position(y) - fw.position(x);
        }
        const double norm = mean.norm();
        if (norm <= 1e-12) {
            throw std::domain_error("star axis undefined at vertex " + x);
        }
        axes[x] = mean / norm;
    }
    return axes;
}

EdgeCurvatureSuite framework_curvature(const Framework& fw) {
    std::map<std::pair<std::string, std::string>, double> lengths;
    for (const auto& [a, b] : fw.graph.edges()) {
        lengths[sorted_key(a, b)] = (fw.position(a) - fw.position(b)).norm();
    }
    return edge_curvature_suite(fw.graph, framework_axes(fw), lengths);
}

}  // namespace qde
