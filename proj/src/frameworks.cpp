#include "qde/frameworks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace qde {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

Configuration make_configuration(const Mat& points, double tol) {
    const int d = static_cast<int>(points.rows());
    const int n = static_cast<int>(points.cols());
    require(d >= 1 && n >= 1, "configuration needs at least one point");
    Mat gram = points * points.transpose();
    double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
    double rho = gram.trace() / d;
    require(rho > tol, "configuration invariant must be positive");
    if ((gram - rho * Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol * scale)
        throw std::invalid_argument("points do not satisfy U U^t = rho I");
    Vec centroid = points.rowwise().sum();
    if (centroid.cwiseAbs().maxCoeff() > tol * std::max(1.0, std::sqrt(rho)))
        throw std::invalid_argument("configuration centroid is not zero");
    return Configuration{points, rho};
}

Configuration roots_of_unity(int n) {
    require(n >= 3, "need at least three roots of unity");
    Mat pts(2, n);
    for (int l = 0; l < n; ++l) {
        pts(0, l) = std::cos(2 * kPi * (l + 1) / n);
        pts(1, l) = std::sin(2 * kPi * (l + 1) / n);
    }
    return make_configuration(pts, 1e-9);
}

Configuration tetrahedron_configuration() {
    Mat pts(3, 4);
    pts << -1, -1, 1, 1,
           -1,  1, -1, 1,
           -1,  1, 1, -1;
    return make_configuration(pts);
}

Configuration cross_polytope_configuration(int dim) {
    require(dim >= 1, "cross-polytope needs dimension >= 1");
    Mat pts = Mat::Zero(dim, 2 * dim);
    for (int j = 0; j < dim; ++j) {
        pts(j, 2 * j) = 1;
        pts(j, 2 * j + 1) = -1;
    }
    return make_configuration(pts);
}

namespace {

// Columns from sign patterns (s, t) applied to a cyclic coordinate template.
void append_signed_pair_group(Mat& pts, int& col, double first, double second,
                              int slot_first, int slot_second) {
    for (int s : {1, -1})
        for (int t : {1, -1}) {
            Vec v = Vec::Zero(3);
            v(slot_first) = s * first;
            v(slot_second) = t * second;
            pts.col(col++) = v;
        }
}

}  // namespace

Configuration icosahedron_configuration(double lambda) {
    require(lambda != 0.0, "lambda must be non-zero");
    Mat pts(3, 12);
    int col = 0;
    append_signed_pair_group(pts, col, 1.0, lambda, 1, 2);
    append_signed_pair_group(pts, col, 1.0, lambda, 0, 1);  // (±1, ±lambda, 0)
    append_signed_pair_group(pts, col, lambda, 1.0, 0, 2);  // (±lambda, 0, ±1)
    return make_configuration(pts);
}

Configuration dodecahedron_configuration(double lambda) {
    require(lambda != 0.0, "lambda must be non-zero");
    Mat pts(3, 20);
    int col = 0;
    double inv = 1.0 / lambda;
    append_signed_pair_group(pts, col, inv, lambda, 1, 2);   // (0, ±1/l, ±l)
    append_signed_pair_group(pts, col, lambda, inv, 0, 2);   // (±l, 0, ±1/l)
    append_signed_pair_group(pts, col, inv, lambda, 0, 1);   // (±1/l, ±l, 0)
    for (int s : {1, -1})
        for (int t : {1, -1})
            for (int w : {1, -1}) pts.col(col++) = Vec{{double(s), double(t), double(w)}};
    return make_configuration(pts);
}

Configuration simplex_configuration(int n) {
    require(n >= 3, "inductive simplex construction starts in dimension 3");
    Configuration c = tetrahedron_configuration();
    while (c.dim() < n) {
        const int d = c.dim();       // current ambient dimension N-1
        const int big = d + 1;       // N of the induction step
        double sigma = c.points.col(0).norm();
        double axis = sigma / std::sqrt(double(big) * big - 1);
        Mat pts = Mat::Zero(d + 1, c.count() + 1);
        pts(0, 0) = -big * axis;
        for (int l = 0; l < c.count(); ++l) {
            pts(0, l + 1) = axis;
            pts.block(1, l + 1, d, 1) = c.points.col(l);
        }
        c = make_configuration(pts);
    }
    return c;
}

Configuration quad_configuration(double lambda, double mu) {
    require(std::abs(lambda * lambda + mu * mu - 2.0) <= 1e-9,
            "quad configuration needs lambda^2 + mu^2 = 2");
    Mat pts(2, 4);
    pts << -1, 1, -1, 1,
           lambda, mu, -lambda, -mu;
    return make_configuration(pts / std::sqrt(2.0));
}

Configuration extend_with_balancing_vertex(const Configuration& c) {
    const int d = c.dim();
    const int n = c.count();
    double axis = std::sqrt(c.rho / (double(n) * (n + 1)));
    Mat pts = Mat::Zero(d + 1, n + 1);
    pts.block(0, 0, d, n) = c.points;
    pts.row(d).head(n).setConstant(axis);
    pts(d, n) = -n * axis;
    return make_configuration(pts);
}

Configuration extend_with_axis_pair(const Configuration& c) {
    const int d = c.dim();
    const int n = c.count();
    double b = std::sqrt(c.rho / 2.0);
    Mat pts = Mat::Zero(d + 1, n + 2);
    pts.block(0, 0, d, n) = c.points;
    pts(d, n) = b;
    pts(d, n + 1) = -b;
    return make_configuration(pts);
}

StarInvariants star_invariants(const Mat& w, double tol) {
    const int dim = static_cast<int>(w.rows());
    const int n = static_cast<int>(w.cols());
    if (dim < 2 || n < dim) throw std::domain_error("not a configured star");
    Mat gram = w * w.transpose();
    double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
    Vec sum = w.rowwise().sum();
    if (sum.norm() <= tol * std::sqrt(scale)) throw std::domain_error("not a configured star");
    Vec u = sum.normalized();
    double on_axis = u.dot(gram * u);
    double rho = (gram.trace() - on_axis) / (dim - 1);
    double sigma = on_axis - rho;
    if (rho <= 0.0 || sigma + rho <= 0.0) throw std::domain_error("not a configured star");
    Mat residual = gram - rho * Mat::Identity(dim, dim) - sigma * u * u.transpose();
    if (residual.cwiseAbs().maxCoeff() > tol * scale)
        throw std::domain_error("not a configured star");
    if ((sum - std::sqrt(n * (sigma + rho)) * u).norm() > tol * std::sqrt(scale) * n)
        throw std::domain_error("not a configured star");
    return StarInvariants{rho, sigma, u};
}

Mat random_orthogonal(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat sample(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) sample(i, j) = normal(rng);
    Eigen::HouseholderQR<Mat> qr(sample);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    return q;
}

std::vector<Complex> project_with_transform(const Mat& points, const Mat& a) {
    const int dim = static_cast<int>(points.rows());
    require(a.rows() == dim && a.cols() == dim, "transform dimension mismatch");
    if ((a.transpose() * a - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("transform is not orthogonal");
    Mat moved = a * points;
    std::vector<Complex> zs;
    zs.reserve(points.cols());
    for (int l = 0; l < points.cols(); ++l)
        zs.emplace_back(moved(0, l), dim >= 2 ? moved(1, l) : 0.0);
    return zs;
}

double gamma_of_projection(const std::vector<Complex>& zs, double tol) {
    Complex sum = 0, squares = 0;
    double scale = 1.0;
    for (Complex z : zs) {
        sum += z;
        squares += z * z;
        scale = std::max(scale, std::abs(z));
    }
    if (std::abs(sum) <= tol * scale)
        throw std::domain_error("projection has vanishing vertex sum");
    Complex gamma = double(zs.size()) * squares / (sum * sum);
    if (std::abs(gamma.imag()) > 1e-7 * std::max(1.0, std::abs(gamma)))
        throw std::domain_error("projection gamma is not real");
    return gamma.real();
}

Vec Framework::position(const std::string& id) const {
    const auto& names = graph.vertices();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == id) return points.col(static_cast<int>(i));
    throw std::out_of_range("unknown vertex: " + id);
}

Framework make_framework(const std::vector<std::string>& names, const Mat& points,
                         const std::vector<std::pair<int, int>>& edges) {
    require(static_cast<int>(names.size()) == points.cols(),
            "one position per vertex required");
    Framework fw;
    fw.points = points;
    for (const auto& name : names) fw.graph.add_vertex(name);
    for (auto [i, j] : edges) fw.graph.add_edge(names.at(i), names.at(j));
    return fw;
}

Framework regular_polygon_framework(int n) {
    require(n >= 3, "polygon needs at least three vertices");
    std::vector<std::string> names;
    Mat pts(2, n);
    std::vector<std::pair<int, int>> edges;
    for (int l = 0; l < n; ++l) {
        names.push_back("p" + std::to_string(l));
        pts(0, l) = std::cos(2 * kPi * l / n);
        pts(1, l) = std::sin(2 * kPi * l / n);
        edges.emplace_back(l, (l + 1) % n);
    }
    return make_framework(names, pts, edges);
}

Framework tetrahedron_framework() {
    Mat pts = tetrahedron_configuration().points;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) edges.emplace_back(i, j);
    return make_framework({"t0", "t1", "t2", "t3"}, pts, edges);
}

Framework octahedron_framework() {
    Mat pts = cross_polytope_configuration(3).points;
    std::vector<std::string> names;
    for (int i = 0; i < 6; ++i) names.push_back("o" + std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (pts.col(i).dot(pts.col(j)) > -1 + 1e-9) edges.emplace_back(i, j);
    return make_framework(names, pts, edges);
}

Framework cube_framework() {
    Mat pts(3, 8);
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 8; ++i) {
        names.push_back("c" + std::to_string(i));
        pts.col(i) = Vec{{i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0}};
    }
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if ((pts.col(i) - pts.col(j)).squaredNorm() == 4.0) edges.emplace_back(i, j);
    return make_framework(names, pts, edges);
}

Field projected_field(const Framework& fw, const Mat& a) {
    auto zs = project_with_transform(fw.points, a);
    Field phi;
    const auto& names = fw.graph.vertices();
    for (std::size_t i = 0; i < names.size(); ++i) phi.set(names[i], zs[i]);
    return phi;
}

namespace {

// Complex per-vertex gamma; vertices with vanishing mean difference omitted.
std::map<std::string, Complex> framework_gamma_complex(const Framework& fw, const Mat& a) {
    Field phi = projected_field(fw, a);
    std::map<std::string, Complex> table;
    for (const auto& x : fw.graph.vertices()) {
        Complex sum = 0, squares = 0;
        double scale = 1.0;
        for (const auto& y : fw.graph.neighbors(x)) {
            Complex diff = phi.at(y) - phi.at(x);
            sum += diff;
            squares += diff * diff;
            scale = std::max(scale, std::abs(diff));
        }
        if (std::abs(sum) <= 1e-8 * scale) continue;  // mean difference vanishes
        table[x] = double(fw.graph.degree(x)) * squares / (sum * sum);
    }
    return table;
}

}  // namespace

std::map<std::string, double> framework_gamma(const Framework& fw, const Mat& a,
                                              double tol) {
    std::map<std::string, double> table;
    for (const auto& [x, gamma] : framework_gamma_complex(fw, a))
        if (std::abs(gamma.imag()) <= tol * std::max(1.0, std::abs(gamma)))
            table[x] = gamma.real();
    return table;
}

namespace {

// Swaps the last coordinate into the projection plane; used to read gamma at
// vertices whose star is symmetric about the plane of the identity projection.
Mat fallback_transform(int dim) {
    Mat a = Mat::Identity(dim, dim);
    if (dim >= 3) {
        a(1, 1) = 0;
        a(dim - 1, dim - 1) = 0;
        a(1, dim - 1) = 1;
        a(dim - 1, 1) = 1;
    }
    return a;
}

std::map<std::string, double> framework_gamma_full(const Framework& fw) {
    auto table = framework_gamma(fw, Mat::Identity(fw.points.rows(), fw.points.rows()));
    auto patch = framework_gamma(fw, fallback_transform(static_cast<int>(fw.points.rows())));
    for (const auto& [name, value] : patch) table.emplace(name, value);
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    while (table.size() < fw.graph.vertex_count() && seed < 0x9e3779b97f4a7c15ull + 8) {
        auto more = framework_gamma(
            fw, random_orthogonal(static_cast<int>(fw.points.rows()), seed++));
        for (const auto& [name, value] : more) table.emplace(name, value);
    }
    return table;
}

}  // namespace

DoubleCone double_cone(const Framework& polytope, std::optional<double> height_override) {
    const int dim = static_cast<int>(polytope.points.rows());
    const auto& names = polytope.graph.vertices();
    require(!names.empty(), "empty framework");

    // Vertex-figure configuration invariant at the first vertex.
    Vec x = polytope.points.col(0);
    const auto& nbrs = polytope.graph.neighbors(names[0]);
    require(nbrs.size() >= 2, "vertex figure needs at least two neighbours");
    Mat rel(dim, static_cast<int>(nbrs.size()));
    for (std::size_t l = 0; l < nbrs.size(); ++l)
        rel.col(static_cast<int>(l)) = polytope.position(nbrs[l]) - x;
    Vec mean = rel.rowwise().mean();
    require(mean.norm() > 1e-12, "vertex star has no axis");
    Vec axis = mean.normalized();
    double rho_vf = 0.0;
    for (int l = 0; l < rel.cols(); ++l) {
        Vec v = rel.col(l) - rel.col(l).dot(axis) * axis;
        rho_vf += v.squaredNorm();
    }
    rho_vf /= (dim == 1 ? 1 : dim - 1);
    require(rho_vf > 1e-12, "degenerate vertex figure");

    double b = height_override.value_or(std::sqrt(rho_vf / 2.0));
    const int n = static_cast<int>(names.size());
    Vec centre = polytope.points.rowwise().mean();

    Mat pts = Mat::Zero(dim + 1, n + 2);
    pts.block(0, 0, dim, n) = polytope.points;
    pts.block(0, n, dim, 1) = centre;
    pts.block(0, n + 1, dim, 1) = centre;
    pts(dim, n) = b;
    pts(dim, n + 1) = -b;

    std::vector<std::string> all_names(names.begin(), names.end());
    all_names.push_back("apex+");
    all_names.push_back("apex-");
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : polytope.graph.edges()) {
        int iu = int(std::find(names.begin(), names.end(), u) - names.begin());
        int iv = int(std::find(names.begin(), names.end(), v) - names.begin());
        edges.emplace_back(iu, iv);
    }
    for (int l = 0; l < n; ++l) {
        edges.emplace_back(l, n);
        edges.emplace_back(l, n + 1);
    }

    DoubleCone cone;
    cone.framework = make_framework(all_names, pts, edges);
    cone.height = b;
    auto table = framework_gamma_full(cone.framework);
    cone.gamma_lat = table.at(names[0]);
    cone.gamma_apex = table.at("apex+");
    return cone;
}

DoubleCone complete_double_cone(const Configuration& c, bool close_apexes) {
    const int dim = c.dim();
    const int n = c.count();
    double b = std::sqrt(c.rho / 2.0);
    Mat pts = Mat::Zero(dim + 1, n + 2);
    pts.block(0, 0, dim, n) = c.points;
    pts(dim, n) = b;
    pts(dim, n + 1) = -b;
    std::vector<std::string> names;
    for (int l = 0; l < n; ++l) names.push_back("v" + std::to_string(l));
    names.push_back("apex+");
    names.push_back("apex-");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    for (int l = 0; l < n; ++l) {
        edges.emplace_back(l, n);
        edges.emplace_back(l, n + 1);
    }
    if (close_apexes) edges.emplace_back(n, n + 1);

    DoubleCone cone;
    cone.framework = make_framework(names, pts, edges);
    cone.height = b;
    cone.planar_special = (n == 2);
    auto table = framework_gamma_full(cone.framework);
    cone.gamma_lat = table.at("v0");
    cone.gamma_apex = table.at("apex+");
    return cone;
}

double extend_star(int n, double b, double gamma, double x) {
    require(n >= 1 && b > 0, "star needs external vertices and a non-trivial axis");
    if (std::abs(x + n * b) <= 1e-12 * std::max(1.0, n * b))
        throw std::domain_error("extension at the harmonic pole x = -n b");
    return (n + 1) * (x * x + n * b * b * gamma) / ((x + n * b) * (x + n * b));
}

double extend_star(const Mat& w, double x) {
    const int dim = static_cast<int>(w.rows());
    const int n = static_cast<int>(w.cols());
    Vec mean = w.rowwise().mean();
    double b = mean.norm();
    require(b > 1e-12, "star has no axis");
    // Rotate the axis into the projection plane to read off gamma.
    Mat q = Eigen::HouseholderQR<Mat>(Mat(mean.normalized())).householderQ();
    Mat basis(dim, dim);
    basis.col(0) = mean.normalized();
    basis.rightCols(dim - 1) = q.rightCols(dim - 1);
    double gamma = gamma_of_projection(project_with_transform(w, basis.transpose()));
    return extend_star(n, b, gamma, x);
}

ProbeReport invariance_probe(const Framework& fw, std::size_t trials, std::uint64_t seed) {
    require(trials >= 1, "at least one trial required");
    const int dim = static_cast<int>(fw.points.rows());
    auto baseline = framework_gamma_full(fw);
    ProbeReport report;
    report.trials = trials;
    std::set<std::string> degenerate;
    for (const auto& name : fw.graph.vertices())
        if (!baseline.count(name)) degenerate.insert(name);
    for (std::size_t t = 0; t < trials; ++t) {
        Mat a = random_orthogonal(dim, seed + t);
        auto table = framework_gamma_complex(fw, a);
        for (const auto& [name, value] : baseline) {
            auto it = table.find(name);
            if (it == table.end()) {
                degenerate.insert(name);
                continue;
            }
            // A non-real gamma counts as deviation through its imaginary part.
            report.max_deviation = std::max(report.max_deviation,
                                            std::abs(it->second - Complex(value, 0.0)));
        }
    }
    report.degenerate.assign(degenerate.begin(), degenerate.end());
    return report;
}

namespace {

std::vector<double> real_quadratic_roots(double a2, double a1, double a0) {
    double disc = a1 * a1 - 4 * a2 * a0;
    if (disc < 0) return {};
    double root = std::sqrt(disc);
    std::vector<double> out{(-a1 + root) / (2 * a2), (-a1 - root) / (2 * a2)};
    if (out[0] < out[1]) std::swap(out[0], out[1]);
    if (disc == 0) out.pop_back();
    return out;
}

double polygon_lateral_gamma(int n) {
    double c = std::cos(2 * kPi / n);
    return 2 * (1 - 2 * c + 2 * c * c) / ((2 - c) * (2 - c));
}

}  // namespace

std::vector<double> stack_cones_offset(int n) {
    require(n >= 3, "cone stacking needs a polygon");
    double s = std::sin(2 * kPi / n);
    double gl = polygon_lateral_gamma(n);
    // (n+1)(x^2 + n sin^2 - n/2) = gamma_lat (x + n sin)^2
    double a2 = (n + 1) - gl;
    double a1 = -2 * gl * n * s;
    double a0 = (n + 1) * (n * s * s - n / 2.0) - gl * n * n * s * s;
    return real_quadratic_roots(a2, a1, a0);
}

BisectedLayers bisected_cone_layers(Tiling tiling, std::optional<double> d_override) {
    int p = 0;
    switch (tiling) {
        case Tiling::SquareOctagon: p = 4; break;
        case Tiling::TriangleDodecagon: p = 3; break;
        case Tiling::Hexagon: p = 6; break;
    }
    const int n = 2;  // vertex-figure size of a polygon
    double a = 1.0;
    double c = 2 * std::sin(kPi / p) * std::sin(kPi / p);
    double rho = 2 * std::sin(2 * kPi / p) * std::sin(2 * kPi / p);
    double d = d_override.value_or(2 * std::sin(kPi / p));  // polygon edge length

    double denom = n * c + 2 * a - d;
    if (std::abs(denom) <= 1e-12)
        throw std::domain_error("bisecting vertex sits at the lateral pole");
    double gl = (n + 3) * (n * c * c + 2 * a * a + d * d - rho) / (denom * denom);

    const int m = p;
    double b = std::sqrt(rho / 2.0);
    double ga = (m * rho - 2 * (m / 2.0)) / (m * rho);  // apex gamma, rho_P = m/2
    // (m+1)(x^2 + m b^2 ga) = gl (x - m b)^2, x measured towards the far apex
    double a2 = (m + 1) - gl;
    double a1 = 2 * gl * m * b;
    double a0 = (m + 1) * m * b * b * ga - gl * m * m * b * b;
    auto roots = real_quadratic_roots(a2, a1, a0);
    if (roots.empty()) throw std::domain_error("no real layer distance");
    return BisectedLayers{gl, roots};
}

}  // namespace qde
