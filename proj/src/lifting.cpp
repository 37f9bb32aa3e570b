#include "qde/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qde {

namespace {

std::pair<std::string, std::string> edge_key(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct StarData {
    int n = 0;
    Vec alpha;
    Vec beta;
    double sum_abs2 = 0.0;
    Complex sum;
};

StarData star_data(const std::vector<Complex>& zs) {
    StarData d;
    d.n = static_cast<int>(zs.size());
    d.alpha.resize(d.n);
    d.beta.resize(d.n);
    for (int l = 0; l < d.n; ++l) {
        d.alpha(l) = zs[l].real();
        d.beta(l) = zs[l].imag();
        d.sum_abs2 += std::norm(zs[l]);
        d.sum += zs[l];
    }
    return d;
}

// Rows (alpha; beta; 1).
Mat system_matrix(const StarData& d) {
    Mat a(3, d.n);
    a.row(0) = d.alpha.transpose();
    a.row(1) = d.beta.transpose();
    a.row(2) = Vec::Ones(d.n).transpose();
    return a;
}

// Multiplies v by +-1 so that its first entry of significant size is positive.
void canonical_sign(Vec& v, double tol) {
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > tol * scale) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

// Orthonormal basis of the row space of A (dimension 2 or 3).
std::vector<Vec> row_space_basis(const Mat& a) {
    std::vector<Vec> basis;
    for (int r = 0; r < a.rows(); ++r) {
        Vec v = a.row(r).transpose();
        for (const Vec& b : basis) v -= b.dot(v) * b;
        if (v.norm() > 1e-9 * (a.row(r).norm() + 1.0)) basis.push_back(v.normalized());
    }
    return basis;
}

// Appends `count` mutually orthogonal unit vectors orthogonal to everything
// in `avoid`, chosen deterministically: standard basis directions first, then
// seeded Gaussian samples if the basis runs out of fresh directions.
std::vector<Vec> orthogonal_complement_vectors(std::vector<Vec> avoid, int count, int n,
                                               std::uint64_t seed) {
    std::vector<Vec> result;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    int attempts = 0;
    int next_axis = 0;
    while (static_cast<int>(result.size()) < count) {
        Vec v(n);
        if (next_axis < n) {
            v.setZero();
            v(next_axis++) = 1.0;
        } else {
            if (++attempts > 64 * count) throw std::runtime_error("complement exhausted");
            for (int i = 0; i < n; ++i) v(i) = normal(rng);
        }
        for (const Vec& b : avoid) v -= b.dot(v) * b;
        for (const Vec& b : result) v -= b.dot(v) * b;
        if (v.norm() < 1e-6) continue;
        v.normalize();
        result.push_back(v);
        avoid.push_back(v);
    }
    return result;
}

}  // namespace

LiftParams lift_params(const std::vector<Complex>& zs, double gamma, double tol) {
    const int n = static_cast<int>(zs.size());
    if (n < 2) throw std::invalid_argument("need at least two increments");
    if (gamma >= 1.0) throw std::domain_error("lift requires gamma < 1");
    StarData d = star_data(zs);
    if (d.sum_abs2 <= 0.0) throw std::invalid_argument("increments all vanish");
    Complex residual = (gamma / n) * d.sum * d.sum;
    for (const Complex& z : zs) residual -= z * z;
    if (std::abs(residual) > tol * std::max(1.0, d.sum_abs2))
        throw std::invalid_argument("increments do not satisfy the vertex equation");

    LiftParams p;
    p.rho = 0.5 * (d.sum_abs2 - (gamma / n) * std::norm(d.sum));
    p.sigma = gamma * p.rho / (1.0 - gamma);
    const double denom = std::sqrt(n * (p.sigma + p.rho));
    p.u1 = d.sum.real() / denom;
    p.u2 = d.sum.imag() / denom;
    const double indicator = n * d.sum_abs2 + (gamma - 2.0) * std::norm(d.sum);
    p.degenerate = std::abs(indicator) <=
                   tol * (n * d.sum_abs2 + 2.0 * std::norm(d.sum) + 1.0);
    return p;
}

Mat lift3(const std::vector<Complex>& zs, double gamma, int sign, bool regular,
          double tol) {
    const int n = static_cast<int>(zs.size());
    if (n < 3) throw std::invalid_argument("planar case: need degree at least three");
    LiftParams p = lift_params(zs, gamma, tol);
    StarData d = star_data(zs);
    Mat a = system_matrix(d);

    Vec third(n);
    if (!p.degenerate) {
        const double u3 = std::sqrt(std::max(0.0, 1.0 - p.u1 * p.u1 - p.u2 * p.u2));
        Mat aat = a * a.transpose();
        Vec b(3);
        b << p.sigma * p.u1 * u3, p.sigma * p.u2 * u3,
            std::sqrt(n * (p.sigma + p.rho)) * u3;
        third = a.transpose() * aat.fullPivLu().solve(b);
        if (regular) {
            Vec norms(n);
            for (int l = 0; l < n; ++l)
                norms(l) = std::sqrt(std::norm(zs[l]) + third(l) * third(l));
            if ((norms.array() - norms(0)).abs().maxCoeff() > 1e-7 * (norms(0) + 1.0))
                throw std::domain_error("no regular lift");
        }
        if (u3 <= tol) canonical_sign(third, tol);
    } else if (!regular) {
        std::vector<Vec> rows = row_space_basis(a);
        third = std::sqrt(p.rho) *
                orthogonal_complement_vectors(rows, 1, n, 0).front();
        canonical_sign(third, tol);
    } else {
        // Common column length r fixes the third-row magnitudes; search the
        // sign patterns for one annihilated by the system matrix.
        const double r2 = (p.rho + d.sum_abs2) / n;
        Vec mags(n);
        for (int l = 0; l < n; ++l) {
            const double m2 = r2 - std::norm(zs[l]);
            if (m2 < -1e-9 * (r2 + 1.0)) throw std::domain_error("no regular lift");
            mags(l) = std::sqrt(std::max(0.0, m2));
        }
        std::vector<Vec> found;
        const double scale = a.norm() * (mags.norm() + 1.0);
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t(1) << n); ++pattern) {
            Vec candidate(n);
            for (int l = 0; l < n; ++l)
                candidate(l) = (pattern >> l) & 1 ? -mags(l) : mags(l);
            if ((a * candidate).norm() > 1e-7 * scale) continue;
            canonical_sign(candidate, tol);
            bool fresh = true;
            for (const Vec& f : found)
                if ((f - candidate).norm() < 1e-9 * (mags.norm() + 1.0)) fresh = false;
            if (fresh) found.push_back(candidate);
        }
        if (found.empty()) throw std::domain_error("no regular lift");
        std::sort(found.begin(), found.end(), [](const Vec& x, const Vec& y) {
            for (int i = 0; i < x.size(); ++i)
                if (std::abs(x(i) - y(i)) > 1e-12) return x(i) > y(i);
            return false;
        });
        third = found.front();
    }
    if (sign < 0) third = -third;

    Mat w(3, n);
    w.row(0) = d.alpha.transpose();
    w.row(1) = d.beta.transpose();
    w.row(2) = third.transpose();
    return w;
}

Mat liftN(const std::vector<Complex>& zs, double gamma, int N,
          std::uint64_t basis_seed, int sign, double tol) {
    const int n = static_cast<int>(zs.size());
    if (N < 3) throw std::invalid_argument("ambient dimension below three");
    if (N > n) throw std::invalid_argument("ambient dimension exceeds the degree");
    LiftParams p = lift_params(zs, gamma, tol);
    StarData d = star_data(zs);
    Mat a = system_matrix(d);

    Mat x = Mat::Zero(n, N - 2);
    int needed = N - 2;
    if (!p.degenerate) {
        x.col(0) = lift3(zs, gamma, +1, false, tol).row(2).transpose();
        needed = N - 3;
    }
    std::vector<Vec> avoid = row_space_basis(a);
    std::vector<Vec> extra = orthogonal_complement_vectors(avoid, needed, n, basis_seed);
    for (int j = 0; j < needed; ++j) {
        Vec v = std::sqrt(p.rho) * extra[j];
        canonical_sign(v, tol);
        x.col(N - 2 - needed + j) = v;
    }
    if (sign < 0) x = -x;

    Mat w(N, n);
    w.row(0) = d.alpha.transpose();
    w.row(1) = d.beta.transpose();
    w.bottomRows(N - 2) = x.transpose();
    return w;
}

std::map<std::pair<std::string, std::string>, int> colour_edges(const Graph& g) {
    std::size_t max_degree = 0;
    for (const auto& v : g.vertices()) max_degree = std::max(max_degree, g.degree(v));
    const int k = static_cast<int>(max_degree) + 1;

    std::map<std::pair<std::string, std::string>, int> colour;
    auto colour_at = [&](const std::string& x, const std::string& y) {
        auto it = colour.find(edge_key(x, y));
        return it == colour.end() ? 0 : it->second;
    };
    auto is_free = [&](const std::string& x, int c) {
        for (const auto& y : g.neighbors(x))
            if (colour_at(x, y) == c) return false;
        return true;
    };
    auto free_colour = [&](const std::string& x) {
        for (int c = 1; c <= k; ++c)
            if (is_free(x, c)) return c;
        throw std::logic_error("no free colour");
    };

    for (const auto& [u, v] : g.edges()) {
        // Maximal fan around u starting at v: each next edge's colour is free
        // at the previous fan vertex.
        std::vector<std::string> fan{v};
        std::set<std::string> in_fan{v};
        bool grown = true;
        while (grown) {
            grown = false;
            for (const auto& w : g.neighbors(u)) {
                int c = colour_at(u, w);
                if (c == 0 || in_fan.count(w) || !is_free(fan.back(), c)) continue;
                fan.push_back(w);
                in_fan.insert(w);
                grown = true;
                break;
            }
        }
        const int c = free_colour(u);
        const int d = free_colour(fan.back());
        if (c != d) {
            // Swap colours along the alternating d/c path leaving u.
            std::string prev;
            std::string cur = u;
            int want = d;
            while (true) {
                std::string next;
                for (const auto& w : g.neighbors(cur)) {
                    if (w != prev && colour_at(cur, w) == want) {
                        next = w;
                        break;
                    }
                }
                if (next.empty()) break;
                colour[edge_key(cur, next)] = want == d ? c : d;
                prev = cur;
                cur = next;
                want = want == d ? c : d;
            }
        }
        // Shortest fan prefix that is still valid and whose tip has d free.
        int j = -1;
        for (int i = 0; i < static_cast<int>(fan.size()) && j < 0; ++i) {
            bool valid = true;
            for (int t = 0; t + 1 <= i && valid; ++t) {
                int cc = colour_at(u, fan[t + 1]);
                valid = cc != 0 && is_free(fan[t], cc);
            }
            if (valid && is_free(fan[i], d)) j = i;
        }
        if (j < 0) throw std::logic_error("colouring fan collapsed");
        for (int t = 0; t < j; ++t) colour[edge_key(u, fan[t])] = colour_at(u, fan[t + 1]);
        colour[edge_key(u, fan[j])] = d;
    }
    return colour;
}

std::vector<std::string> colour_ordered_neighbors(
    const Graph& g, const std::map<std::pair<std::string, std::string>, int>& colour,
    const std::string& x) {
    std::vector<std::string> order = g.neighbors(x);
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        return colour.at(edge_key(x, a)) < colour.at(edge_key(x, b));
    });
    return order;
}

int oriented_sign(const Mat& w, int volume_sign, double tol) {
    if (volume_sign != 1 && volume_sign != -1)
        throw std::invalid_argument("volume sign must be +1 or -1");
    const int n = static_cast<int>(w.cols());
    const double scale = std::pow(std::max(1.0, w.norm()), 3);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = j + 1; l < n; ++l) {
                Mat minor(3, 3);
                minor.col(0) = w.col(i);
                minor.col(1) = w.col(j);
                minor.col(2) = w.col(l);
                const double det = minor.determinant();
                if (std::abs(det) > tol * scale) return det * volume_sign > 0 ? +1 : -1;
            }
    throw std::domain_error("all minors vanish: orientation cannot fix the sign");
}

Mat lift3_oriented(const std::vector<Complex>& zs, double gamma, int volume_sign,
                   bool regular, double tol) {
    Mat w = lift3(zs, gamma, +1, regular, tol);
    if (oriented_sign(w, volume_sign, tol) < 0) w.row(2) = -w.row(2);
    return w;
}

Mat lift3_at(const Graph& g, const Field& phi, const GammaAssignment& gamma,
             const Orientation& orientation, const std::string& x, bool regular,
             double tol) {
    std::vector<Complex> zs;
    for (const auto& y : colour_ordered_neighbors(g, orientation.colour, x))
        zs.push_back(phi.at(y) - phi.at(x));
    return lift3_oriented(zs, gamma.at(x), orientation.volume.at(x), regular, tol);
}

double vertex_rho(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                  const std::string& x) {
    const double n = static_cast<double>(g.degree(x));
    double sum_abs2 = 0.0;
    Complex sum;
    for (const auto& y : g.neighbors(x)) {
        Complex z = phi.at(y) - phi.at(x);
        sum_abs2 += std::norm(z);
        sum += z;
    }
    return 0.5 * (sum_abs2 - (gamma.at(x) / n) * std::norm(sum));
}

double median_edge_length(const std::vector<Complex>& zs, double gamma, int N) {
    const int n = static_cast<int>(zs.size());
    if (gamma >= 1.0) throw std::domain_error("edge length requires gamma < 1");
    if (N < 3 || N > n) throw std::invalid_argument("need 3 <= N <= degree");
    double sum_abs2 = 0.0;
    Complex sum;
    for (const Complex& z : zs) {
        sum_abs2 += std::norm(z);
        sum += z;
    }
    const double rho = 0.5 * (sum_abs2 - (gamma / n) * std::norm(sum));
    const double r2 = (N + (1.0 - N) * gamma) * rho / (n * (1.0 - gamma));
    return std::sqrt(std::max(0.0, r2));
}

double median_edge_length(const Graph& g, const Field& phi,
                          const GammaAssignment& gamma, const std::string& x, int N) {
    if (gamma.at(x) >= 1.0) throw std::domain_error("edge length requires gamma < 1");
    std::vector<Complex> zs;
    for (const auto& y : g.neighbors(x)) zs.push_back(phi.at(y) - phi.at(x));
    if (zs.size() == 2) {
        // Planar fallback: the increment modulus itself.
        return std::sqrt(0.5 * (std::norm(zs[0]) + std::norm(zs[1])));
    }
    return median_edge_length(zs, gamma.at(x), N);
}

double edge_length(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                   const std::string& x, const std::string& y, int N) {
    if (!g.adjacent(x, y)) throw std::invalid_argument("vertices are not adjacent");
    return 0.5 * (median_edge_length(g, phi, gamma, x, N) +
                  median_edge_length(g, phi, gamma, y, N));
}

double derivative_norm2(const Graph& g, const Field& phi) {
    double total = 0.0;
    for (const auto& [a, b] : g.edges()) total += std::norm(phi.at(b) - phi.at(a));
    return total;
}

double absolute_median_edge_length(const Graph& g, const Field& phi,
                                   const GammaAssignment& gamma, const std::string& x,
                                   int N) {
    const double norm2 = derivative_norm2(g, phi);
    if (norm2 <= 0.0) throw std::domain_error("constant field has no absolute lengths");
    return median_edge_length(g, phi, gamma, x, N) / std::sqrt(norm2);
}

double absolute_edge_length(const Graph& g, const Field& phi,
                            const GammaAssignment& gamma, const std::string& x,
                            const std::string& y, int N) {
    return 0.5 * (absolute_median_edge_length(g, phi, gamma, x, N) +
                  absolute_median_edge_length(g, phi, gamma, y, N));
}

Collapsed collapse(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                   double tol) {
    double scale = 0.0;
    for (const auto& [a, b] : g.edges())
        scale = std::max(scale, std::abs(phi.at(b) - phi.at(a)));
    auto distinct = [&](const std::string& a, const std::string& b) {
        return std::abs(phi.at(b) - phi.at(a)) > tol * std::max(1.0, scale);
    };

    Collapsed result;
    for (const auto& v : g.vertices()) {
        bool keep = false;
        for (const auto& y : g.neighbors(v)) keep = keep || distinct(v, y);
        if (keep) {
            result.graph.add_vertex(v);
            result.field.set(v, phi.at(v));
        }
    }
    for (const auto& [a, b] : g.edges())
        if (distinct(a, b)) result.graph.add_edge(a, b);
    std::map<std::string, double> rescaled;
    for (const auto& v : result.graph.vertices())
        rescaled[v] = static_cast<double>(result.graph.degree(v)) * gamma.at(v) /
                      static_cast<double>(g.degree(v));
    result.gamma = GammaAssignment::table(std::move(rescaled));
    return result;
}

double path_distance(const Graph& g, const Field& phi, const GammaAssignment& gamma,
                     int N, const std::string& x, const std::string& y) {
    for (const auto& [a, b] : g.edges())
        if (std::abs(phi.at(b) - phi.at(a)) <= kDefaultTol)
            throw std::domain_error("graph is not collapsed with respect to the field");

    std::map<std::string, double> dist;
    using Entry = std::pair<double, std::string>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    dist[x] = 0.0;
    queue.push({0.0, x});
    std::map<std::string, double> radius;
    auto r = [&](const std::string& v) {
        auto it = radius.find(v);
        if (it == radius.end())
            it = radius.emplace(v, median_edge_length(g, phi, gamma, v, N)).first;
        return it->second;
    };
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v] + 1e-15) continue;
        if (v == y) return d;
        for (const auto& w : g.neighbors(v)) {
            const double nd = d + 0.5 * (r(v) + r(w));
            auto it = dist.find(w);
            if (it == dist.end() || nd < it->second - 1e-15) {
                dist[w] = nd;
                queue.push({nd, w});
            }
        }
    }
    throw std::domain_error("vertices are not connected");
}

EmbeddingBound embedding_bound(const Graph& g, const GammaAssignment& gamma) {
    std::size_t min_degree = std::numeric_limits<std::size_t>::max();
    for (const auto& v : g.vertices()) {
        if (gamma.at(v) >= 1.0)
            throw std::domain_error("bound requires gamma < 1 everywhere");
        min_degree = std::min(min_degree, g.degree(v));
    }
    if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
    EmbeddingBound bound;
    bound.min_degree = min_degree;
    std::ostringstream text;
    text << "no invariant embedding in R^N for N > " << min_degree;
    bound.verdict = text.str();
    return bound;
}

}  // namespace qde
