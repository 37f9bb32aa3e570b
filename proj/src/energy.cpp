#include "qde/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qde {
namespace {

constexpr double kPi = std::numbers::pi;

double clamp_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

// sigma_a + ... + sigma_b, 1-based inclusive.
double angle_sum(const std::vector<double>& sigma, int a, int b) {
    double total = 0.0;
    for (int k = a; k <= b; ++k) total += sigma[k - 1];
    return total;
}

struct RawChain {
    double s, r, t, T, base;  // base = M - 3/2 + sum cos + (r^2+t^2)/4
};

RawChain raw_chain(const std::vector<double>& sigma) {
    const int n = static_cast<int>(sigma.size());
    Complex sum_s = 1.0, sum_r = 1.0, sum_t = 0.0;
    double angle = 0.0, cos_sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        cos_sum += std::cos(sigma[j - 1]);
        angle += sigma[j - 1];
        const Complex e = std::polar(1.0, angle);
        sum_s += e;
        sum_t += e;
        if (j < n) sum_r += e;
    }
    if (n == 1) sum_r = 1.0;
    RawChain raw;
    raw.s = std::abs(sum_s);
    raw.r = std::abs(sum_r);
    raw.t = std::abs(sum_t);
    raw.T = 0.0;
    for (int j = 1; j <= n; ++j)
        raw.T += std::sin(angle_sum(sigma, 1, j)) + std::sin(angle_sum(sigma, j, n));
    raw.base = (n + 3) - 1.5 + cos_sum + (raw.r * raw.r + raw.t * raw.t) / 4;
    return raw;
}

// branch * sqrt(4-s^2)/(2s) * T, the square-root term of the closed form.
double root_term(const RawChain& raw) { return clamp_sqrt(4 - raw.s * raw.s) / (2 * raw.s) * raw.T; }

}  // namespace

double vertex_energy(const std::vector<Complex>& zs, double gamma) {
    if (zs.size() < 3) {
        throw std::invalid_argument("star energy needs at least three differences");
    }
    double norm2 = 0.0;
    Complex total = 0.0;
    for (const Complex& z : zs) {
        norm2 += std::norm(z);
        total += z;
    }
    if (norm2 == 0.0) return 0.0;
    if (gamma >= 1.0) {
        throw std::domain_error("star energy requires gamma < 1");
    }
    const double n = static_cast<double>(zs.size());
    return (n - gamma * (3 - 2 * gamma) * std::norm(total) / norm2) / (2 * (1 - gamma));
}

double corner_energy(const Complex& z1, const Complex& z2) {
    const double m1 = std::abs(z1), m2 = std::abs(z2);
    if (m1 == 0.0 || m2 == 0.0) return 0.0;
    // Exterior angle theta: the offsets enclose the interior angle pi - theta.
    return 1.0 - (z1 * std::conj(z2)).real() / (m1 * m2);
}

double total_energy(const Graph& g, const Field& phi, const GammaAssignment& gamma) {
    double total = 0.0;
    for (const auto& x : g.vertices()) {
        const auto& nb = g.neighbors(x);
        std::vector<Complex> zs;
        bool constant = true;
        for (const auto& y : nb) {
            zs.push_back(phi.at(y) - phi.at(x));
            if (std::abs(zs.back()) > 0.0) constant = false;
        }
        if (constant || nb.empty()) continue;
        if (nb.size() == 2) {
            total += corner_energy(zs[0], zs[1]);
        } else {
            total += vertex_energy(zs, gamma.at(x));
        }
    }
    return total;
}

ChainQuantities chain_quantities(const std::vector<double>& sigma, double tol) {
    if (sigma.empty()) {
        throw std::invalid_argument("a chain needs at least one free exterior angle");
    }
    const RawChain raw = raw_chain(sigma);
    if (raw.s > 2 + tol) {
        throw std::domain_error("chain does not close: s > 2");
    }
    ChainQuantities q;
    q.m = static_cast<int>(sigma.size()) + 3;
    q.s = raw.s;
    q.r = raw.r;
    q.t = raw.t;
    q.cos_theta2 = (raw.s * raw.s - 2) / 2;
    if (raw.s <= tol) {
        q.folded = true;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        q.cos_theta1_plus = q.cos_theta1_minus = nan;
        q.cos_theta3_plus = q.cos_theta3_minus = nan;
        // Signed symmetric average of the square-root term along the uniform
        // direction; the quotient T/s has a finite limit along any line.
        const double eps = 1e-6;
        std::vector<double> up = sigma, down = sigma;
        const double h = eps / std::sqrt(static_cast<double>(sigma.size()));
        for (std::size_t l = 0; l < sigma.size(); ++l) {
            up[l] += h;
            down[l] -= h;
        }
        RawChain plus = raw_chain(up), minus = raw_chain(down);
        if (plus.s < 1e-12 || minus.s < 1e-12) {  // direction tangent to the zero set
            up = sigma;
            down = sigma;
            up[0] += eps;
            down[0] -= eps;
            plus = raw_chain(up);
            minus = raw_chain(down);
        }
        const double limit = (root_term(plus) - root_term(minus)) / 2;
        q.energy_plus = raw.base + limit;
        q.energy_minus = raw.base - limit;
        return q;
    }
    auto corner = [&raw](double rr, int sign) {
        const double d = rr * rr - raw.s * raw.s - 1;
        return (sign * clamp_sqrt(4 - raw.s * raw.s) * clamp_sqrt(4 * raw.s * raw.s - d * d) +
                raw.s * d) /
               (4 * raw.s);
    };
    q.cos_theta1_plus = corner(raw.r, +1);
    q.cos_theta1_minus = corner(raw.r, -1);
    q.cos_theta3_plus = corner(raw.t, +1);
    q.cos_theta3_minus = corner(raw.t, -1);
    q.energy_plus = raw.base + root_term(raw);
    q.energy_minus = raw.base - root_term(raw);
    return q;
}

std::vector<double> chain_gradient(const std::vector<double>& sigma, int branch,
                                   double eps) {
    const int n = static_cast<int>(sigma.size());
    if (n == 0) throw std::invalid_argument("empty chain");
    const RawChain raw = raw_chain(sigma);
    if (raw.s <= eps || raw.s >= 2 - 1e-15) {
        throw std::domain_error("chain gradient is undefined at the chart boundary");
    }
    const double b = branch >= 0 ? 1.0 : -1.0;
    const double root = clamp_sqrt(4 - raw.s * raw.s);

    // Explicit first partial: dE/dsigma_1 = -sin sigma_1 + (r/2) dr/dsigma_1
    // - branch 2T/(s^2 sqrt(4-s^2)) ds/dsigma_1
    // + branch sqrt(4-s^2)/(2s) dT/dsigma_1   (dt/dsigma_1 = 0).
    double ds1 = 0.0, dr1 = 0.0, dT1 = std::cos(angle_sum(sigma, 1, n));
    for (int j = 1; j <= n; ++j) {
        const double sj = std::sin(angle_sum(sigma, 1, j));
        ds1 -= sj;
        if (j < n) dr1 -= sj;
        dT1 += std::cos(angle_sum(sigma, 1, j));
    }
    ds1 /= raw.s;
    dr1 /= (raw.r > 0 ? raw.r : 1.0);
    std::vector<double> grad(n);
    grad[0] = -std::sin(sigma[0]) + raw.r / 2 * dr1 - b * 2 * raw.T / (raw.s * raw.s * root) * ds1 +
              b * root / (2 * raw.s) * dT1;

    // Recursion in l for the remaining partials.
    for (int l = 2; l <= n; ++l) {
        double head = 0.0, tail = 0.0;
        for (int k = 1; k <= l - 1; ++k) head += std::sin(angle_sum(sigma, k, l - 1));
        for (int j = l; j <= n; ++j) tail += std::sin(angle_sum(sigma, l, j));
        grad[l - 1] = grad[l - 2] + std::sin(sigma[l - 2]) - std::sin(sigma[l - 1]) -
                      0.5 * std::sin(angle_sum(sigma, 1, l - 1)) +
                      0.5 * std::sin(angle_sum(sigma, l, n)) -
                      b * root / (2 * raw.s) *
                          (std::cos(angle_sum(sigma, 1, l - 1)) - std::cos(angle_sum(sigma, l, n))) +
                      (1 - b * 2 * raw.T / (raw.s * raw.s * raw.s * root)) * (head - tail);
    }
    return grad;
}

namespace {

double wrap_angle(double a) {
    a = std::remainder(a, 2 * kPi);
    if (a <= -kPi) a += 2 * kPi;
    return a;
}

double grad_norm(const std::vector<double>& g) {
    double n2 = 0.0;
    for (double v : g) n2 += v * v;
    return std::sqrt(n2);
}

}  // namespace

ChainFlow chain_flow(const std::vector<double>& sigma0, double step, int iters,
                     int direction, int branch) {
    const double eps = 1e-8;
    {
        const double s0 = raw_chain(sigma0).s;
        if (s0 <= eps || s0 >= 2) {
            throw std::domain_error("flow must start inside the chart 0 < s < 2");
        }
    }
    ChainFlow flow;
    const double dir = direction >= 0 ? 1.0 : -1.0;
    std::vector<double> sigma = sigma0;
    double energy = chain_quantities(sigma).energy(branch);
    flow.trajectory.push_back({sigma, energy});
    flow.stop_reason = "iterations";
    for (int it = 0; it < iters; ++it) {
        std::vector<double> grad;
        try {
            grad = chain_gradient(sigma, branch, eps);
        } catch (const std::domain_error&) {
            flow.stop_reason = "boundary";
            return flow;
        }
        if (grad_norm(grad) <= 1e-9) {
            flow.stop_reason = "gradient";
            return flow;
        }
        double h = step;
        bool accepted = false;
        for (int halving = 0; halving <= 20; ++halving, h /= 2) {
            std::vector<double> trial(sigma.size());
            for (std::size_t l = 0; l < sigma.size(); ++l)
                trial[l] = wrap_angle(sigma[l] + dir * h * grad[l]);
            const double s_trial = raw_chain(trial).s;
            if (s_trial <= eps || s_trial >= 2) continue;
            const double e_trial = chain_quantities(trial).energy(branch);
            if (dir * (e_trial - energy) > 0) {
                sigma = trial;
                energy = e_trial;
                flow.trajectory.push_back({sigma, energy});
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            flow.stop_reason = "step";
            return flow;
        }
    }
    return flow;
}

std::vector<Complex> chain_vertices(const std::vector<double>& sigma, int branch,
                                    double tol) {
    const ChainQuantities q = chain_quantities(sigma);
    const int m = q.m;
    const int n = m - 3;
    auto build = [&](double theta1, double theta2) {
        std::vector<Complex> dirs{1.0};
        double angle = 0.0;
        for (int j = 0; j < n; ++j) {
            angle += sigma[j];
            dirs.push_back(std::polar(1.0, angle));
        }
        dirs.push_back(std::polar(1.0, angle + theta1));
        dirs.push_back(std::polar(1.0, angle + theta1 + theta2));
        std::vector<Complex> verts{0.0};
        for (int k = 0; k + 1 < m; ++k) verts.push_back(verts.back() + dirs[k]);
        return std::pair{verts, verts.back() + dirs[m - 1]};
    };
    if (q.folded) {
        return build(kPi, kPi).first;
    }
    const double target = q.energy(branch);
    double cos_sum = 0.0;
    for (double a : sigma) cos_sum += std::cos(a);
    const double theta2_mag = std::acos(std::clamp(q.cos_theta2, -1.0, 1.0));
    // arccos near +-1 loses half the precision, so accept near-closing sign
    // assignments and polish theta1, theta2 against the closure equations.
    bool found = false;
    double best_theta1 = 0.0, best_theta2 = 0.0;
    for (double c1 : {q.cos_theta1_plus, q.cos_theta1_minus}) {
        for (double c3 : {q.cos_theta3_plus, q.cos_theta3_minus}) {
            if (found) break;
            if (std::abs(m + cos_sum + c1 + q.cos_theta2 + c3 - target) > 1e-6) continue;
            const double theta1_mag = std::acos(std::clamp(c1, -1.0, 1.0));
            for (int s1 : {+1, -1}) {
                for (int s2 : {+1, -1}) {
                    if (found) break;
                    const double gap = std::abs(build(s1 * theta1_mag, s2 * theta2_mag).second);
                    if (gap < 1e-5) {
                        found = true;
                        best_theta1 = s1 * theta1_mag;
                        best_theta2 = s2 * theta2_mag;
                    }
                }
            }
        }
    }
    if (!found) {
        throw std::domain_error("no closing sign assignment found for the chain");
    }
    double theta1 = best_theta1, theta2 = best_theta2;
    for (int iter = 0; iter < 20; ++iter) {
        const Complex endpoint = build(theta1, theta2).second;
        if (std::abs(endpoint) <= 1e-14) break;
        double angle = 0.0;
        for (double a : sigma) angle += a;
        const Complex u = std::polar(1.0, angle + theta1);
        const Complex v = u * std::polar(1.0, theta2);
        // Jacobian of the endpoint in (theta1, theta2): columns i(u+v), iv.
        const Complex c1 = Complex(0, 1) * (u + v), c2 = Complex(0, 1) * v;
        const double det = c1.real() * c2.imag() - c1.imag() * c2.real();
        if (std::abs(det) < 1e-12) break;
        theta1 -= (endpoint.real() * c2.imag() - endpoint.imag() * c2.real()) / det;
        theta2 -= (c1.real() * endpoint.imag() - c1.imag() * endpoint.real()) / det;
    }
    auto [verts, endpoint] = build(theta1, theta2);
    if (std::abs(endpoint) > tol) {
        throw std::domain_error("no closing sign assignment found for the chain");
    }
    return verts;
}

}  // namespace qde
