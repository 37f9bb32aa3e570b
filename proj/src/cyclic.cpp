#include "qde/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "qde/groebner.hpp"
#include "qde/multipoly.hpp"

namespace qde {

namespace {

constexpr double kPi = 3.14159265358979323846;

long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need order >= 3");
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex("c" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        g.add_edge("c" + std::to_string(i), "c" + std::to_string((i + 1) % n));
    return g;
}

Field cycle_field(const std::vector<Complex>& values) {
    Field phi;
    for (std::size_t i = 0; i < values.size(); ++i)
        phi.set("c" + std::to_string(i), values[i]);
    return phi;
}

std::pair<Complex, Complex> recurrence_options(Complex y_km2, Complex y_km1) {
    if (y_km2 == Complex(0, 0))
        throw std::invalid_argument("recurrence_options: zero increment");
    return {y_km1 * y_km1 / y_km2, y_km2};
}

namespace {

// Cyclic arrangement of increment powers: power k used counts[k] times,
// neighbours (including last-first) differing by exactly one.  Greedy from
// the highest power with backtracking; the theorem guarantees success.
std::optional<std::vector<int>> arrange_powers(std::vector<long> counts) {
    long total = std::accumulate(counts.begin(), counts.end(), 0L);
    std::vector<int> seq;
    seq.reserve(total);
    std::function<bool()> go = [&]() {
        if (static_cast<long>(seq.size()) == total)
            return std::abs(seq.front() - seq.back()) == 1;
        for (int pw = static_cast<int>(counts.size()) - 1; pw >= 0; --pw) {
            if (counts[pw] == 0) continue;
            if (!seq.empty() && std::abs(pw - seq.back()) != 1) continue;
            seq.push_back(pw);
            --counts[pw];
            if (go()) return true;
            seq.pop_back();
            ++counts[pw];
        }
        return false;
    };
    if (!go()) return std::nullopt;
    return seq;
}

// Eliminates x from {q(x), rel(x, g)} and returns the univariate-in-g
// member of the reduced basis: the exact algebraic relation gamma inherits
// from an algebraic increment or angle.
UniPoly eliminate_to_gamma(const UniPoly& q,
                           const std::function<MultiPoly(const MultiPoly&, const MultiPoly&)>& rel) {
    MultiPoly x = MultiPoly::variable(2, 0);
    MultiPoly g = MultiPoly::variable(2, 1);
    MultiPoly qm(2);
    for (int k = 0; k <= q.degree(); ++k) {
        if (q.coeff(k) == 0) continue;
        Exponents e{k, 0};
        qm.add_term(e, q.coeff(k));
    }
    qm.normalize();
    GroebnerBasis basis = buchberger({qm, rel(x, g)});
    for (const auto& p : basis.polys) {
        if (!p.univariate_in(1) || p.is_constant()) continue;
        std::vector<BigRational> coeffs;
        for (const auto& t : p.terms()) {
            int k = t.e[1];
            if (k >= static_cast<int>(coeffs.size())) coeffs.resize(k + 1, BigRational(0));
            coeffs[k] = t.c;
        }
        return UniPoly(std::move(coeffs)).primitive();
    }
    throw std::logic_error("eliminate_to_gamma: no univariate element");
}

// Exact form of a numeric gamma known to be a root of ann: rational value
// when a rational root matches, otherwise the square-free factor it roots.
void attach_exact(SpectrumEntry& entry, const UniPoly& ann) {
    for (const auto& r : real_roots(ann)) {
        if (std::abs(r.approx - entry.gamma) > 1e-7) continue;
        if (r.rational) {
            entry.exact = r.value;
            entry.gamma = to_double(r.value);
        } else {
            entry.annihilator = r.annihilator;
            entry.gamma = r.approx;
        }
        return;
    }
}

}  // namespace

CyclicSolution build_real_cyclic(const std::vector<long>& a_coeffs,
                                 std::size_t root_choice) {
    if (a_coeffs.empty()) throw std::invalid_argument("build_real_cyclic: empty polynomial");
    for (long a : a_coeffs)
        if (a <= 0) throw std::invalid_argument("build_real_cyclic: coefficients must be positive");

    // b = coefficients of (x+1) * a(x); also the increment multiplicities.
    std::vector<long> b(a_coeffs.size() + 1, 0);
    for (std::size_t k = 0; k < a_coeffs.size(); ++k) {
        b[k] += a_coeffs[k];
        b[k + 1] += a_coeffs[k];
    }
    std::vector<BigRational> pc(b.begin(), b.end());
    UniPoly p{std::move(pc)};

    auto roots = real_roots(p);
    if (roots.empty()) throw std::domain_error("build_real_cyclic: no real root");
    if (root_choice >= roots.size())
        throw std::out_of_range("build_real_cyclic: root index out of range");
    const RealRoot& root = roots[root_choice];

    auto word = arrange_powers(b);
    if (!word) throw std::logic_error("build_real_cyclic: no increment arrangement");

    CyclicSolution out;
    out.order = static_cast<int>(2 * std::accumulate(a_coeffs.begin(), a_coeffs.end(), 0L));
    out.kind = CyclicKind::Real;
    out.word = IncrementWord{*word, b};

    if (root.rational) {
        // Exact accumulation keeps integer examples exactly integral.
        BigRational acc(0);
        std::vector<BigRational> pow{BigRational(1)};
        for (std::size_t k = 1; k < b.size(); ++k) pow.push_back(pow.back() * root.value);
        for (int pw : *word) {
            out.values.emplace_back(to_double(acc), 0.0);
            acc += pow[pw];
        }
        BigRational y = root.value;
        out.gamma = to_double(BigRational(2) * (1 + y * y) / ((1 - y) * (1 - y)));
    } else {
        double acc = 0.0;
        for (int pw : *word) {
            out.values.emplace_back(acc, 0.0);
            acc += std::pow(root.approx, pw);
        }
        double y = root.approx;
        out.gamma = 2.0 * (1.0 + y * y) / ((1.0 - y) * (1.0 - y));
    }
    return out;
}

namespace {

// Closed equal-step walk turning by signs[j] * theta at step j; empty result
// when the walk does not close.
std::optional<std::vector<Complex>> closed_walk(int N, const std::vector<int>& signs,
                                                double theta) {
    double heading = 0.0;
    Complex pos(0, 0), sum(0, 0);
    std::vector<Complex> values;
    values.reserve(N);
    for (int j = 0; j < N; ++j) {
        values.push_back(pos);
        Complex step(std::cos(heading), std::sin(heading));
        pos += step;
        sum += step;
        heading += signs[j] * theta;
    }
    if (std::abs(sum) > 1e-9 * N) return std::nullopt;
    return values;
}

// Minimal polynomial of cos(2*pi*m/d) for reduced d <= 6; exact forms for
// larger denominators are not tabulated.
std::optional<UniPoly> cos_minimal_poly(long m, long d) {
    long g = gcd_long(m, d);
    m /= g;
    d /= g;
    m = ((m % d) + d) % d;
    auto up = [](std::vector<long> c) {
        std::vector<BigRational> v(c.begin(), c.end());
        return UniPoly(std::move(v));
    };
    switch (d) {
        case 1: return up({-1, 1});      // cos 0 = 1
        case 2: return up({1, 1});       // cos pi = -1
        case 3: return up({1, 2});      // cos 2pi/3 = -1/2
        case 4: return up({0, 1});       // cos pi/2 = 0
        case 5: return up({-1, 2, 4});   // 4c^2 + 2c - 1
        case 6: return up({-1, 2});      // cos pi/3 = 1/2
        default: return std::nullopt;
    }
}

void merge_entry(std::vector<SpectrumEntry>& out, SpectrumEntry entry) {
    for (auto& e : out) {
        if (std::abs(e.gamma - entry.gamma) <= 1e-9 * (1.0 + std::abs(e.gamma))) {
            // Prefer exact information and real witnesses.
            if (!e.exact && entry.exact) {
                e.exact = entry.exact;
                e.gamma = entry.gamma;
            }
            if (!e.annihilator && entry.annihilator) e.annihilator = entry.annihilator;
            if (e.witness.kind == CyclicKind::Complex && entry.witness.kind == CyclicKind::Real)
                e.witness = entry.witness;
            return;
        }
    }
    out.push_back(std::move(entry));
}

void compositions(long total, std::vector<long>& prefix,
                  const std::function<void(const std::vector<long>&)>& emit) {
    if (total == 0) {
        if (!prefix.empty()) emit(prefix);
        return;
    }
    for (long first = 1; first <= total; ++first) {
        prefix.push_back(first);
        compositions(total - first, prefix, emit);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<SpectrumEntry> enumerate_cyclic_spectrum(int N) {
    if (N < 3) throw std::invalid_argument("enumerate_cyclic_spectrum: need N >= 3");
    std::vector<SpectrumEntry> out;

    // Segment colourings: constant on two complementary arcs of length >= 2.
    if (N >= 4) {
        SpectrumEntry e;
        e.gamma = 2.0;
        e.exact = BigRational(2);
        e.witness.order = N;
        e.witness.kind = CyclicKind::Real;
        for (int j = 0; j < N; ++j)
            e.witness.values.emplace_back(j < N / 2 ? 0.0 : 1.0, 0.0);
        e.witness.gamma = 2.0;
        merge_entry(out, std::move(e));
    }

    // Real sequences: one per positive composition of N/2 and real root.
    if (N % 2 == 0) {
        std::vector<long> prefix;
        compositions(N / 2, prefix, [&](const std::vector<long>& a) {
            std::vector<BigRational> pc;
            {
                std::vector<long> b(a.size() + 1, 0);
                for (std::size_t k = 0; k < a.size(); ++k) {
                    b[k] += a[k];
                    b[k + 1] += a[k];
                }
                pc.assign(b.begin(), b.end());
            }
            auto roots = real_roots(UniPoly(std::move(pc)));
            for (std::size_t i = 0; i < roots.size(); ++i) {
                CyclicSolution sol = build_real_cyclic(a, i);
                SpectrumEntry e;
                e.gamma = sol.gamma;
                if (roots[i].rational) {
                    const BigRational& y = roots[i].value;
                    e.exact = BigRational(2) * (1 + y * y) / ((1 - y) * (1 - y));
                } else {
                    // gamma inherits algebraicity from the increment:
                    // eliminate x from q(x) and g*(1-x)^2 = 2*(1+x^2).
                    UniPoly ann = eliminate_to_gamma(
                        roots[i].annihilator, [](const MultiPoly& x, const MultiPoly& g) {
                            MultiPoly one = MultiPoly::constant(2, BigRational(1));
                            MultiPoly omx = one - x;
                            return g * omx * omx -
                                   (one + x * x) * MultiPoly::constant(2, BigRational(2));
                        });
                    attach_exact(e, ann);
                }
                e.witness = std::move(sol);
                merge_entry(out, std::move(e));
            }
        });
    }

    // Complex walks: k turns through +theta and N-k through -theta with
    // (k - l)*theta a multiple of 2*pi.  All sign placements are tried for
    // N <= 16; beyond that only the uniform (polygon/star) walks, which
    // already realize every angle with k = N.
    std::vector<std::vector<int>> sign_sets;
    if (N <= 16) {
        for (unsigned mask = 0; mask < (1u << N); ++mask) {
            std::vector<int> signs(N);
            for (int j = 0; j < N; ++j) signs[j] = (mask >> j) & 1 ? 1 : -1;
            sign_sets.push_back(std::move(signs));
        }
    } else {
        sign_sets.emplace_back(N, 1);
    }
    for (const auto& signs : sign_sets) {
        long k = std::count(signs.begin(), signs.end(), 1);
        long d = 2 * k - N;  // k - l
        if (d <= 0) continue;  // conjugate walks duplicate d > 0
        for (long m = 1; m <= N; ++m) {
            if (m % d == 0) continue;  // theta a full turn
            double theta = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(d);
            double c = std::cos(theta);
            if (std::abs(c - 1.0) < 1e-12) continue;  // theta = 0 mod 2pi
            auto values = closed_walk(N, signs, theta);
            if (!values) continue;
            SpectrumEntry e;
            e.gamma = 2.0 * c / (c - 1.0);
            if (auto q = cos_minimal_poly(m, d)) {
                // Exact gamma via elimination of c from q(c), g*(c-1) = 2c.
                UniPoly ann = eliminate_to_gamma(*q, [](const MultiPoly& x, const MultiPoly& g) {
                    MultiPoly one = MultiPoly::constant(2, BigRational(1));
                    return g * (x - one) - x * MultiPoly::constant(2, BigRational(2));
                });
                attach_exact(e, ann);
            }
            e.witness.order = N;
            e.witness.values = std::move(*values);
            e.witness.gamma = e.gamma;
            e.witness.theta = theta;
            bool real_vals = true;
            for (const auto& v : e.witness.values)
                if (std::abs(v.imag()) > 1e-9) real_vals = false;
            e.witness.kind = real_vals ? CyclicKind::Real : CyclicKind::Complex;
            merge_entry(out, std::move(e));
        }
    }

    std::sort(out.begin(), out.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.gamma < b.gamma; });
    return out;
}

}  // namespace qde
