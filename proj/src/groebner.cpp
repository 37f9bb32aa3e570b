#include "qde/groebner.hpp"

#include "qde/modpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qde {

bool GroebnerBasis::contains_one() const {
    for (const auto& p : polys)
        if (p.is_constant() && !p.is_zero()) return true;
    return false;
}

namespace {

struct Pair {
    std::size_t i, j;
    Exponents lcm;
};

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0 && b[k] > 0) return false;
    return true;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<MultiPoly>& generators) {
    // Buchberger's algorithm with the Gebauer-Moeller pair update (which
    // packages the two classical pair-pruning criteria soundly) and selection
    // of pairs by smallest lcm in the active monomial order.
    std::vector<MultiPoly> store;   // every element ever inserted
    std::vector<char> alive;        // member of the current basis G
    std::vector<Pair> pending;

    auto lead = [&](std::size_t i) -> const Exponents& { return store[i].leading().e; };

    auto insert = [&](MultiPoly h) {
        std::size_t hi = store.size();
        const Exponents& lh = h.leading().e;
        // New pairs (h, g), filtered among themselves: drop a candidate whose
        // lcm is a multiple of another candidate's lcm, except coprime ones,
        // which survive the filter but are never scheduled.
        std::vector<Pair> cand;
        for (std::size_t g = 0; g < hi; ++g)
            if (alive[g]) cand.push_back({g, hi, exp_lcm(lead(g), lh)});
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            bool drop = false;
            if (!coprime(lead(cand[a].i), lh)) {
                for (std::size_t b = a + 1; b < cand.size() && !drop; ++b)
                    if (divides(cand[b].lcm, cand[a].lcm)) drop = true;
                for (const auto& k : kept)
                    if (divides(k.lcm, cand[a].lcm)) { drop = true; break; }
            }
            if (!drop) kept.push_back(cand[a]);
        }
        // Old pairs made redundant by h.
        std::vector<Pair> survivors;
        for (const auto& p : pending) {
            if (!divides(lh, p.lcm) ||
                exp_lcm(lead(p.i), lh) == p.lcm ||
                exp_lcm(lead(p.j), lh) == p.lcm)
                survivors.push_back(p);
        }
        pending = std::move(survivors);
        for (auto& k : kept)
            if (!coprime(lead(k.i), lh)) pending.push_back(std::move(k));
        // Basis elements whose leading monomial h now covers leave the basis.
        for (std::size_t g = 0; g < hi; ++g)
            if (alive[g] && divides(lh, lead(g))) alive[g] = 0;
        store.push_back(std::move(h));
        alive.push_back(1);
    };

    auto current = [&]() {
        std::vector<const MultiPoly*> g;
        for (std::size_t i = 0; i < store.size(); ++i)
            if (alive[i]) g.push_back(&store[i]);
        return g;
    };

    bool any = false;
    for (const auto& f : generators) {
        if (f.is_zero()) continue;
        any = true;
        insert(f.primitive());
    }
    if (!any) throw std::invalid_argument("buchberger: no nonzero generators");

    while (!pending.empty()) {
        // Normal selection: smallest lcm in the monomial order.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k)
            if (mono_less(pending[k].lcm, pending[best].lcm)) best = k;
        Pair pair = pending[best];
        pending.erase(pending.begin() + best);

        MultiPoly s = reduce_scaled(s_polynomial(store[pair.i], store[pair.j]), current());
        if (s.is_zero()) continue;
        if (s.is_constant()) {
            GroebnerBasis unit;
            unit.polys.push_back(MultiPoly::constant(s.nvars(), BigRational(1)));
            return unit;
        }
        insert(s.primitive());
    }

    std::vector<MultiPoly> basis;
    for (std::size_t i = 0; i < store.size(); ++i)
        if (alive[i]) basis.push_back(store[i].primitive());
    // Interreduce to the unique reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<const MultiPoly*> others;
            others.reserve(basis.size() - 1);
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (j != i && !basis[j].is_zero()) others.push_back(&basis[j]);
            if (others.empty()) continue;
            // Elements are kept integer-primitive, so the scaled normal form
            // is directly comparable.
            MultiPoly r = reduce_scaled(basis[i], others);
            if (!(r == basis[i])) {
                basis[i] = r;
                changed = true;
            }
        }
        basis.erase(std::remove_if(basis.begin(), basis.end(),
                                   [](const MultiPoly& p) { return p.is_zero(); }),
                    basis.end());
    }

    GroebnerBasis out;
    for (auto& p : basis) out.polys.push_back(p.monic());
    std::sort(out.polys.begin(), out.polys.end(),
              [](const MultiPoly& a, const MultiPoly& b) {
                  return mono_less(a.leading().e, b.leading().e);
              });
    return out;
}

EquationSystem equation_system(const Graph& g, const std::string& anchor) {
    const auto& verts = g.vertices();
    if (verts.size() < 2) throw std::invalid_argument("equation_system: need two vertices");
    const std::string& base = verts.front();
    if (anchor == base || !g.has_vertex(anchor))
        throw std::invalid_argument("equation_system: bad anchor " + anchor);

    EquationSystem sys;
    std::map<std::string, int> var_of;
    for (const auto& v : verts) {
        if (v == base || v == anchor) continue;
        var_of[v] = static_cast<int>(sys.var_names.size());
        sys.var_names.push_back("z_" + v);
        sys.var_vertices.push_back(v);
    }
    sys.gamma_index = static_cast<int>(sys.var_names.size());
    sys.var_names.push_back("g");
    const int nvars = sys.gamma_index + 1;

    auto value_poly = [&](const std::string& v) {
        if (v == base) return MultiPoly::constant(nvars, BigRational(0));
        if (v == anchor) return MultiPoly::constant(nvars, BigRational(1));
        return MultiPoly::variable(nvars, var_of.at(v));
    };
    MultiPoly gamma = MultiPoly::variable(nvars, sys.gamma_index);

    for (const auto& x : verts) {
        const auto& nbrs = g.neighbors(x);
        if (nbrs.empty()) continue;
        MultiPoly zx = value_poly(x);
        MultiPoly linear(nvars), quadratic(nvars);
        for (const auto& y : nbrs) {
            MultiPoly diff = zx - value_poly(y);
            linear = linear + diff;
            quadratic = quadratic + diff * diff;
        }
        BigRational n(static_cast<long>(nbrs.size()));
        MultiPoly f = gamma * (linear * linear) - quadratic * n;
        if (!f.is_zero()) sys.polys.push_back(f.primitive());
    }
    return sys;
}

namespace {

MultiPoly from_unipoly(const UniPoly& p, int nvars, int var) {
    MultiPoly out(nvars);
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k) == 0) continue;
        Exponents e(nvars, 0);
        e[var] = k;
        out.add_term(e, p.coeff(k));
    }
    out.normalize();
    return out;
}

// Per-prime summary of the reduced basis of the ideal mod p.
struct AnchorImage {
    enum Kind { kBad, kUnit, kAbsent, kPoly };
    Kind kind = kBad;
    std::vector<std::uint64_t> coeffs;  // gamma-only element, monic, ascending
};

AnchorImage anchor_image(const std::vector<MultiPoly>& gens, int gamma_index,
                         std::uint64_t p) {
    AnchorImage out;
    std::vector<ModPoly> mods;
    for (const auto& f : gens) {
        ModPoly m;
        if (!mod_image(f, p, m)) return out;  // p divides a denominator
        if (!m.is_zero()) mods.push_back(std::move(m));
    }
    if (mods.empty()) return out;
    std::vector<ModPoly> basis = buchberger_mod(mods, p);
    for (const auto& b : basis)
        if (b.is_constant()) {
            out.kind = AnchorImage::kUnit;
            return out;
        }
    for (const auto& b : basis) {
        bool uni = true;
        for (const auto& t : b.terms())
            for (std::size_t v = 0; uni && v < t.e.size(); ++v)
                if (t.e[v] != 0 && static_cast<int>(v) != gamma_index) uni = false;
        if (!uni) continue;
        for (const auto& t : b.terms()) {
            std::size_t k = static_cast<std::size_t>(t.e[gamma_index]);
            if (k >= out.coeffs.size()) out.coeffs.resize(k + 1, 0);
            out.coeffs[k] = t.c;
        }
        out.kind = AnchorImage::kPoly;
        return out;
    }
    out.kind = AnchorImage::kAbsent;
    return out;
}

// Wang's rational reconstruction: the unique n/d with |n|, d <= sqrt(M/2)
// congruent to c mod M, when one exists.
std::optional<BigRational> rational_reconstruct(const BigInt& c, const BigInt& M) {
    BigInt r0 = M, r1 = c % M;
    if (r1 < 0) r1 += M;
    BigInt t0 = 0, t1 = 1;
    BigInt bound = boost::multiprecision::sqrt(BigInt(M / 2));
    while (r1 > bound) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        BigInt t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (t1 < 0) {
        t1 = -t1;
        r1 = -r1;
    }
    if (t1 > bound) return std::nullopt;
    BigInt a = r1 < 0 ? BigInt(-r1) : r1;
    if (boost::multiprecision::gcd(a, t1) != 1) return std::nullopt;
    return BigRational(r1, t1);
}

// The monic univariate-in-gamma element of the ideal's elimination part,
// assembled by Chinese remaindering its images modulo independent word-size
// primes until rational reconstruction stabilizes, then checked against one
// further prime.  Returns 1 for the unit ideal and nullopt when no
// univariate element exists.  Rationale: exact-rational basis computations
// drown in coefficient growth on the 6-vertex graphs, while per-prime runs
// stay word-sized; the reconstructed answer is confirmed by an independent
// prime and by the downstream numeric solution checks.
std::optional<UniPoly> anchor_polynomial_modular(const std::vector<MultiPoly>& gens,
                                                 int gamma_index) {
    static const std::vector<std::uint64_t> primes = word_primes(64);
    int unit_votes = 0, absent_votes = 0;
    std::vector<BigInt> residues;
    BigInt M = 1;
    std::optional<std::vector<BigRational>> prev;
    std::optional<std::vector<BigRational>> stable;
    for (std::uint64_t p : primes) {
        AnchorImage img = anchor_image(gens, gamma_index, p);
        if (img.kind == AnchorImage::kBad) continue;
        if (stable) {
            bool match = img.kind == AnchorImage::kPoly &&
                         img.coeffs.size() == stable->size();
            for (std::size_t k = 0; match && k < stable->size(); ++k) {
                const BigRational& c = (*stable)[k];
                BigInt num = numerator(c) % BigInt(p);
                if (num < 0) num += BigInt(p);
                std::uint64_t den = static_cast<std::uint64_t>(denominator(c) % BigInt(p));
                match = den != 0 &&
                        mul_mod(static_cast<std::uint64_t>(num), inv_mod(den, p), p) ==
                            img.coeffs[k];
            }
            if (!match) throw std::runtime_error("modular elimination verification failed");
            std::vector<BigRational> cs = *stable;
            return UniPoly(std::move(cs));
        }
        if (img.kind == AnchorImage::kUnit) {
            if (++unit_votes >= 3) return UniPoly::constant(BigRational(1));
            continue;
        }
        if (img.kind == AnchorImage::kAbsent) {
            if (++absent_votes >= 3) return std::nullopt;
            continue;
        }
        if (!residues.empty() && residues.size() != img.coeffs.size()) {
            // Degree disagreement marks an unlucky prime; start over from here.
            residues.clear();
            M = 1;
            prev.reset();
        }
        if (M == 1) {
            residues.assign(img.coeffs.begin(), img.coeffs.end());
            M = p;
        } else {
            std::uint64_t mp = static_cast<std::uint64_t>(M % BigInt(p));
            std::uint64_t inv = inv_mod(mp, p);
            for (std::size_t k = 0; k < residues.size(); ++k) {
                std::uint64_t rp = static_cast<std::uint64_t>(residues[k] % BigInt(p));
                std::uint64_t delta = mul_mod(sub_mod(img.coeffs[k], rp, p), inv, p);
                residues[k] += M * BigInt(delta);
            }
            M *= p;
        }
        std::vector<BigRational> rec;
        bool ok = true;
        for (const BigInt& r : residues) {
            auto q = rational_reconstruct(r, M);
            if (!q) {
                ok = false;
                break;
            }
            rec.push_back(*q);
        }
        if (ok && prev && rec == *prev) stable = rec;
        if (ok)
            prev = std::move(rec);
        else
            prev.reset();
    }
    throw std::runtime_error("modular elimination did not stabilize");
}

// Whether the ideal is proper, by agreement of per-prime basis computations.
bool proper_modular(const std::vector<MultiPoly>& gens, int gamma_index) {
    static const std::vector<std::uint64_t> primes = word_primes(64);
    int unit = 0, proper = 0;
    for (std::uint64_t p : primes) {
        AnchorImage img = anchor_image(gens, gamma_index, p);
        if (img.kind == AnchorImage::kBad) continue;
        if (img.kind == AnchorImage::kUnit)
            ++unit;
        else
            ++proper;
        if (unit + proper >= 3 && (unit == 0 || proper == 0)) return proper > 0;
        if (unit + proper >= 9) break;
    }
    return proper > unit;
}

}  // namespace

GammaPolynomial gamma_polynomial(const Graph& g) {
    if (!g.is_connected()) throw std::invalid_argument("gamma_polynomial: graph not connected");
    GammaPolynomial out;
    const auto& verts = g.vertices();
    UniPoly p = UniPoly::constant(BigRational(1));
    for (std::size_t i = 1; i < verts.size(); ++i) {
        EquationSystem sys = equation_system(g, verts[i]);
        // The gamma-only basis element generates the elimination ideal, which
        // does not depend on the monomial order; the block order keeps the
        // per-prime bases small.
        ScopedMonomialOrder ord(MonomialOrder::ElimDegree);
        auto p_ell = anchor_polynomial_modular(sys.polys, sys.gamma_index);
        out.anchors.push_back(verts[i]);
        if (!p_ell) {
            out.failed_anchors.push_back(verts[i]);
            out.per_anchor.push_back(UniPoly());
            continue;
        }
        out.per_anchor.push_back(p_ell->primitive());
        if (p_ell->degree() > 0) p = lcm(p, *p_ell);
    }
    out.p = p.primitive();
    return out;
}

bool spectrum_membership(const Graph& g, const UniPoly& annihilator) {
    if (annihilator.is_zero()) throw std::invalid_argument("zero annihilator");
    const auto& verts = g.vertices();
    for (std::size_t i = 1; i < verts.size(); ++i) {
        EquationSystem sys = equation_system(g, verts[i]);
        std::vector<MultiPoly> gens = sys.polys;
        gens.push_back(from_unipoly(annihilator.primitive(),
                                    static_cast<int>(sys.var_names.size()),
                                    sys.gamma_index));
        // Whether 1 lies in the ideal does not depend on the monomial order.
        ScopedMonomialOrder ord(MonomialOrder::ElimDegree);
        if (proper_modular(gens, sys.gamma_index)) return true;
    }
    return false;
}

std::vector<std::complex<double>> complex_roots(
    const std::vector<std::complex<double>>& coeffs_in) {
    using C = std::complex<double>;
    std::vector<C> coeffs = coeffs_in;
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() <= 1) return {};
    const int n = static_cast<int>(coeffs.size()) - 1;
    for (auto& c : coeffs) c /= coeffs_in[coeffs.size() - 1];
    std::vector<C> roots(n);
    // Durand-Kerner from a scattered start.
    C seed(0.4, 0.9);
    C acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        roots[i] = acc;
    }
    auto eval = [&](C x) {
        C v = coeffs[n];
        for (int k = n - 1; k >= 0; --k) v = v * x + coeffs[k];
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < n; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (std::abs(denom) == 0.0) denom = C(1e-18, 0);
            C delta = eval(roots[i]) / coeffs[n] / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14) break;
    }
    return roots;
}

namespace {
std::vector<Field> solve_states_impl(const Graph& g, double gamma,
                                     const UniPoly* annihilator, double tol,
                                     std::size_t max_branches);
}

std::vector<Field> solve_states(const Graph& g, double gamma, double tol,
                                std::size_t max_branches) {
    return solve_states_impl(g, gamma, nullptr, tol, max_branches);
}

std::vector<Field> solve_states(const Graph& g, double gamma,
                                const UniPoly& annihilator, double tol,
                                std::size_t max_branches) {
    return solve_states_impl(g, gamma, &annihilator, tol, max_branches);
}

namespace {

std::vector<Field> solve_states_impl(const Graph& g, double gamma,
                                     const UniPoly* annihilator, double tol,
                                     std::size_t max_branches) {
    using C = std::complex<double>;
    std::vector<Field> found;
    const auto& verts = g.vertices();
    for (std::size_t a = 1; a < verts.size() && found.empty(); ++a) {
        EquationSystem sys = equation_system(g, verts[a]);
        std::vector<MultiPoly> gens = sys.polys;
        if (annihilator)
            gens.push_back(from_unipoly(annihilator->primitive(),
                                        static_cast<int>(sys.var_names.size()),
                                        sys.gamma_index));
        GroebnerBasis basis = buchberger(gens);
        if (basis.contains_one()) continue;

        const int nvars = static_cast<int>(sys.var_names.size());
        // Partial assignments over (z variables..., g); g is pinned.
        std::vector<std::map<int, C>> branches{{{sys.gamma_index, C(gamma, 0)}}};
        for (int var = nvars - 2; var >= 0; --var) {
            std::vector<std::map<int, C>> next;
            for (const auto& assign : branches) {
                // Specialize basis elements involving no variable above `var`
                // to univariate polynomials in `var`.
                std::vector<C> uni;
                bool have = false;
                for (const auto& p : basis.polys) {
                    bool usable = true;
                    for (const auto& t : p.terms())
                        for (int v = 0; v < var; ++v)
                            if (t.e[v] != 0) usable = false;
                    if (!usable) continue;
                    std::vector<C> spec;
                    for (const auto& t : p.terms()) {
                        C c(to_double(t.c), 0.0);
                        for (int v = var + 1; v < nvars; ++v)
                            for (int k = 0; k < t.e[v]; ++k) c *= assign.at(v);
                        int deg = t.e[var];
                        if (deg >= static_cast<int>(spec.size())) spec.resize(deg + 1, C(0, 0));
                        spec[deg] += c;
                    }
                    while (!spec.empty() && std::abs(spec.back()) < 1e-10) spec.pop_back();
                    if (spec.size() > 1 && (!have || spec.size() < uni.size())) {
                        uni = spec;
                        have = true;
                    }
                }
                if (!have) {
                    // Variable unconstrained at this gamma: pick a generic value.
                    auto copy = assign;
                    copy[var] = C(0.5 + 0.25 * var, 0.125 * (var + 1));
                    next.push_back(std::move(copy));
                    continue;
                }
                for (C root : complex_roots(uni)) {
                    auto copy = assign;
                    copy[var] = root;
                    next.push_back(std::move(copy));
                    if (next.size() >= max_branches) break;
                }
            }
            branches = std::move(next);
            if (branches.size() >= max_branches) branches.resize(max_branches);
        }
        for (const auto& assign : branches) {
            Field phi;
            phi.set(verts.front(), C(0, 0));
            phi.set(verts[a], C(1, 0));
            for (std::size_t k = 0; k < sys.var_vertices.size(); ++k)
                phi.set(sys.var_vertices[k], assign.at(static_cast<int>(k)));
            auto report = verify_state(g, phi, GammaAssignment::constant(gamma), tol);
            if (report.pass) found.push_back(phi);
        }
    }
    return found;
}

}  // namespace

}  // namespace qde
