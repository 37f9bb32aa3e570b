#include "qde/modpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qde {

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // p < 2^31, so the product fits in 64 bits.
    return (a * b) % p;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("inv_mod: not invertible");
    return pow_mod(a, p - 2, p);
}

std::vector<std::uint64_t> word_primes(std::size_t count) {
    std::vector<std::uint64_t> out;
    auto is_prime = [](std::uint64_t n) {
        if (n % 2 == 0) return n == 2;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    };
    for (std::uint64_t n = (1ull << 31) - 1; out.size() < count; n -= 2)
        if (is_prime(n)) out.push_back(n);
    return out;
}

bool ModPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int e : terms_[0].e)
        if (e != 0) return false;
    return true;
}

const ModTerm& ModPoly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
}

void ModPoly::add_term(const Exponents& e, std::uint64_t c) {
    terms_.push_back({e, c});
}

void ModPoly::normalize(std::uint64_t p) {
    std::sort(terms_.begin(), terms_.end(),
              [](const ModTerm& a, const ModTerm& b) { return mono_less(b.e, a.e); });
    std::vector<ModTerm> out;
    for (auto& t : terms_) {
        t.c %= p;
        if (!out.empty() && out.back().e == t.e)
            out.back().c = add_mod(out.back().c, t.c, p);
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const ModTerm& t) { return t.c == 0; }),
              out.end());
    terms_ = std::move(out);
}

ModPoly ModPoly::monic(std::uint64_t p) const {
    ModPoly out = *this;
    if (terms_.empty()) return out;
    std::uint64_t inv = inv_mod(terms_.front().c, p);
    for (auto& t : out.terms_) t.c = mul_mod(t.c, inv, p);
    return out;
}

bool mod_image(const MultiPoly& f, std::uint64_t p, ModPoly& out) {
    out = ModPoly(f.nvars());
    for (const auto& t : f.terms()) {
        BigInt num = numerator(t.c) % BigInt(p);
        BigInt den = denominator(t.c) % BigInt(p);
        std::uint64_t d = static_cast<std::uint64_t>(den < 0 ? den + BigInt(p) : den);
        if (d == 0) return false;
        std::uint64_t n = static_cast<std::uint64_t>(num < 0 ? num + BigInt(p) : num);
        std::uint64_t c = mul_mod(n, inv_mod(d, p), p);
        if (c != 0) out.add_term(t.e, c);
    }
    out.normalize(p);
    return true;
}

ModPoly reduce_mod(const ModPoly& f, const std::vector<const ModPoly*>& basis,
                   std::uint64_t p) {
    struct OrderGreater {
        bool operator()(const Exponents& a, const Exponents& b) const {
            return mono_less(b, a);
        }
    };
    std::map<Exponents, std::uint64_t, OrderGreater> work;
    for (const auto& t : f.terms()) work[t.e] = t.c;
    ModPoly result(f.nvars());
    while (!work.empty()) {
        auto it = work.begin();
        Exponents e = it->first;
        std::uint64_t c = it->second;
        work.erase(it);
        if (c == 0) continue;
        const ModPoly* reducer = nullptr;
        for (const auto* g : basis)
            if (!g->is_zero() && divides(g->leading().e, e))
                if (!reducer || g->terms().size() < reducer->terms().size()) reducer = g;
        if (!reducer) {
            result.add_term(e, c);
            continue;
        }
        std::uint64_t factor = mul_mod(c, inv_mod(reducer->leading().c, p), p);
        Exponents shift = exp_sub(e, reducer->leading().e);
        bool first = true;
        for (const auto& t : reducer->terms()) {
            if (first) { first = false; continue; }
            auto& slot = work[exp_add(t.e, shift)];
            slot = sub_mod(slot, mul_mod(factor, t.c, p), p);
        }
    }
    result.normalize(p);
    return result;
}

ModPoly s_polynomial_mod(const ModPoly& f, const ModPoly& g, std::uint64_t p) {
    const ModTerm& lf = f.leading();
    const ModTerm& lg = g.leading();
    Exponents l = exp_lcm(lf.e, lg.e);
    Exponents sf = exp_sub(l, lf.e);
    Exponents sg = exp_sub(l, lg.e);
    std::uint64_t cf = inv_mod(lf.c, p);
    std::uint64_t cg = inv_mod(lg.c, p);
    ModPoly out(f.nvars());
    for (const auto& t : f.terms()) out.add_term(exp_add(t.e, sf), mul_mod(t.c, cf, p));
    for (const auto& t : g.terms())
        out.add_term(exp_add(t.e, sg), p - mul_mod(t.c, cg, p));
    out.normalize(p);
    return out;
}

namespace {

struct ModPair {
    std::size_t i, j;
    Exponents lcm;
};

bool coprime_exp(const Exponents& a, const Exponents& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0 && b[k] > 0) return false;
    return true;
}

}  // namespace

std::vector<ModPoly> buchberger_mod(const std::vector<ModPoly>& generators,
                                    std::uint64_t p) {
    // Same shape as the exact-rational version: Gebauer-Moeller pair update,
    // normal selection, final interreduction to the reduced monic basis.
    std::vector<ModPoly> store;
    std::vector<char> alive;
    std::vector<ModPair> pending;

    auto lead = [&](std::size_t i) -> const Exponents& { return store[i].leading().e; };

    auto insert = [&](ModPoly h) {
        std::size_t hi = store.size();
        const Exponents& lh = h.leading().e;
        std::vector<ModPair> cand;
        for (std::size_t g = 0; g < hi; ++g)
            if (alive[g]) cand.push_back({g, hi, exp_lcm(lead(g), lh)});
        std::vector<ModPair> kept;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            bool drop = false;
            if (!coprime_exp(lead(cand[a].i), lh)) {
                for (std::size_t b = a + 1; b < cand.size() && !drop; ++b)
                    if (divides(cand[b].lcm, cand[a].lcm)) drop = true;
                for (const auto& k : kept)
                    if (divides(k.lcm, cand[a].lcm)) { drop = true; break; }
            }
            if (!drop) kept.push_back(cand[a]);
        }
        std::vector<ModPair> survivors;
        for (const auto& q : pending) {
            if (!divides(lh, q.lcm) ||
                exp_lcm(lead(q.i), lh) == q.lcm ||
                exp_lcm(lead(q.j), lh) == q.lcm)
                survivors.push_back(q);
        }
        pending = std::move(survivors);
        for (auto& k : kept)
            if (!coprime_exp(lead(k.i), lh)) pending.push_back(std::move(k));
        for (std::size_t g = 0; g < hi; ++g)
            if (alive[g] && divides(lh, lead(g))) alive[g] = 0;
        store.push_back(std::move(h));
        alive.push_back(1);
    };

    auto current = [&]() {
        std::vector<const ModPoly*> g;
        for (std::size_t i = 0; i < store.size(); ++i)
            if (alive[i]) g.push_back(&store[i]);
        return g;
    };

    bool any = false;
    for (const auto& f : generators) {
        if (f.is_zero()) continue;
        any = true;
        insert(f.monic(p));
    }
    if (!any) throw std::invalid_argument("buchberger_mod: no nonzero generators");

    while (!pending.empty()) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pending.size(); ++k)
            if (mono_less(pending[k].lcm, pending[best].lcm)) best = k;
        ModPair pair = pending[best];
        pending.erase(pending.begin() + best);
        ModPoly s = reduce_mod(s_polynomial_mod(store[pair.i], store[pair.j], p),
                               current(), p);
        if (s.is_zero()) continue;
        if (s.is_constant()) {
            ModPoly one(s.nvars());
            one.add_term(Exponents(s.nvars(), 0), 1);
            return {one};
        }
        insert(s.monic(p));
    }

    std::vector<ModPoly> basis;
    for (std::size_t i = 0; i < store.size(); ++i)
        if (alive[i]) basis.push_back(store[i]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<const ModPoly*> others;
            others.reserve(basis.size() - 1);
            for (std::size_t j = 0; j < basis.size(); ++j)
                if (j != i && !basis[j].is_zero()) others.push_back(&basis[j]);
            if (others.empty()) continue;
            ModPoly r = reduce_mod(basis[i], others, p);
            bool same = r.terms().size() == basis[i].terms().size();
            for (std::size_t t = 0; same && t < r.terms().size(); ++t)
                same = r.terms()[t].e == basis[i].terms()[t].e &&
                       r.terms()[t].c == basis[i].terms()[t].c;
            if (!same) {
                basis[i] = r;
                changed = true;
            }
        }
        basis.erase(std::remove_if(basis.begin(), basis.end(),
                                   [](const ModPoly& q) { return q.is_zero(); }),
                    basis.end());
    }
    for (auto& q : basis) q = q.monic(p);
    std::sort(basis.begin(), basis.end(),
              [](const ModPoly& a, const ModPoly& b) {
                  return mono_less(a.leading().e, b.leading().e);
              });
    return basis;
}

}  // namespace qde
