#include "qde/multipoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qde {

bool lex_less(const Exponents& a, const Exponents& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {
MonomialOrder g_order = MonomialOrder::Lex;
}

MonomialOrder monomial_order() { return g_order; }

MonomialOrder set_monomial_order(MonomialOrder m) {
    MonomialOrder prev = g_order;
    g_order = m;
    return prev;
}

bool mono_less(const Exponents& a, const Exponents& b) {
    if (g_order == MonomialOrder::Lex) return lex_less(a, b);
    // ElimDegree: graded reverse-lex on the leading block, then the last var.
    const std::size_t n = a.size();
    if (n < 2) return lex_less(a, b);
    int da = 0, db = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da < db;
    for (std::size_t i = n - 1; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
    return a[n - 1] < b[n - 1];
}

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents exp_lcm(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

Exponents exp_sub(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Exponents exp_add(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

MultiPoly MultiPoly::constant(int nvars, const BigRational& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.push_back({Exponents(nvars, 0), c});
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
    MultiPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.terms_.push_back({std::move(e), BigRational(1)});
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int e : terms_[0].e)
        if (e != 0) return false;
    return true;
}

const Term& MultiPoly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
}

void MultiPoly::add_term(const Exponents& e, const BigRational& c) {
    terms_.push_back({e, c});
}

void MultiPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return mono_less(b.e, a.e); });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().e == t.e)
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.c == 0; }),
              out.end());
    terms_ = std::move(out);
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly out(nvars_);
    out.terms_.reserve(terms_.size() + o.terms_.size());
    // Merge two descending-sorted term lists.
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && mono_less(o.terms_[j].e, terms_[i].e))) {
            out.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || mono_less(terms_[i].e, o.terms_[j].e)) {
            out.terms_.push_back(o.terms_[j++]);
        } else {
            BigRational c = terms_[i].c + o.terms_[j].c;
            if (c != 0) out.terms_.push_back({terms_[i].e, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    return *this + o * BigRational(-1);
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly out(nvars_);
    for (const auto& t : o.terms_) out = out + times_term(t.e, t.c);
    return out;
}

MultiPoly MultiPoly::times_term(const Exponents& e, const BigRational& c) const {
    MultiPoly out(nvars_);
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({exp_add(t.e, e), t.c * c});
    return out;
}

MultiPoly MultiPoly::operator*(const BigRational& c) const {
    MultiPoly out(nvars_);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.c *= c;
    return out;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
    return true;
}

MultiPoly MultiPoly::primitive() const {
    if (terms_.empty()) return *this;
    BigInt den_lcm = 1;
    auto gcd_int = [](BigInt a, BigInt b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) { BigInt t = a % b; a = b; b = t; }
        return a;
    };
    for (const auto& t : terms_) {
        BigInt d = denominator(t.c);
        den_lcm = den_lcm / gcd_int(den_lcm, d) * d;
    }
    BigInt content = 0;
    for (const auto& t : terms_)
        content = gcd_int(content, numerator(t.c) * (den_lcm / denominator(t.c)));
    if (content == 0) content = 1;
    BigRational scale = BigRational(den_lcm, content);
    if (terms_.front().c < 0) scale = -scale;
    return *this * scale;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return *this;
    return *this * (BigRational(1) / terms_.front().c);
}

bool MultiPoly::univariate_in(int var) const {
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < t.e.size(); ++i)
            if (t.e[i] != 0 && static_cast<int>(i) != var) return false;
    return true;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        BigRational mag = t.c < 0 ? BigRational(-t.c) : t.c;
        if (out.empty())
            out += t.c < 0 ? "-" : "";
        else
            out += t.c < 0 ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < t.e.size(); ++i) {
            if (t.e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (t.e[i] > 1) mono += "^" + std::to_string(t.e[i]);
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += mono;
        }
    }
    return out;
}

MultiPoly reduce(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
    std::vector<const MultiPoly*> ptrs;
    ptrs.reserve(basis.size());
    for (const auto& g : basis) ptrs.push_back(&g);
    return reduce(f, ptrs);
}

MultiPoly reduce(const MultiPoly& f, const std::vector<const MultiPoly*>& basis) {
    // Working copy ordered descending; repeatedly rewrite the largest
    // reducible term, moving irreducible terms to the result.
    struct OrderGreater {
        bool operator()(const Exponents& a, const Exponents& b) const {
            return mono_less(b, a);
        }
    };
    std::map<Exponents, BigRational, OrderGreater> work;
    for (const auto& t : f.terms()) work[t.e] = t.c;
    MultiPoly result(f.nvars());
    while (!work.empty()) {
        auto it = work.begin();
        Exponents e = it->first;
        BigRational c = it->second;
        work.erase(it);
        if (c == 0) continue;
        const MultiPoly* reducer = nullptr;
        for (const auto* g : basis)
            if (!g->is_zero() && divides(g->leading().e, e)) {
                // Prefer the reducer with the fewest terms.
                if (!reducer || g->terms().size() < reducer->terms().size()) reducer = g;
            }
        if (!reducer) {
            result.add_term(e, c);
            continue;
        }
        BigRational factor = c / reducer->leading().c;
        Exponents shift = exp_sub(e, reducer->leading().e);
        // Subtract factor * x^shift * reducer; the leading term cancels.
        bool first = true;
        for (const auto& t : reducer->terms()) {
            if (first) { first = false; continue; }
            Exponents te = exp_add(t.e, shift);
            work[te] -= factor * t.c;
        }
    }
    result.normalize();
    return result;
}

MultiPoly reduce_scaled(const MultiPoly& f, const std::vector<const MultiPoly*>& basis) {
    struct OrderGreater {
        bool operator()(const Exponents& a, const Exponents& b) const {
            return mono_less(b, a);
        }
    };
    auto gcd_int = [](BigInt a, BigInt b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) { BigInt t = a % b; a = b; b = t; }
        return a;
    };
    auto den_scale = [&](const MultiPoly& p) {
        BigInt m = 1;
        for (const auto& t : p.terms()) {
            const BigInt& d = denominator(t.c);
            m = m / gcd_int(m, d) * d;
        }
        return m;
    };

    // Integer copies of any reducer that carries denominators (the usual case
    // in Buchberger is that they are already integer-primitive).
    std::vector<MultiPoly> scaled_storage;
    scaled_storage.reserve(basis.size());  // pointers below must stay valid
    std::vector<const MultiPoly*> reducers;
    reducers.reserve(basis.size());
    for (const auto* g : basis) {
        if (g->is_zero()) continue;
        BigInt m = den_scale(*g);
        if (m == 1) {
            reducers.push_back(g);
        } else {
            scaled_storage.push_back(*g * BigRational(m));
            reducers.push_back(&scaled_storage.back());
        }
    }

    std::map<Exponents, BigInt, OrderGreater> work;
    {
        BigInt m = den_scale(f);
        for (const auto& t : f.terms())
            work[t.e] += numerator(t.c) * (m / denominator(t.c));
    }
    std::vector<std::pair<Exponents, BigInt>> kept;
    while (!work.empty()) {
        auto it = work.begin();
        Exponents e = it->first;
        BigInt c = it->second;
        work.erase(it);
        if (c == 0) continue;
        const MultiPoly* reducer = nullptr;
        for (const auto* g : reducers)
            if (divides(g->leading().e, e))
                if (!reducer || g->terms().size() < reducer->terms().size()) reducer = g;
        if (!reducer) {
            kept.emplace_back(std::move(e), std::move(c));
            continue;
        }
        const BigInt& lead = numerator(reducer->leading().c);
        BigInt d = gcd_int(c, lead);
        BigInt scale = lead / d;
        if (scale < 0) { scale = -scale; d = -d; }
        if (scale != 1) {
            for (auto& [we, wc] : work) wc *= scale;
            for (auto& [ke, kc] : kept) kc *= scale;
        }
        BigInt factor = c / d;
        Exponents shift = exp_sub(e, reducer->leading().e);
        bool first = true;
        for (const auto& t : reducer->terms()) {
            if (first) { first = false; continue; }
            work[exp_add(t.e, shift)] -= factor * numerator(t.c);
        }
    }
    MultiPoly result(f.nvars());
    for (auto& [e, c] : kept)
        if (c != 0) result.add_term(e, BigRational(c));
    result.normalize();
    return result.primitive();
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
    const Term& lf = f.leading();
    const Term& lg = g.leading();
    Exponents l = exp_lcm(lf.e, lg.e);
    MultiPoly a = f.times_term(exp_sub(l, lf.e), BigRational(1) / lf.c);
    MultiPoly b = g.times_term(exp_sub(l, lg.e), BigRational(1) / lg.c);
    return a - b;
}

}  // namespace qde
