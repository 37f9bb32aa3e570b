#include "qde/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qde {

namespace {

BigInt int_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

BigRational floor_rat(const BigRational& r) {
    return BigRational(floor_div(numerator(r), denominator(r)));
}

// Simplest rational (smallest denominator) in the closed interval [lo, hi].
BigRational simplest_in_interval(const BigRational& lo, const BigRational& hi) {
    BigRational fl = floor_rat(lo);
    BigRational ceil_lo = lo == fl ? lo : fl + 1;
    if (ceil_lo <= hi) return ceil_lo;  // an integer lies in the interval
    BigRational a = fl;
    return a + BigRational(1) / simplest_in_interval(BigRational(1) / (hi - a),
                                                     BigRational(1) / (lo - a));
}

}  // namespace

UniPoly::UniPoly(std::vector<BigRational> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
    trim();
}

UniPoly UniPoly::constant(const BigRational& c) { return UniPoly({c}); }

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigRational& UniPoly::coeff(int k) const {
    static const BigRational zero(0);
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[k];
}

const BigRational& UniPoly::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return coeffs_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<BigRational> out(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<BigRational> out(std::max(coeffs_.size(), o.coeffs_.size()), BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<BigRational> out(coeffs_.size() + o.coeffs_.size() - 1, BigRational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * o.coeffs_[j];
    return UniPoly(std::move(out));
}

UniPoly UniPoly::operator*(const BigRational& c) const {
    std::vector<BigRational> out = coeffs_;
    for (auto& x : out) x *= c;
    return UniPoly(std::move(out));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
    UniPoly remainder = *this;
    std::vector<BigRational> quotient;
    int dd = divisor.degree();
    if (remainder.degree() >= dd)
        quotient.assign(remainder.degree() - dd + 1, BigRational(0));
    while (!remainder.is_zero() && remainder.degree() >= dd) {
        int shift = remainder.degree() - dd;
        BigRational factor = remainder.leading() / divisor.leading();
        quotient[shift] = factor;
        std::vector<BigRational> sub(shift, BigRational(0));
        for (const auto& c : divisor.coeffs()) sub.push_back(c * factor);
        remainder = remainder - UniPoly(std::move(sub));
    }
    return {UniPoly(std::move(quotient)), remainder};
}

UniPoly UniPoly::derivative() const {
    if (coeffs_.size() <= 1) return UniPoly();
    std::vector<BigRational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = coeffs_[i] * BigRational(static_cast<long>(i));
    return UniPoly(std::move(out));
}

BigRational UniPoly::eval(const BigRational& x) const {
    BigRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double UniPoly::eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return UniPoly();
    BigInt den_lcm = 1;
    for (const auto& c : coeffs_) {
        BigInt d = denominator(c);
        den_lcm = den_lcm / int_gcd(den_lcm, d) * d;
    }
    std::vector<BigInt> ints;
    ints.reserve(coeffs_.size());
    BigInt content = 0;
    for (const auto& c : coeffs_) {
        BigInt v = numerator(c) * (den_lcm / denominator(c));
        ints.push_back(v);
        content = int_gcd(content, v);
    }
    if (content == 0) content = 1;
    if (ints.back() < 0) content = -content;
    std::vector<BigRational> out;
    out.reserve(ints.size());
    for (const auto& v : ints) out.emplace_back(v / content);
    return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return UniPoly();
    return *this * (BigRational(1) / leading());
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const BigRational& c = coeff(k);
        if (c == 0) continue;
        BigRational mag = c < 0 ? BigRational(-c) : c;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        bool unit = mag == 1 && k > 0;
        if (!unit) out += to_string(mag);
        if (k > 0) {
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    // Subresultant polynomial remainder sequence over the integers.
    UniPoly f = a.primitive(), g = b.primitive();
    if (f.degree() < g.degree()) std::swap(f, g);
    BigRational h(1), s(1);
    while (true) {
        int delta = f.degree() - g.degree();
        // Pseudo-remainder: lc(g)^(delta+1) * f mod g has rational-free division.
        BigRational lead_pow(1);
        for (int i = 0; i <= delta; ++i) lead_pow *= g.leading();
        UniPoly r = (f * lead_pow).divmod(g).second;
        if (r.is_zero()) return g.primitive();
        if (r.degree() == 0) return UniPoly::constant(BigRational(1));
        BigRational beta = s * h;
        for (int i = 1; i < delta; ++i) beta *= h;
        f = g;
        g = r * (BigRational(1) / beta);
        s = f.leading();
        // h <- s^delta * h^(1-delta)
        BigRational hn(1);
        for (int i = 0; i < delta; ++i) hn *= s;
        for (int i = 0; i < delta - 1; ++i) hn /= h;
        if (delta == 0) hn = h;
        h = hn;
        if (s < 0) s = -s;  // sign is irrelevant for a gcd; keep scales positive
        if (h < 0) h = -h;
    }
}

UniPoly lcm(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    UniPoly g = gcd(a, b);
    UniPoly q = a.divmod(g).first;
    return (q * b).primitive();
}

UniPoly square_free_part(const UniPoly& p) {
    if (p.is_zero() || p.degree() == 0) return p.primitive();
    UniPoly g = gcd(p, p.derivative());
    return p.divmod(g).first.primitive();
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain;
    chain.push_back(p.primitive());
    UniPoly d = p.derivative().primitive();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const UniPoly& s0 = chain[chain.size() - 2];
        const UniPoly& s1 = chain[chain.size() - 1];
        UniPoly r = s0.divmod(s1).second;
        if (r.is_zero()) break;
        // Negate, then strip positive content only (the sign is load-bearing).
        UniPoly next = (UniPoly() - r);
        UniPoly prim = next.primitive();
        if (prim.leading() * next.leading() < 0) prim = UniPoly() - prim;
        chain.push_back(prim);
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

int sturm_sign_changes(const std::vector<UniPoly>& chain, const BigRational& x) {
    int changes = 0, prev = 0;
    for (const auto& s : chain) {
        BigRational v = s.eval(x);
        int sign = v == 0 ? 0 : (v < 0 ? -1 : 1);
        if (sign == 0) continue;
        if (prev != 0 && sign != prev) ++changes;
        prev = sign;
    }
    return changes;
}

std::vector<RealRoot> real_roots(const UniPoly& p, double refine) {
    if (p.is_zero()) throw std::invalid_argument("real_roots of the zero polynomial");
    std::vector<RealRoot> out;
    UniPoly q = square_free_part(p);
    if (q.degree() == 0) return out;

    // Cauchy bound on root magnitude.
    BigRational bound(1);
    for (int k = 0; k < q.degree(); ++k) {
        BigRational r = q.coeff(k) / q.leading();
        if (r < 0) r = -r;
        if (r > bound) bound = r;
    }
    bound += 1;

    auto chain = sturm_chain(q);
    auto count_between = [&](const BigRational& lo, const BigRational& hi) {
        return sturm_sign_changes(chain, lo) - sturm_sign_changes(chain, hi);
    };

    struct Interval { BigRational lo, hi; };
    std::vector<Interval> pending{{-bound, bound}}, isolated;
    while (!pending.empty()) {
        Interval iv = pending.back();
        pending.pop_back();
        int roots = count_between(iv.lo, iv.hi);
        if (roots == 0) continue;
        BigRational mid = (iv.lo + iv.hi) / 2;
        if (q.eval(mid) == 0) {
            RealRoot root;
            root.rational = true;
            root.value = mid;
            root.approx = to_double(mid);
            root.lo = root.hi = root.approx;
            root.annihilator = q;
            out.push_back(root);
            // Separate the two halves strictly away from the found root.
            BigRational eps = (iv.hi - iv.lo) / 1000000;
            pending.push_back({iv.lo, mid - eps});
            pending.push_back({mid + eps, iv.hi});
            continue;
        }
        if (roots == 1) {
            isolated.push_back(iv);
            continue;
        }
        pending.push_back({iv.lo, mid});
        pending.push_back({mid, iv.hi});
    }

    // Denominators of rational roots of the primitive form divide the leading
    // coefficient; once the interval is narrower than 1/lead^2 it contains at
    // most one such candidate.
    BigInt lead = numerator(q.leading());
    if (lead < 0) lead = -lead;
    BigRational sep = BigRational(1) / BigRational(lead * lead + 1);
    for (auto& iv : isolated) {
        int sign_lo = q.eval(iv.lo) < 0 ? -1 : 1;
        while (iv.hi - iv.lo > sep) {
            BigRational mid = (iv.lo + iv.hi) / 2;
            BigRational v = q.eval(mid);
            if (v == 0) { iv.lo = iv.hi = mid; break; }
            if ((v < 0 ? -1 : 1) == sign_lo) iv.lo = mid; else iv.hi = mid;
        }
        RealRoot root;
        if (iv.lo == iv.hi) {
            root.rational = true;
            root.value = iv.lo;
        } else {
            BigRational candidate = simplest_in_interval(iv.lo, iv.hi);
            if (lead % denominator(candidate) == 0 && q.eval(candidate) == 0) {
                root.rational = true;
                root.value = candidate;
            }
        }
        if (root.rational) {
            root.approx = to_double(root.value);
            root.lo = root.hi = root.approx;
            root.annihilator = q;
        } else {
            while (to_double(iv.hi - iv.lo) > refine) {
                BigRational mid = (iv.lo + iv.hi) / 2;
                BigRational v = q.eval(mid);
                if (v == 0) { iv.lo = iv.hi = mid; break; }
                if ((v < 0 ? -1 : 1) == sign_lo) iv.lo = mid; else iv.hi = mid;
            }
            root.lo = to_double(iv.lo);
            root.hi = to_double(iv.hi);
            root.approx = to_double((iv.lo + iv.hi) / 2);
            root.annihilator = q;
        }
        out.push_back(root);
    }

    // The annihilator attached to irrational roots excludes the exact
    // rational linear factors.
    UniPoly residue = q;
    for (const auto& r : out)
        if (r.rational) {
            UniPoly linear({-r.value, BigRational(1)});
            residue = residue.divmod(linear).first;
        }
    residue = residue.primitive();
    for (auto& r : out)
        if (!r.rational) r.annihilator = residue;

    std::sort(out.begin(), out.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.approx < b.approx; });
    return out;
}

}  // namespace qde
