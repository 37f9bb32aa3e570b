#pragma once
// Sparse multivariate polynomials with exact rational coefficients under
// lexicographic order, plus the reduction machinery needed by Buchberger's
// algorithm.

#include <string>
#include <vector>

#include "qde/rational.hpp"

namespace qde {

// Exponent vectors are dense and fixed-length; variable 0 is the most
// significant in the lexicographic order.
using Exponents = std::vector<int>;

bool lex_less(const Exponents& a, const Exponents& b);

// Active monomial order for all polynomial comparisons.
//  - Lex: plain lexicographic (the default).
//  - ElimDegree: block order that eliminates every variable except the last.
//    The leading block (all variables but the last) is compared by total
//    degree with a graded reverse-lexicographic tie-break; ties fall through
//    to the last variable's exponent.  Any monomial involving a block
//    variable sorts above every monomial in the last variable alone, so the
//    basis elements lying in the last variable generate the elimination
//    ideal, exactly as under Lex — but intermediate polynomials stay far
//    smaller.
enum class MonomialOrder { Lex, ElimDegree };
MonomialOrder monomial_order();
MonomialOrder set_monomial_order(MonomialOrder m);  // returns the previous order
bool mono_less(const Exponents& a, const Exponents& b);

// Restores the previous order on scope exit.  Polynomials built under a
// different order must be re-normalize()d before use.
struct ScopedMonomialOrder {
    MonomialOrder prev;
    explicit ScopedMonomialOrder(MonomialOrder m) : prev(set_monomial_order(m)) {}
    ~ScopedMonomialOrder() { set_monomial_order(prev); }
    ScopedMonomialOrder(const ScopedMonomialOrder&) = delete;
    ScopedMonomialOrder& operator=(const ScopedMonomialOrder&) = delete;
};
bool divides(const Exponents& a, const Exponents& b);      // a | b componentwise
Exponents exp_lcm(const Exponents& a, const Exponents& b);
Exponents exp_sub(const Exponents& a, const Exponents& b);
Exponents exp_add(const Exponents& a, const Exponents& b);

struct Term {
    Exponents e;
    BigRational c;
};

class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}
    static MultiPoly constant(int nvars, const BigRational& c);
    static MultiPoly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::vector<Term>& terms() const { return terms_; }  // descending in the active order
    const Term& leading() const;

    void add_term(const Exponents& e, const BigRational& c);  // accumulate then normalize()
    void normalize();  // sort descending, combine, drop zeros

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly times_term(const Exponents& e, const BigRational& c) const;
    MultiPoly operator*(const BigRational& c) const;
    bool operator==(const MultiPoly& o) const;

    // Integer-primitive scalar normalization (positive leading coefficient).
    MultiPoly primitive() const;
    MultiPoly monic() const;

    // True when every term involves only the given variable.
    bool univariate_in(int var) const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int nvars_ = 0;
    std::vector<Term> terms_;
};

// Full normal form of f modulo the basis (every term irreducible).
MultiPoly reduce(const MultiPoly& f, const std::vector<MultiPoly>& basis);
MultiPoly reduce(const MultiPoly& f, const std::vector<const MultiPoly*>& basis);

// Normal form up to a positive rational factor, computed fraction-free over
// the integers (cross-multiplying by reducer leading coefficients instead of
// dividing); returns the integer-primitive representative.  Much faster than
// reduce() when coefficients are large.
MultiPoly reduce_scaled(const MultiPoly& f, const std::vector<const MultiPoly*>& basis);

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);

}  // namespace qde
