#pragma once
// Multivariate polynomials over Z/p (p a word-sized prime) with the same
// monomial-order conventions as MultiPoly, plus Buchberger's algorithm over
// that field.  Modular images keep every coefficient one machine word, so
// basis computations that drown in rational coefficient growth finish in
// milliseconds; results are combined across several primes by the caller.

#include <cstdint>
#include <vector>

#include "qde/multipoly.hpp"

namespace qde {

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

// The first `count` primes descending from 2^31; deterministic.
std::vector<std::uint64_t> word_primes(std::size_t count);

struct ModTerm {
    Exponents e;
    std::uint64_t c;  // in [1, p)
};

// Terms descending under the active monomial order; no zero coefficients.
class ModPoly {
public:
    ModPoly() = default;
    explicit ModPoly(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::vector<ModTerm>& terms() const { return terms_; }
    const ModTerm& leading() const;

    void add_term(const Exponents& e, std::uint64_t c);
    void normalize(std::uint64_t p);  // sort, combine, drop zeros
    ModPoly monic(std::uint64_t p) const;

private:
    int nvars_ = 0;
    std::vector<ModTerm> terms_;
};

// Image of an exact polynomial mod p.  Fails (returns false) when p divides
// a denominator, which marks p unusable for that input.
bool mod_image(const MultiPoly& f, std::uint64_t p, ModPoly& out);

ModPoly reduce_mod(const ModPoly& f, const std::vector<const ModPoly*>& basis,
                   std::uint64_t p);
ModPoly s_polynomial_mod(const ModPoly& f, const ModPoly& g, std::uint64_t p);

// Reduced monic Groebner basis over Z/p under the active monomial order.
std::vector<ModPoly> buchberger_mod(const std::vector<ModPoly>& generators,
                                    std::uint64_t p);

}  // namespace qde
