#pragma once
// Dense univariate polynomials over exact rationals: arithmetic, gcd/lcm via
// a subresultant remainder sequence, square-free parts, exact rational roots
// and Sturm-sequence isolation of the remaining real roots.

#include <optional>
#include <string>
#include <vector>

#include "qde/rational.hpp"

namespace qde {

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<BigRational> ascending_coeffs);
    static UniPoly constant(const BigRational& c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const BigRational& coeff(int k) const;
    const BigRational& leading() const;
    const std::vector<BigRational>& coeffs() const { return coeffs_; }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const BigRational& c) const;
    bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

    // Quotient and remainder of exact division (divisor nonzero).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

    UniPoly derivative() const;
    BigRational eval(const BigRational& x) const;
    double eval(double x) const;

    // Integer-primitive form with positive leading coefficient.
    UniPoly primitive() const;
    UniPoly monic() const;
    std::string str(const std::string& var = "g") const;

private:
    void trim();
    std::vector<BigRational> coeffs_;  // ascending powers; empty = zero
};

// Gcd (primitive, positive leading coefficient) via the subresultant PRS.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly lcm(const UniPoly& a, const UniPoly& b);
UniPoly square_free_part(const UniPoly& p);

struct RealRoot {
    bool rational = false;
    BigRational value;          // exact value when rational
    double approx = 0.0;        // refined approximation always
    double lo = 0.0, hi = 0.0;  // isolating interval (equal for rational roots)
    UniPoly annihilator;        // square-free factor vanishing at the root
};

// All real roots of p (p nonzero); rational roots exact, irrational roots
// Sturm-isolated and bisected to the requested width.
std::vector<RealRoot> real_roots(const UniPoly& p, double refine = 1e-12);

// Sign changes of the Sturm sequence of p at x, for callers that want counts.
int sturm_sign_changes(const std::vector<UniPoly>& chain, const BigRational& x);
std::vector<UniPoly> sturm_chain(const UniPoly& p);

}  // namespace qde
