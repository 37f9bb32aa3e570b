#pragma once
// Regular cyclic sequences: solutions of the quadratic difference equation
// with constant gamma on cycle graphs.  Real sequences arise from integer
// polynomials with positive coefficients (increments are powers of a real
// root of (x+1)*a(x)); complex sequences are closed equal-step walks turning
// through a fixed angle +-theta at every vertex.

#include <complex>
#include <optional>
#include <vector>

#include "qde/graph.hpp"
#include "qde/unipoly.hpp"

namespace qde {

// Cyclic word of increment powers: power k occurs multiplicities[k] times and
// cyclically adjacent powers differ by exactly one.
struct IncrementWord {
    std::vector<int> powers;
    std::vector<long> multiplicities;  // b_k of (x+1)*a(x)
};

enum class CyclicKind { Real, Complex };

struct CyclicSolution {
    int order = 0;                  // N = number of vertices
    std::vector<Complex> values;    // x_0 .. x_{N-1} around the cycle
    double gamma = 0.0;
    CyclicKind kind = CyclicKind::Real;
    std::optional<double> theta;         // turning angle (complex walks)
    std::optional<IncrementWord> word;   // increment arrangement (real case)
};

// The two admissible continuations of an increment pair: y_k is either
// y_{k-1}^2 / y_{k-2} or y_{k-2}.
std::pair<Complex, Complex> recurrence_options(Complex y_km2, Complex y_km1);

// Builds the real regular cyclic sequence of order 2*sum(a) determined by the
// chosen real root of p(x) = (x+1)*a(x); a_coeffs are the (strictly
// positive) coefficients of a in ascending order, root_choice indexes the
// ascending list of real roots of p.  gamma = 2(1+y^2)/(1-y)^2.
CyclicSolution build_real_cyclic(const std::vector<long>& a_coeffs,
                                 std::size_t root_choice);

// One member of a cyclic graph's geometric spectrum with a witness solution.
struct SpectrumEntry {
    double gamma = 0.0;
    std::optional<BigRational> exact;    // exact value when rational
    std::optional<UniPoly> annihilator;  // exact minimal polynomial otherwise
    CyclicSolution witness;
};

// The geometric spectrum of the cycle graph of order N: gamma = 2 segment
// colourings (N >= 4), real sequences from every positive composition of N/2
// (N even), and complex closed walks with theta = 2*pi*m/(k-l), k+l = N;
// duplicates merged, entries ascending in gamma.
std::vector<SpectrumEntry> enumerate_cyclic_spectrum(int N);

// The cycle graph of order n with vertices "c0".."c{n-1}".
Graph cycle_graph(int n);

// Field on cycle_graph(values.size()) taking the given values in order.
Field cycle_field(const std::vector<Complex>& values);

}  // namespace qde
