#pragma once

#include <cstdint>
#include <optional>

namespace qp {

// Term budget for the li-family series.  All accumulation happens in
// __float128, so the defaults are far below what the series themselves
// deliver; the budget exists to make truncation failures loud.
struct AccuracyBudget {
    double abs_tol = 1e-15;
    double rel_tol = 1e-15;
    unsigned max_terms = 4000;
};

// Logarithmic integral, principal value, for x > 1.  Ramanujan's series.
double li(double x, const AccuracyBudget& budget = {});

// Same function through the classical gamma + log log x + sum series;
// slower to converge, kept as an independent route for cross-checks.
double li_classic(double x, const AccuracyBudget& budget = {});

// First exponential integral E1(z), z > 0.
double expint_e1(double z);

// int_a^b du / (sqrt(u) log u)  =  li(sqrt b) - li(sqrt a),  2 <= a <= b.
double int_half(double a, double b, const AccuracyBudget& budget = {});

// int_x^inf du / (u^(3/2) log u)  =  E1(log(x)/2),  x > 1.
double int_half_tail(double x);

// The divergent expansion of the same tail, cut at its smallest term
// (n <= log(x)/2).  Exists to cross-check int_half_tail.
struct SeriesValue {
    double value = 0;
    unsigned terms_used = 0;
};
SeriesValue int_half_tail_asymptotic(double x);

// int_a^b dt / log^2 t  =  li(b) - li(a) + a/log a - b/log b,  2 <= a <= b.
double int_log2(double a, double b, const AccuracyBudget& budget = {});

// int_a^b dt / (sqrt(t) log^2 t)
//   = (li(sqrt b) - li(sqrt a))/2 + sqrt(a)/log a - sqrt(b)/log b.
double int_half_log2(double a, double b, const AccuracyBudget& budget = {});

// Partial sum  C_q * sum_{n=1..N} 2^(n-1) (n-1)! sqrt(x) / log^n x.
// The expansion is asymptotic; without an explicit term count it is cut
// at the last index before the terms turn around, N = floor(log(x)/2 + 1).
// Requesting more terms than that threshold throws.
SeriesValue asym_half_series(double x, std::optional<unsigned> n_terms = {});

// Magnitude of the n-th term of the expansion above (for divergence checks).
double asym_half_term(double x, unsigned n);

// sum_{k=n}^{m} 1/k.  Exact compensated summation for short segments
// below 2^31; the log((m+1/2)/(n-1/2)) form otherwise, whose error is
// O(1/n^2) and below 1e-19 for n >= 2^31.
double harmonic_segment(std::uint64_t n, std::uint64_t m);

} // namespace qp
