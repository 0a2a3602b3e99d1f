#pragma once

#include <stdexcept>

#include "diracnu/poly2.hpp"

namespace diracnu {

// ---------------------------------------------------------------------------
// Jacobi polynomials with complex parameters and the confluent hypergeometric
// function 1F1 with complex arguments, to double precision.
// ---------------------------------------------------------------------------

struct RecurrenceBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleAtB : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
    Complex estimate{};
    double last_term{0.0};
    NonConvergence(const std::string& msg, Complex est, double term)
        : std::runtime_error(msg), estimate(est), last_term(term) {}
};

struct JacobiParams {
    Complex a{};
    Complex b{};
};

struct Hyp1F1Args {
    Complex a{};
    Complex b{};
    Complex z{};
};

struct Hyp1F1Result {
    Complex value{};
    double error_estimate{0.0};  // magnitude of the last summed term
};

/// Generalized binomial coefficient binom(x, k) = prod_{i=1..k} (x-k+i)/i,
/// complex x, integer k >= 0.  Product form, no Gamma functions.
Complex gen_binomial(Complex x, int k);

/// P_n^{(a,b)}(z), standard normalization P_n^{(a,b)}(1) = binom(n+a, n).
/// Three-term recurrence with explicit-sum fallback when a recurrence
/// denominator is small.
Complex jacobi_p(int n, const JacobiParams& params, Complex z);

/// Explicit hypergeometric-sum evaluation; the independent second route.
Complex jacobi_p_sum(int n, const JacobiParams& params, Complex z);

/// dP_n^{(a,b)}/dz = ((n+a+b+1)/2) P_{n-1}^{(a+1,b+1)}(z), 0 for n = 0.
Complex jacobi_p_deriv(int n, const JacobiParams& params, Complex z);

Hyp1F1Result hyp1f1(const Hyp1F1Args& args);

/// d/dz 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z).
Complex hyp1f1_deriv(const Hyp1F1Args& args);

/// Associated Laguerre polynomial L_n^{(a)}(t) via the terminating series
/// L_n^{(a)}(t) = binom(n+a, n) 1F1(-n; a+1; t).
Complex laguerre_l(int n, Complex a, Complex t);

}  // namespace diracnu
