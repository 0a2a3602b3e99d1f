#pragma once

#include <stdexcept>
#include <vector>

#include "diracnu/poly2.hpp"

namespace diracnu {

// ---------------------------------------------------------------------------
// Nikiforov-Uvarov reduction for second-order ODEs of hypergeometric type,
//
//   phi'' + (tau_tilde/sigma) phi' + (sigma_tilde/sigma^2) phi = 0,
//
// with complex polynomial coefficients.  The engine enumerates the k / pi
// branches, applies the eigenvalue rule lambda_n = -n tau' - n(n-1)/2 sigma'',
// and identifies the Pearson weight and the Rodrigues polynomial family.
// ---------------------------------------------------------------------------

struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPerfectSquare : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguousBranch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedSigmaClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NUProblem {
    Poly2 sigma;        // deg <= 2, not identically zero
    Poly2 sigma_tilde;  // deg <= 2
    Poly2 tau_tilde;    // deg <= 1
};

enum class SqrtSign { Plus, Minus };

struct NUBranch {
    Complex k{};
    Poly2 pi;   // deg <= 1
    Poly2 tau;  // tau = tau_tilde + 2 pi
    Complex lambda{};
    SqrtSign sqrt_sign{SqrtSign::Plus};
    bool admissible{false};  // Re(tau') < 0
    Complex sigma_dd{};      // sigma'' carried along for the eigenvalue rule
};

enum class WeightClass {
    PowerPower,  // rho(s) = s^A (1 - q s)^B
    PowerExp,    // rho(s) = s^A exp(B s)
};

struct WeightSpec {
    WeightClass cls{WeightClass::PowerPower};
    Complex A{};
    Complex B{};
    Complex q_node{};  // shape parameter of the (1 - q s) factor; PowerPower only
};

enum class PolyFamily { Jacobi, Laguerre };

/// Reference to the classical polynomial identified from the Rodrigues
/// relation: family, parameters and the affine argument map z = m0 + m1 s.
struct ClassicalPolyRef {
    PolyFamily family{PolyFamily::Jacobi};
    int n{0};
    Complex a{};   // Jacobi (a,b) superscripts; Laguerre uses a only
    Complex b{};
    Complex arg0{};  // z = arg0 + arg1 * s
    Complex arg1{};
};

enum class BranchPolicy { PaperDefault, ExplicitIndex };

NUProblem validate_problem(const Poly2& sigma, const Poly2& sigma_tilde,
                           const Poly2& tau_tilde);

/// Values of k for which the expression under the square root of the pi
/// formula is a perfect square (its z-discriminant vanishes).
std::vector<Complex> k_candidates(const NUProblem& problem);

/// The two first-degree pi polynomials for a given k:
/// pi = (sigma' - tau_tilde)/2 +- r(z) with r the exact linear square root.
std::vector<Poly2> pi_candidates(const NUProblem& problem, Complex k);

NUBranch assemble_branch(const NUProblem& problem, Complex k, const Poly2& pi,
                         SqrtSign sign = SqrtSign::Plus);

/// All (k, +-) combinations, at most four.
std::vector<NUBranch> enumerate_branches(const NUProblem& problem);

const NUBranch& select_branch(const std::vector<NUBranch>& branches,
                              BranchPolicy policy, int explicit_index = 0);

/// lambda_n = -n tau' - n(n-1)/2 sigma''.
Complex eigen_lambda(const NUBranch& branch, int n);

/// Pearson weight rho solving (sigma rho)' = tau rho for the two sigma
/// classes sigma = c1 s (1 - q s) and sigma = c1 s.
WeightSpec pearson_weight(const NUBranch& branch, const NUProblem& problem);

ClassicalPolyRef rodrigues_polynomial(const NUBranch& branch, const WeightSpec& weight,
                                      int n);

/// Multiplicative factor phi of the transformation, from phi'/phi = pi/sigma.
WeightSpec phi_factor(const NUBranch& branch, const NUProblem& problem);

}  // namespace diracnu
