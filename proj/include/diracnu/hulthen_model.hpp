#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "diracnu/nu_engine.hpp"
#include "diracnu/special_functions.hpp"

namespace diracnu {

// ---------------------------------------------------------------------------
// Generalized Hulthen potential family for the 1D Dirac equation: potential
// evaluation, reduction to the NU form, closed-form spectra for the real,
// PT-symmetric and pseudo-Hermitian variants, bound-state windows, and spinor
// eigenfunction evaluation.  Units hbar = c = 1; energies in units of m.
// ---------------------------------------------------------------------------

struct PoleAtX : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleAtS : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyWindow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Variant { Real, PTSymmetric, PseudoHermitian, Exponential };

/// Potential family parameters.  The stored (V0, q, alpha) are always the
/// real base parameters; complexification (alpha -> i alpha for PTSymmetric,
/// additionally V0 -> i V0 and q -> i q for PseudoHermitian) is applied
/// inside operations.
struct PotentialSpec {
    double V0{1.0};
    double q{1.0};
    double alpha{1.0};
    double m{1.0};
    Variant variant{Variant::Real};

    void validate() const;
};

/// Complexified parameters after the variant substitution.
struct EffectiveParams {
    Complex V0{};
    Complex q{};
    Complex alpha{};
};

EffectiveParams effective_params(const PotentialSpec& spec);

/// Derived quantities of the hypergeometric reduction at a given energy.
/// All E-dependent fields are computed with the effective parameters.
struct HypergeometricParams {
    Complex gamma_q{};
    Complex beta{};
    Complex eps2{};
    Complex eps{};      // principal root of eps2; closed-form states replace
                        // it with the signed level value
    Complex v{};
    Complex a_param{};  // a = q - 2 V0/alpha, base parameters
    Complex delta{};    // V0_eff / alpha_eff
    Complex kappa_n{};  // q alpha (n+1) - i V0, effective; set per level
    Complex E_tilde{};
    Complex V1{};
    Complex V2{};
    EffectiveParams eff{};
    Complex E{};
};

enum class BranchSign { Plus, Minus };

struct BoundState {
    int n{0};
    Complex energy{};
    BranchSign branch_sign{BranchSign::Plus};
    bool is_real_spectrum{false};
    bool discrepant{false};  // closed form failed the quantization residual
    HypergeometricParams params_at_E{};
};

struct SpinorEval {
    Complex s{};
    double x{0.0};
    bool has_x{false};
    Complex upper{};  // phi
    Complex lower{};  // m*theta, as the closed forms give it
};

/// Inclusive integer window of real PT-variant levels; empty() when no
/// nonnegative n satisfies the reality condition.
struct LevelWindow {
    int n_min{0};
    int n_max{-1};
    bool empty() const { return n_max < n_min; }
};

Complex potential_value(const PotentialSpec& spec, double x);

/// Small-alpha*x expansion (shift, slope) of the real-variant potential.
std::pair<Complex, Complex> potential_linear_approx(const PotentialSpec& spec);

HypergeometricParams hyper_params(const PotentialSpec& spec, Complex E);

std::pair<NUProblem, HypergeometricParams> map_to_nu(const PotentialSpec& spec,
                                                     Complex E);

/// lambda(eps) - lambda_n(eps) of the quantization condition, for the
/// paper-branch tau, with an explicit eps value.
Complex quantization_gap(const HypergeometricParams& hp, int n, Complex eps);

/// The eps value solving the (linear-in-eps) quantization condition at this
/// energy and level.
Complex level_eps(const HypergeometricParams& hp, int n);

BoundState energy_closed_form(const PotentialSpec& spec, int n, BranchSign sign);

LevelWindow bound_window(const PotentialSpec& spec);

std::pair<double, double> alpha_window(const PotentialSpec& spec, int n);

double critical_coupling(const PotentialSpec& spec, int n);

/// Immutable spinor-component evaluator for a closed-form state (q != 0,
/// Jacobi form) or a q = 0 confluent-hypergeometric state.
class SpinorEvaluator {
  public:
    struct Derivs {
        Complex f{};
        Complex d1{};
        Complex d2{};
    };

    SpinorEval at_s(Complex s) const;
    SpinorEval at_x(double x) const;

    /// (phi, phi', phi'') with respect to s.
    Derivs upper_derivs(Complex s) const;
    /// (m theta, (m theta)') with respect to s; d2 unused.
    Derivs lower_derivs(Complex s) const;

    Complex map_x_to_s(double x) const;
    Complex energy() const { return E_; }
    const HypergeometricParams& params() const { return hp_; }
    int level() const { return n_; }

    friend SpinorEvaluator spinor_state(const PotentialSpec& spec,
                                        const BoundState& state);
    friend SpinorEvaluator q0_state(const PotentialSpec& spec, Complex E);

  private:
    enum class Kind { Jacobi, Confluent };
    Kind kind_{Kind::Jacobi};
    HypergeometricParams hp_{};
    Complex E_{};
    int n_{0};
    // Jacobi path: upper = s^e (1 - Q s)^g P_n^{(A,B)}(1 - 2 Q s).
    Complex e_{}, g_{}, A_{}, B_{}, Q_{};
    // Confluent path: upper = s^eps exp(-i delta s) 1F1(a1; b1; 2 i delta s).
    Complex a1_{}, b1_{};

    void check_pole(Complex s) const;
};

SpinorEvaluator spinor_state(const PotentialSpec& spec, const BoundState& state);

SpinorEvaluator q0_state(const PotentialSpec& spec, Complex E);

/// Numeric L2 norm of (|phi|^2 + |theta|^2) over [x0, x1]; plotting aid only.
double l2_norm(const SpinorEvaluator& ev, double mass, double x0, double x1,
               int n_points = 2001);

}  // namespace diracnu
