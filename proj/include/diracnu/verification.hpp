#pragma once

#include <stdexcept>
#include <vector>

#include "diracnu/hulthen_model.hpp"

namespace diracnu {

// ---------------------------------------------------------------------------
// Independent correctness oracles: quantization-condition root-finding, ODE
// and coupled-system residuals for closed-form states, potential symmetry
// checks, and a staggered-grid finite-difference Dirac eigensolver.
//
// The quantization condition (the NU eigenvalue rule applied to the Hulthen
// reduction) is the source of truth here; the printed closed forms are
// validated against it.
// ---------------------------------------------------------------------------

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EigensolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResidualReport {
    double max_abs{0.0};
    double max_rel{0.0};
    Complex worst_point{};
    int n_points{0};
};

struct CoupledReport {
    ResidualReport r1;  // i phi' + (E - V) phi - m theta; zero by construction
    ResidualReport r2;  // -i theta' + (E - V) theta - m phi; the real check
};

struct GridSpec {
    double x_min{0.0};
    double x_max{1.0};
    int n_points{8};
    bool staggered{true};
};

enum class BoundaryKind { DirichletUpper };

struct NumericSpectrum {
    std::vector<Complex> eigenvalues;  // sorted by real part
    double h{0.0};
    BoundaryKind boundary{BoundaryKind::DirichletUpper};
    bool doubling_filtered{false};
};

enum class SymmetryKind { PT, PseudoP };

/// lambda(E) - lambda_n(E) with the paper's branch and the principal eps.
Complex quantization_residual(const PotentialSpec& spec, Complex E, int n);

/// Same residual with eps = eps_sign * principal sqrt; the NU +- enumeration
/// makes both signs legitimate sub-branches.
Complex quantization_residual_signed(const PotentialSpec& spec, Complex E, int n,
                                     int eps_sign);

/// Residual magnitude certifying a closed-form state (minimum over the two
/// eps sub-branches).
double certify_state(const PotentialSpec& spec, const BoundState& state);

/// Complex secant iteration on the quantization residual; tries both eps
/// sub-branches and returns the converged root closest to the seed.
Complex quantization_root(const PotentialSpec& spec, int n, Complex seed);

/// Residual of the second-order s-form hypergeometric equation for the
/// state's upper component, on the given s grid.
ResidualReport ode_residual(const PotentialSpec& spec, const SpinorEvaluator& ev,
                            const std::vector<Complex>& s_grid);

/// Residuals of both first-order Dirac equations on the given x grid.
CoupledReport coupled_residual(const PotentialSpec& spec, const SpinorEvaluator& ev,
                               const std::vector<double>& x_grid);

/// max |[V(reflected x)]^* - V(x)| over the grid.
ResidualReport symmetry_check(const PotentialSpec& spec, SymmetryKind kind,
                              const std::vector<double>& x_grid);

/// Full spectrum of the staggered-grid discretization of the first-order
/// Dirac system with Dirichlet upper-component boundaries, via a dense
/// general eigensolver.
NumericSpectrum fd_dirac_spectrum(const PotentialSpec& spec, const GridSpec& grid);

/// Real eigenvalues of the same discretization inside (e_lo, e_hi), located
/// by determinant sign changes of the banded matrix; O(N) per probe, usable
/// at grid sizes where the dense solve is not.
std::vector<double> fd_bound_states(const PotentialSpec& spec, const GridSpec& grid,
                                    double e_lo, double e_hi, int n_scan = 400);

/// Uniform real grid helper.
std::vector<double> linspace(double a, double b, int n);
std::vector<Complex> linspace_c(double a, double b, int n);

}  // namespace diracnu
