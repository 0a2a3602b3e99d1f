#include "diracnu/verify_suite.hpp"

#include <cmath>
#include <random>

#include "diracnu/verification.hpp"

namespace diracnu {

namespace {

PotentialSpec make(Variant v, double V0, double q, double alpha, double m = 1.0) {
    PotentialSpec s;
    s.V0 = V0;
    s.q = q;
    s.alpha = alpha;
    s.m = m;
    s.variant = v;
    return s;
}

struct Suite {
    double scale;
    VerifyReport report;

    // Passing means measured <= tolerance * scale.
    void upper(const std::string& name, double measured, double tol) {
        VerifyCheck c;
        c.name = name;
        c.measured = measured;
        c.tolerance = tol * scale;
        c.passed = measured <= c.tolerance;
        if (!c.passed) report.all_passed = false;
        report.checks.push_back(c);
    }
    // Negative control: measured must exceed the floor (floor is not scaled;
    // it guards test sensitivity, not accuracy).
    void lower(const std::string& name, double measured, double floor_val) {
        VerifyCheck c;
        c.name = name;
        c.measured = measured;
        c.tolerance = floor_val;
        c.passed = measured > floor_val;
        if (!c.passed) report.all_passed = false;
        report.checks.push_back(c);
    }
};

}  // namespace

VerifyReport run_verify_suite(double tol_scale) {
    Suite s{tol_scale, {}};

    // 1. alpha windows for m=1, q=1, V0=2.5
    {
        const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 2.0);
        const double expect[3][2] = {{1.0, 4.0}, {0.5, 2.0}, {1.0 / 3.0, 4.0 / 3.0}};
        double worst = 0.0;
        for (int n = 0; n < 3; ++n) {
            const auto [lo, hi] = alpha_window(spec, n);
            worst = std::max({worst, std::abs(lo - expect[n][0]), std::abs(hi - expect[n][1])});
        }
        s.upper("alpha_window[n=0..2]", worst, 1e-12);
    }

    // 2. closed form vs quantization root
    {
        double worst = 0.0;
        for (auto variant : {Variant::Real, Variant::PTSymmetric, Variant::PseudoHermitian}) {
            for (double alpha : {1.0, 1.5, 2.0}) {
                const auto spec = make(variant, 2.5, 1.0, alpha);
                for (int n = 0; n <= 1; ++n) {
                    for (auto sg : {BranchSign::Plus, BranchSign::Minus}) {
                        const auto st = energy_closed_form(spec, n, sg);
                        if (st.discrepant) continue;
                        const Complex r = quantization_root(
                            spec, n, st.energy + Complex{1e-4, 1e-4});
                        worst = std::max(worst, std::abs(r - st.energy));
                    }
                }
            }
        }
        s.upper("closed_form_vs_root", worst, 1e-8);
    }

    // 3. eigenfunction residuals and sensitivity
    {
        const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 2.0);
        const auto st = energy_closed_form(spec, 0, BranchSign::Plus);
        const auto ev = spinor_state(spec, st);
        const auto s_grid = linspace_c(0.05, 0.95, 200);
        s.upper("ode_residual", ode_residual(spec, ev, s_grid).max_rel, 1e-8);
        const auto x_grid = linspace(0.15, 1.45, 200);
        const auto cr = coupled_residual(spec, ev, x_grid);
        s.upper("coupled_residual_r1", cr.r1.max_rel, 1e-8);
        s.upper("coupled_residual_r2", cr.r2.max_rel, 1e-8);
        BoundState off = st;
        off.energy += Complex{1e-3};
        off.params_at_E = hyper_params(spec, off.energy);
        s.lower("residual_sensitivity",
                ode_residual(spec, spinor_state(spec, off), s_grid).max_rel, 1e-4);
    }

    // 4. branch coincidence on the reality boundary
    {
        const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 1.0);
        const auto p = energy_closed_form(spec, 0, BranchSign::Plus);
        const auto q = energy_closed_form(spec, 0, BranchSign::Minus);
        s.upper("boundary_branch_coincidence",
                std::max(std::abs(p.energy - Complex{1.25}), std::abs(q.energy - Complex{1.25})),
                1e-10);
    }

    // 5. potential symmetries
    {
        const auto grid = linspace(-2.0, 2.0, 100);
        std::mt19937 rng(41);
        std::uniform_real_distribution<double> uni(0.3, 2.5);
        double worst_pt = 0.0, worst_pp = 0.0;
        for (int t = 0; t < 10; ++t) {
            const double V0 = uni(rng), q = 0.3 + 0.2 * uni(rng), a = uni(rng);
            worst_pt = std::max(worst_pt,
                                symmetry_check(make(Variant::PTSymmetric, V0, q, a),
                                               SymmetryKind::PT, grid)
                                    .max_abs);
            worst_pp = std::max(worst_pp,
                                symmetry_check(make(Variant::PseudoHermitian, V0, q, a),
                                               SymmetryKind::PseudoP, grid)
                                    .max_abs);
        }
        s.upper("pt_symmetry", worst_pt, 1e-13);
        s.upper("pseudo_p_symmetry", worst_pp, 1e-13);
        const auto ctrl = make(Variant::Real, 2.5, -1.0, 1.0);
        s.lower("real_variant_pt_negative_control",
                symmetry_check(ctrl, SymmetryKind::PT, grid).max_abs, 0.1 * ctrl.V0);
    }

    // 6. NU oscillator regression
    {
        double worst = 0.0;
        for (int n = 0; n <= 10; ++n) {
            auto gap = [&](double et) {
                const auto pr = validate_problem(Poly2(Complex{1.0}),
                                                 Poly2(Complex{et}, {}, Complex{-1.0}), Poly2{});
                const auto& b =
                    select_branch(enumerate_branches(pr), BranchPolicy::PaperDefault);
                return (b.lambda - eigen_lambda(b, n)).real();
            };
            double e0 = 0.3, f0 = gap(e0), e1 = 25.0, f1 = gap(e1);
            for (int it = 0; it < 60 && std::abs(f1) > 1e-15; ++it) {
                const double e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
                e0 = e1;
                f0 = f1;
                e1 = e2;
                f1 = gap(e1);
            }
            worst = std::max(worst, std::abs(e1 - (2.0 * n + 1.0)) / (2.0 * n + 1.0));
        }
        s.upper("oscillator_etilde_2n_plus_1", worst, 1e-12);
    }

    // 7. special functions
    {
        std::mt19937 rng(43);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const JacobiParams ab{Complex{2.0 * uni(rng), 2.0 * uni(rng)},
                                  Complex{2.0 * uni(rng), 2.0 * uni(rng)}};
            const Complex z{1.5 * uni(rng), uni(rng)};
            for (int n = 0; n <= 8; ++n) {
                const Complex pr = jacobi_p(n, ab, z);
                const Complex ps = jacobi_p_sum(n, ab, z);
                worst = std::max(worst, std::abs(pr - ps) / std::max(1.0, std::abs(ps)));
            }
        }
        s.upper("jacobi_dual_path", worst, 1e-11);

        const double e1 = std::abs(
            hyp1f1({Complex{1.0}, Complex{2.0}, Complex{1.0}}).value - (std::exp(1.0) - 1.0));
        s.upper("hyp1f1_1_2_1", e1, 1e-14 * std::exp(1.0));

        double worst_k = 0.0;
        for (int t = 0; t < 20; ++t) {
            const Complex a{2.0 * uni(rng), 2.0 * uni(rng)};
            const Complex b{2.5 + uni(rng), uni(rng)};
            const Complex z{2.0 * uni(rng), 2.0 * uni(rng)};
            const Complex lhs = hyp1f1({a, b, z}).value;
            const Complex rhs = std::exp(z) * hyp1f1({b - a, b, -z}).value;
            worst_k = std::max(worst_k, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        s.upper("hyp1f1_kummer", worst_k, 1e-10);
    }

    // 8. FD free-box spot check (coarse grid; the acceptance suite runs the
    // full N=2000 case)
    {
        GridSpec g;
        g.x_min = -10.0;
        g.x_max = 10.0;
        g.n_points = 200;
        const auto sp = fd_dirac_spectrum(make(Variant::Exponential, 0.0, 0.0, 1.0), g);
        double lowest = 1e300;
        // > 1e-6 skips the genuine zero mode of the upper-Dirichlet problem
        for (const Complex& e : sp.eigenvalues)
            if (e.real() > 1e-6) lowest = std::min(lowest, e.real());
        const double pi = std::acos(-1.0);
        const double exact = std::sqrt(1.0 + std::pow(pi / 20.0, 2));
        s.upper("fd_free_box_coarse", std::abs(lowest - exact), 1e-3);
    }

    return s.report;
}

}  // namespace diracnu
