#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "diracnu/hulthen_model.hpp"

using namespace diracnu;

namespace {

constexpr Complex I{0.0, 1.0};

bool close(Complex a, Complex b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

PotentialSpec make(Variant v, double V0, double q, double alpha, double m = 1.0) {
    PotentialSpec s;
    s.V0 = V0;
    s.q = q;
    s.alpha = alpha;
    s.m = m;
    s.variant = v;
    return s;
}

}  // namespace

TEST_CASE("PotentialSpec validation") {
    CHECK_THROWS_AS(make(Variant::Real, 1, 1, -1).validate(), InvalidSpec);
    CHECK_THROWS_AS(make(Variant::Real, 1, 1, 1, 0.0).validate(), InvalidSpec);
    CHECK_THROWS_AS(make(Variant::Real, 1, 0, 1).validate(), InvalidSpec);
    CHECK_THROWS_AS(make(Variant::Exponential, 1, 1, 1).validate(), InvalidSpec);
    CHECK_NOTHROW(make(Variant::Exponential, 1, 0, 1).validate());
    CHECK_NOTHROW(make(Variant::Real, 1, -1, 1).validate());
}

TEST_CASE("effective_params per variant") {
    const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 2.0);
    const auto pt = effective_params(spec);
    CHECK(close(pt.V0, Complex{2.5}));
    CHECK(close(pt.q, Complex{1.0}));
    CHECK(close(pt.alpha, 2.0 * I));

    const auto ph = effective_params(make(Variant::PseudoHermitian, 2.5, 1.0, 2.0));
    CHECK(close(ph.V0, 2.5 * I));
    CHECK(close(ph.q, I));
    CHECK(close(ph.alpha, 2.0 * I));

    const auto re = effective_params(make(Variant::Real, 2.5, 1.0, 2.0));
    CHECK(close(re.alpha, Complex{2.0}));
}

TEST_CASE("potential_value") {
    SUBCASE("real variant values and decay") {
        const auto spec = make(Variant::Real, 2.5, 2.0, 1.0);
        CHECK(close(potential_value(spec, 0.0), Complex{2.5}));
        CHECK(std::abs(potential_value(spec, 30.0)) < 1e-12);
        const double s = std::exp(-0.7);
        CHECK(close(potential_value(spec, 0.7), Complex{-2.5 * s / (1.0 - 2.0 * s)}));
    }
    SUBCASE("pole at x where 1 - q e^{-alpha x} = 0") {
        CHECK_THROWS_AS(potential_value(make(Variant::Real, 2.5, 1.0, 1.0), 0.0), PoleAtX);
        const double xp = std::log(2.0);  // q=2: s=1/2 at x=ln 2
        CHECK_THROWS_AS(potential_value(make(Variant::Real, 2.5, 2.0, 1.0), xp), PoleAtX);
    }
    SUBCASE("PT trig form matches the complexified expression") {
        const auto spec = make(Variant::PTSymmetric, 2.5, 0.5, 2.0);
        for (double x : {-1.3, -0.4, 0.2, 0.9, 2.1}) {
            const Complex s = std::exp(-2.0 * I * x);
            const Complex direct = -2.5 * s / (1.0 - 0.5 * s);
            CHECK(close(potential_value(spec, x), direct, 1e-13));
        }
    }
    SUBCASE("pseudo-Hermitian trig form matches the complexified expression") {
        const auto spec = make(Variant::PseudoHermitian, 1.5, 0.7, 1.3);
        for (double x : {-0.9, 0.0, 0.6, 1.7}) {
            const Complex s = std::exp(-1.3 * I * x);
            const Complex direct = -1.5 * I * s / (1.0 - 0.7 * I * s);
            CHECK(close(potential_value(spec, x), direct, 1e-13));
        }
    }
}

TEST_CASE("potential_linear_approx") {
    const auto spec = make(Variant::Real, 2.5, 2.0, 1.0);
    const auto [shift, slope] = potential_linear_approx(spec);
    CHECK(close(shift, Complex{2.5}));
    CHECK(close(slope, Complex{2.5}));
    // second-order agreement with the exact potential near x = 0
    for (double x : {1e-3, 3e-3, 1e-2}) {
        const Complex lin = shift + slope * x;
        CHECK(std::abs(potential_value(spec, x) - lin) < 30.0 * x * x);
    }
    CHECK_THROWS_AS(potential_linear_approx(make(Variant::Real, 2.5, 1.0, 1.0)),
                    DegenerateShape);
}

TEST_CASE("hyper_params at the worked example") {
    // Real, q=1, alpha=1, V0=2.5, m=1, E=0.6
    const auto spec = make(Variant::Real, 2.5, 1.0, 1.0);
    const auto hp = hyper_params(spec, Complex{0.6});
    CHECK(close(hp.gamma_q, Complex{6.25, 2.5}));
    CHECK(close(hp.beta, Complex{3.0, 2.5}));
    CHECK(close(hp.eps2, Complex{0.64}));
    CHECK(close(hp.eps, Complex{0.8}));
    CHECK(close(hp.v, Complex{1.0, -5.0}));
    CHECK(close(hp.delta, Complex{2.5}));
    CHECK(close(hp.E_tilde, Complex{0.36 - 1.0}));
}

TEST_CASE("identity v^2 = q^2 - 4 gamma_q over random specs") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(0.2, 3.0);
    std::uniform_int_distribution<int> var(0, 2);
    const Variant variants[] = {Variant::Real, Variant::PTSymmetric,
                                Variant::PseudoHermitian};
    for (int t = 0; t < 100; ++t) {
        const auto spec = make(variants[var(rng)], uni(rng), uni(rng) - 1.5, uni(rng));
        if (spec.q == 0.0) continue;
        const auto hp = hyper_params(spec, Complex{uni(rng), uni(rng) - 1.6});
        const Complex lhs = hp.v * hp.v;
        const Complex rhs = hp.eff.q * hp.eff.q - 4.0 * hp.gamma_q;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("map_to_nu coefficients at the worked example") {
    const auto spec = make(Variant::Real, 2.5, 1.0, 1.0);
    const auto [pr, hp] = map_to_nu(spec, Complex{0.6});
    CHECK(close(pr.sigma.c1, Complex{1.0}));
    CHECK(close(pr.sigma.c2, Complex{-1.0}));
    CHECK(close(pr.tau_tilde.c0, Complex{1.0}));
    CHECK(close(pr.tau_tilde.c1, Complex{-1.0}));
    CHECK(close(pr.sigma_tilde.c0, Complex{-0.64}));
    CHECK(close(pr.sigma_tilde.c1, Complex{4.28, 2.5}));
    CHECK(close(pr.sigma_tilde.c2, Complex{2.61}));

    SUBCASE("q = 0 form") {
        const auto spec0 = make(Variant::Exponential, 2.5, 0.0, 1.0);
        const auto [p0, h0] = map_to_nu(spec0, Complex{0.6});
        CHECK(close(p0.sigma.c1, Complex{1.0}));
        CHECK(p0.sigma.c2 == Complex{});
        CHECK(close(p0.sigma_tilde.c2, h0.delta * h0.delta));
        CHECK(close(p0.sigma_tilde.c1, h0.beta));
        CHECK(close(p0.sigma_tilde.c0, -h0.eps2));
    }
}

TEST_CASE("quantization_gap at the worked example gives lambda = 0.4 + 9i") {
    const auto spec = make(Variant::Real, 2.5, 1.0, 1.0);
    const auto hp = hyper_params(spec, Complex{0.6});
    CHECK(close(quantization_gap(hp, 0, hp.eps), Complex{0.4, 9.0}));
    // level_eps is the exact root of the (linear in eps) gap
    for (int n = 0; n <= 3; ++n) {
        const Complex e = level_eps(hp, n);
        CHECK(std::abs(quantization_gap(hp, n, e)) < 1e-12);
    }
}

TEST_CASE("energy_closed_form: PT worked example") {
    const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 2.0);
    const auto plus = energy_closed_form(spec, 0, BranchSign::Plus);
    const auto minus = energy_closed_form(spec, 0, BranchSign::Minus);
    CHECK(close(plus.energy, Complex{1.25 + std::sqrt(1.0 / 48.0)}, 1e-12));
    CHECK(close(minus.energy, Complex{1.25 - std::sqrt(1.0 / 48.0)}, 1e-12));
    CHECK(std::abs(plus.energy.real() - 1.39433757) < 1e-8);
    CHECK(std::abs(minus.energy.real() - 1.10566243) < 1e-8);
    CHECK(plus.is_real_spectrum);
    CHECK(minus.is_real_spectrum);
    CHECK_FALSE(plus.discrepant);
    CHECK_FALSE(minus.discrepant);
    // both states satisfy the quantization condition with their stored eps
    for (const auto& st : {plus, minus}) {
        const Complex g = quantization_gap(st.params_at_E, 0, st.params_at_E.eps);
        CHECK(std::abs(g) < 1e-10);
    }
}

TEST_CASE("energy_closed_form: branches coincide at the window edge") {
    const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 1.0);  // alpha = lower edge
    const auto plus = energy_closed_form(spec, 0, BranchSign::Plus);
    const auto minus = energy_closed_form(spec, 0, BranchSign::Minus);
    CHECK(close(plus.energy, Complex{1.25}, 1e-12));
    CHECK(close(minus.energy, Complex{1.25}, 1e-12));
}

TEST_CASE("energy_closed_form: real variant is certified non-discrepant") {
    for (double q : {1.0, -1.0, 2.0}) {
        for (int n = 0; n <= 2; ++n) {
            const auto st =
                energy_closed_form(make(Variant::Real, 2.5, q, 1.5), n, BranchSign::Plus);
            CHECK_FALSE(st.discrepant);
        }
    }
    CHECK_THROWS_AS(
        energy_closed_form(make(Variant::Exponential, 2.5, 0.0, 1.0), 0, BranchSign::Plus),
        NotApplicable);
}

TEST_CASE("PT and pseudo-Hermitian spectra coincide as sets") {
    for (double alpha : {1.2, 2.0, 3.1}) {
        std::vector<Complex> pt, ph;
        for (int n = 0; n <= 3; ++n) {
            for (auto sg : {BranchSign::Plus, BranchSign::Minus}) {
                pt.push_back(
                    energy_closed_form(make(Variant::PTSymmetric, 2.5, 1.0, alpha), n, sg)
                        .energy);
                ph.push_back(
                    energy_closed_form(make(Variant::PseudoHermitian, 2.5, 1.0, alpha), n, sg)
                        .energy);
            }
        }
        for (const Complex& e : pt) {
            double best = 1e9;
            for (const Complex& f : ph) best = std::min(best, std::abs(e - f));
            CHECK(best < 1e-10);
        }
    }
}

TEST_CASE("bound_window") {
    const auto w = bound_window(make(Variant::PTSymmetric, 2.5, 1.0, 2.0));
    CHECK(w.n_min == 0);
    CHECK(w.n_max == 1);
    CHECK_FALSE(w.empty());

    // q = -1 with positive V0 puts the whole window at negative n
    const auto wneg = bound_window(make(Variant::PTSymmetric, 2.5, -1.0, 1.0));
    CHECK(wneg.empty());

    CHECK_THROWS_AS(bound_window(make(Variant::PTSymmetric, 1.0, 1.0, 1.0)), EmptyWindow);
    CHECK_THROWS_AS(bound_window(make(Variant::Real, 2.5, 1.0, 1.0)), NotApplicable);
}

TEST_CASE("alpha_window at V0 = 2.5, q = 1, m = 1") {
    const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 2.0);
    const auto [l0, h0] = alpha_window(spec, 0);
    CHECK(l0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h0 == doctest::Approx(4.0).epsilon(1e-12));
    const auto [l1, h1] = alpha_window(spec, 1);
    CHECK(l1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(h1 == doctest::Approx(2.0).epsilon(1e-12));
    const auto [l2, h2] = alpha_window(spec, 2);
    CHECK(l2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(h2 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("critical_coupling") {
    CHECK(critical_coupling(make(Variant::PTSymmetric, 2.5, 1.0, 1.0), 0) ==
          doctest::Approx(2.5).epsilon(1e-14));
    CHECK(critical_coupling(make(Variant::PTSymmetric, 2.5, 1.0, 2.0), 0) ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("spinor_state upper component at the worked example") {
    // Real, q=1, alpha=1, V0=2.5, m=1 at the off-shell energy E=0.6, n=0:
    // phi(s) = s^0.8 (1-s)^{1-2.5i}, so phi(1/2) = 0.5^{1.8-2.5i}.
    const auto spec = make(Variant::Real, 2.5, 1.0, 1.0);
    BoundState st;
    st.n = 0;
    st.energy = Complex{0.6};
    st.params_at_E = hyper_params(spec, st.energy);
    const auto ev = spinor_state(spec, st);
    const Complex expect = std::pow(Complex{0.5}, Complex{1.8, -2.5});
    CHECK(close(ev.at_s(Complex{0.5}).upper, expect, 1e-13));
    CHECK(std::abs(expect - Complex{-0.046307, 0.283417}) < 1e-4);

    SUBCASE("pole guard at 1 - q s = 0") {
        CHECK_THROWS_AS(ev.at_s(Complex{1.0}), PoleAtS);
    }
    SUBCASE("upper_derivs agree with finite differences") {
        const double h = 1e-6;
        const Complex s{0.4, 0.05};
        const auto d = ev.upper_derivs(s);
        const Complex fp = ev.upper_derivs(s + h).f;
        const Complex fm = ev.upper_derivs(s - h).f;
        CHECK(std::abs(d.d1 - (fp - fm) / (2.0 * h)) < 1e-7);
        CHECK(std::abs(d.d2 - (fp - 2.0 * d.f + fm) / (h * h)) < 1e-4);
    }
    SUBCASE("lower_derivs agree with finite differences") {
        const double h = 1e-6;
        const Complex s{0.4, 0.05};
        const auto d = ev.lower_derivs(s);
        const Complex fp = ev.lower_derivs(s + h).f;
        const Complex fm = ev.lower_derivs(s - h).f;
        CHECK(std::abs(d.d1 - (fp - fm) / (2.0 * h)) < 1e-7);
    }
}

TEST_CASE("q0_state: 1F1 parameter identity and leading behavior") {
    const auto spec = make(Variant::Exponential, 2.5, 0.0, 1.0);
    const Complex E{0.6};
    const auto ev = q0_state(spec, E);
    const auto& hp = ev.params();
    // 1/2 + eps + i beta/(2 delta) must equal eps + i E/alpha
    const Complex a1_long = 0.5 + hp.eps + I * hp.beta / (2.0 * hp.delta);
    const Complex a1_short = hp.eps + I * E / spec.alpha;
    CHECK(close(a1_long, a1_short, 1e-13));

    // phi ~ s^eps as s -> 0: the ratio phi(s)/s^eps tends to 1
    for (double s : {1e-3, 1e-5}) {
        const Complex ratio = ev.at_s(Complex{s}).upper / std::pow(Complex{s}, hp.eps);
        CHECK(std::abs(ratio - 1.0) < 50.0 * s);
    }
    CHECK_THROWS_AS(q0_state(make(Variant::Real, 2.5, 1.0, 1.0), E), NotApplicable);
    CHECK_THROWS_AS(spinor_state(spec, BoundState{}), NotApplicable);
}

TEST_CASE("l2_norm is finite and positive for a certified PT state") {
    const auto spec = make(Variant::PTSymmetric, 2.5, 1.0, 2.0);
    const auto st = energy_closed_form(spec, 0, BranchSign::Plus);
    const auto ev = spinor_state(spec, st);
    // x range keeps s = e^{-2ix} away from the 1 - s = 0 pole at x = 0
    const double nrm = l2_norm(ev, spec.m, 0.2, 1.4, 401);
    CHECK(nrm > 0.0);
    CHECK(std::isfinite(nrm));
}
