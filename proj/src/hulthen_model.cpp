#include "diracnu/hulthen_model.hpp"

#include <algorithm>
#include <cmath>

namespace diracnu {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPoleTol = 1e-12;
constexpr double kResidualTol = 1e-8;

Complex cpow(Complex base, Complex expo) {
    if (base == Complex{}) {
        if (expo.real() > 0.0) return Complex{};
        throw PoleAtS("complex power of zero with non-positive real exponent");
    }
    return std::exp(expo * std::log(base));
}

}  // namespace

void PotentialSpec::validate() const {
    if (m <= 0.0) throw InvalidSpec("mass must be positive");
    if (alpha <= 0.0) throw InvalidSpec("range parameter alpha must be positive");
    if (variant == Variant::Exponential) {
        if (q != 0.0) throw InvalidSpec("Exponential variant requires q = 0");
    } else if (q == 0.0) {
        throw InvalidSpec("q = 0 requires the Exponential variant");
    }
}

EffectiveParams effective_params(const PotentialSpec& spec) {
    switch (spec.variant) {
        case Variant::PTSymmetric:
            return {Complex{spec.V0}, Complex{spec.q}, kI * spec.alpha};
        case Variant::PseudoHermitian:
            return {kI * spec.V0, kI * spec.q, kI * spec.alpha};
        default:
            return {Complex{spec.V0}, Complex{spec.q}, Complex{spec.alpha}};
    }
}

Complex potential_value(const PotentialSpec& spec, double x) {
    spec.validate();
    switch (spec.variant) {
        case Variant::Real:
        case Variant::Exponential: {
            const double s = std::exp(-spec.alpha * x);
            const double denom = 1.0 - spec.q * s;
            if (std::abs(denom) < kPoleTol)
                throw PoleAtX("potential pole: 1 - q e^{-alpha x} = 0");
            return Complex{-spec.V0 * s / denom};
        }
        case Variant::PTSymmetric: {
            const double c = std::cos(spec.alpha * x);
            const double sn = std::sin(spec.alpha * x);
            const double denom = spec.q * spec.q - 2.0 * spec.q * c + 1.0;
            if (std::abs(denom) < kPoleTol)
                throw PoleAtX("potential pole in PT-symmetric denominator");
            return spec.V0 / denom * Complex{spec.q - c, sn};
        }
        case Variant::PseudoHermitian: {
            const double c = std::cos(spec.alpha * x);
            const double sn = std::sin(spec.alpha * x);
            const double denom = spec.q * spec.q - 2.0 * spec.q * sn + 1.0;
            if (std::abs(denom) < kPoleTol)
                throw PoleAtX("potential pole in pseudo-Hermitian denominator");
            return spec.V0 / denom * Complex{spec.q - sn, -c};
        }
    }
    throw InvalidSpec("unknown variant");
}

std::pair<Complex, Complex> potential_linear_approx(const PotentialSpec& spec) {
    if (spec.q == 1.0)
        throw DegenerateShape("linear approximation undefined at q = 1");
    const double d = spec.q - 1.0;
    return {Complex{spec.V0 / d}, Complex{spec.V0 * spec.alpha / (d * d)}};
}

HypergeometricParams hyper_params(const PotentialSpec& spec, Complex E) {
    spec.validate();
    const EffectiveParams eff = effective_params(spec);
    const Complex a = eff.alpha;
    const Complex a2 = a * a;
    HypergeometricParams hp;
    hp.eff = eff;
    hp.E = E;
    hp.gamma_q = kI * eff.q * eff.V0 / a + eff.V0 * eff.V0 / a2;
    hp.beta = kI * eff.V0 / a + 2.0 * eff.V0 * E / a2;
    hp.E_tilde = E * E - spec.m * spec.m;
    hp.eps2 = -hp.E_tilde / a2;
    hp.eps = std::sqrt(hp.eps2);
    hp.v = eff.q - 2.0 * kI * eff.V0 / a;
    hp.a_param = Complex{spec.q - 2.0 * spec.V0 / spec.alpha};
    hp.delta = eff.V0 / a;
    hp.V1 = eff.V0 * eff.V0 + kI * eff.q * a * eff.V0;
    hp.V2 = kI * a * eff.V0 + 2.0 * E * eff.V0;
    return hp;
}

std::pair<NUProblem, HypergeometricParams> map_to_nu(const PotentialSpec& spec,
                                                     Complex E) {
    HypergeometricParams hp = hyper_params(spec, E);
    if (spec.variant == Variant::Exponential) {
        const Poly2 sigma(Complex{}, Complex{1.0});
        const Poly2 tau_tilde(Complex{1.0});
        const Poly2 sigma_tilde(-hp.eps2, hp.beta, hp.delta * hp.delta);
        return {validate_problem(sigma, sigma_tilde, tau_tilde), hp};
    }
    const Complex q = hp.eff.q;
    const Poly2 sigma(Complex{}, Complex{1.0}, -q);
    const Poly2 tau_tilde(Complex{1.0}, -q);
    const Poly2 sigma_tilde(-hp.eps2, hp.beta + 2.0 * q * hp.eps2,
                            hp.gamma_q - q * hp.beta - q * q * hp.eps2);
    return {validate_problem(sigma, sigma_tilde, tau_tilde), hp};
}

Complex quantization_gap(const HypergeometricParams& hp, int n, Complex eps) {
    const Complex q = hp.eff.q;
    const Complex vq = hp.v + q;
    const double dn = static_cast<double>(n);
    const Complex lambda = hp.beta - 0.5 * vq - vq * eps;
    const Complex lambda_n = dn * (2.0 * q + hp.v + 2.0 * q * eps) + dn * (dn - 1.0) * q;
    return lambda - lambda_n;
}

Complex level_eps(const HypergeometricParams& hp, int n) {
    const Complex q = hp.eff.q;
    const double dn = static_cast<double>(n);
    const Complex num = hp.beta - 0.5 * (hp.v + q) - dn * (2.0 * q + hp.v) -
                        dn * (dn - 1.0) * q;
    const Complex den = hp.v + q + 2.0 * q * dn;
    return num / den;
}

BoundState energy_closed_form(const PotentialSpec& spec, int n, BranchSign sign) {
    spec.validate();
    if (spec.variant == Variant::Exponential)
        throw NotApplicable("no closed-form spectrum for q = 0; use the numeric path");
    const EffectiveParams eff = effective_params(spec);
    const Complex kappa = eff.q * eff.alpha * static_cast<double>(n + 1) - kI * eff.V0;
    const Complex inner =
        1.0 / (4.0 * eff.q * eff.q) - spec.m * spec.m / (eff.V0 * eff.V0 + kappa * kappa);
    const double sgn = (sign == BranchSign::Plus) ? 1.0 : -1.0;
    const Complex E = eff.V0 / (2.0 * eff.q) + sgn * kI * kappa * std::sqrt(inner);

    BoundState st;
    st.n = n;
    st.energy = E;
    st.branch_sign = sign;
    st.params_at_E = hyper_params(spec, E);
    st.params_at_E.kappa_n = kappa;

    // The NU +- enumeration contains both signs of eps; certify the state
    // against the quantization condition with whichever sign it solves.
    const Complex eps_level = level_eps(st.params_at_E, n);
    const Complex rp = quantization_gap(st.params_at_E, n, st.params_at_E.eps);
    const Complex rm = quantization_gap(st.params_at_E, n, -st.params_at_E.eps);
    if (std::abs(rp) <= std::abs(rm))
        st.discrepant = std::abs(rp) > kResidualTol;
    else {
        st.params_at_E.eps = -st.params_at_E.eps;
        st.discrepant = std::abs(rm) > kResidualTol;
    }
    // At a branch-coincidence point v + q + 2qn = 0 and eps drops out of the
    // quantization condition (level_eps is 0/0); keep the principal root.
    if (!st.discrepant && std::isfinite(eps_level.real()) && std::isfinite(eps_level.imag()))
        st.params_at_E.eps = eps_level;

    if (spec.variant == Variant::Real) {
        st.is_real_spectrum = std::abs(E.imag()) <= 1e-10 * spec.m;
    } else {
        const double kt = spec.q * spec.alpha * static_cast<double>(n + 1) - spec.V0;
        st.is_real_spectrum =
            4.0 * spec.q * spec.q * spec.m * spec.m <= spec.V0 * spec.V0 - kt * kt;
    }
    return st;
}

LevelWindow bound_window(const PotentialSpec& spec) {
    spec.validate();
    if (spec.variant != Variant::PTSymmetric && spec.variant != Variant::PseudoHermitian)
        throw NotApplicable("bound window is defined for the complexified variants");
    const double S2 = spec.V0 * spec.V0 - 4.0 * spec.q * spec.q * spec.m * spec.m;
    if (S2 < 0.0)
        throw EmptyWindow("reality condition unachievable: V0^2 < 4 q^2 m^2");
    const double S = std::sqrt(S2);
    const double qa = spec.q * spec.alpha;
    double lo = (spec.V0 - S) / qa - 1.0;
    double hi = (spec.V0 + S) / qa - 1.0;
    if (lo > hi) std::swap(lo, hi);
    LevelWindow w;
    w.n_min = std::max(0, static_cast<int>(std::ceil(lo - 1e-9)));
    w.n_max = static_cast<int>(std::floor(hi + 1e-9));
    return w;
}

std::pair<double, double> alpha_window(const PotentialSpec& spec, int n) {
    spec.validate();
    const double S2 = spec.V0 * spec.V0 - 4.0 * spec.q * spec.q * spec.m * spec.m;
    if (S2 < 0.0)
        throw EmptyWindow("reality condition unachievable: V0^2 < 4 q^2 m^2");
    const double S = std::sqrt(S2);
    const double d = spec.q * static_cast<double>(n + 1);
    double lo = (spec.V0 - S) / d;
    double hi = (spec.V0 + S) / d;
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi};
}

double critical_coupling(const PotentialSpec& spec, int n) {
    const double np1 = static_cast<double>(n + 1);
    return spec.q * spec.alpha * np1 / 2.0 +
           2.0 * spec.q * spec.m * spec.m / (spec.alpha * np1);
}

// ---------------------------------------------------------------------------
// Spinor evaluators
// ---------------------------------------------------------------------------

void SpinorEvaluator::check_pole(Complex s) const {
    if (kind_ == Kind::Jacobi && std::abs(1.0 - Q_ * s) < kPoleTol)
        throw PoleAtS("evaluation at the 1 - q s = 0 pole");
}

Complex SpinorEvaluator::map_x_to_s(double x) const {
    return std::exp(-hp_.eff.alpha * x);
}

SpinorEvaluator::Derivs SpinorEvaluator::upper_derivs(Complex s) const {
    check_pole(s);
    Derivs d;
    if (kind_ == Kind::Jacobi) {
        const Complex one_m = 1.0 - Q_ * s;
        const Complex p = cpow(s, e_) * cpow(one_m, g_);
        const Complex L = e_ / s - g_ * Q_ / one_m;
        const Complex Lp = -e_ / (s * s) - g_ * Q_ * Q_ / (one_m * one_m);
        const Complex z = 1.0 - 2.0 * Q_ * s;
        const JacobiParams jp{A_, B_};
        const Complex P = jacobi_p(n_, jp, z);
        const Complex Pz = jacobi_p_deriv(n_, jp, z);
        Complex Pzz{};
        if (n_ >= 2) {
            const Complex f1 = 0.5 * (static_cast<double>(n_) + A_ + B_ + 1.0);
            Pzz = f1 * jacobi_p_deriv(n_ - 1, {A_ + 1.0, B_ + 1.0}, z);
        }
        const Complex Ps = -2.0 * Q_ * Pz;
        const Complex Pss = 4.0 * Q_ * Q_ * Pzz;
        d.f = p * P;
        d.d1 = p * (L * P + Ps);
        d.d2 = p * ((L * L + Lp) * P + 2.0 * L * Ps + Pss);
    } else {
        const Complex eps = hp_.eps;
        const Complex delta = hp_.delta;
        const Complex w = 2.0 * kI * delta * s;
        const Complex p = cpow(s, eps) * std::exp(-kI * delta * s);
        const Complex L = eps / s - kI * delta;
        const Complex Lp = -eps / (s * s);
        const Complex F = hyp1f1({a1_, b1_, w}).value;
        const Complex Fs = 2.0 * kI * delta * a1_ / b1_ *
                           hyp1f1({a1_ + 1.0, b1_ + 1.0, w}).value;
        const Complex Fss = std::pow(2.0 * kI * delta, 2) * a1_ * (a1_ + 1.0) /
                            (b1_ * (b1_ + 1.0)) *
                            hyp1f1({a1_ + 2.0, b1_ + 2.0, w}).value;
        d.f = p * F;
        d.d1 = p * (L * F + Fs);
        d.d2 = p * ((L * L + Lp) * F + 2.0 * L * Fs + Fss);
    }
    return d;
}

SpinorEvaluator::Derivs SpinorEvaluator::lower_derivs(Complex s) const {
    check_pole(s);
    Derivs d;
    const Complex alpha = hp_.eff.alpha;
    if (kind_ == Kind::Jacobi) {
        const Complex one_m = 1.0 - Q_ * s;
        const Complex p = cpow(s, e_) * cpow(one_m, g_);
        const Complex L = e_ / s - g_ * Q_ / one_m;
        const Complex z = 1.0 - 2.0 * Q_ * s;
        const Complex eps = e_;
        const double dn = static_cast<double>(n_);
        const Complex c1 = E_ + kI * alpha * (dn + eps + B_ + 1.0);
        const Complex c2 = hp_.eff.V0 + kI * alpha * 0.5 * (hp_.v + hp_.eff.q);
        const Complex c3 = kI * alpha * (dn + 2.0 * eps + B_ + 1.0);
        const Complex u = s / one_m;
        const Complex up = 1.0 / (one_m * one_m);
        const JacobiParams jp{A_, B_};
        const JacobiParams jps{A_, B_ + 1.0};
        const Complex P = jacobi_p(n_, jp, z);
        const Complex Ps = -2.0 * Q_ * jacobi_p_deriv(n_, jp, z);
        const Complex Pt = jacobi_p(n_, jps, z);
        const Complex Pts = -2.0 * Q_ * jacobi_p_deriv(n_, jps, z);
        d.f = p * ((c1 + c2 * u) * P - c3 * Pt);
        d.d1 = p * (L * ((c1 + c2 * u) * P - c3 * Pt) + c2 * up * P +
                    (c1 + c2 * u) * Ps - c3 * Pts);
    } else {
        const Complex eps = hp_.eps;
        const Complex delta = hp_.delta;
        const Complex w = 2.0 * kI * delta * s;
        const Complex d1c = E_ - kI * alpha * eps;
        const Complex d2c = 2.0 * hp_.eff.V0 / b1_ * a1_;
        const Complex p = cpow(s, eps) * std::exp(-kI * delta * s);
        const Complex p2 = cpow(s, eps + 1.0) * std::exp(-kI * delta * s);
        const Complex L = eps / s - kI * delta;
        const Complex L2 = (eps + 1.0) / s - kI * delta;
        const Complex F = hyp1f1({a1_, b1_, w}).value;
        const Complex F2 = hyp1f1({a1_ + 1.0, b1_ + 1.0, w}).value;
        const Complex Fs = 2.0 * kI * delta * a1_ / b1_ * F2;
        const Complex F2s = 2.0 * kI * delta * (a1_ + 1.0) / (b1_ + 1.0) *
                            hyp1f1({a1_ + 2.0, b1_ + 2.0, w}).value;
        d.f = d1c * p * F + d2c * p2 * F2;
        d.d1 = d1c * p * (L * F + Fs) + d2c * p2 * (L2 * F2 + F2s);
    }
    return d;
}

SpinorEval SpinorEvaluator::at_s(Complex s) const {
    SpinorEval ev;
    ev.s = s;
    ev.upper = upper_derivs(s).f;
    ev.lower = lower_derivs(s).f;
    return ev;
}

SpinorEval SpinorEvaluator::at_x(double x) const {
    SpinorEval ev = at_s(map_x_to_s(x));
    ev.x = x;
    ev.has_x = true;
    return ev;
}

SpinorEvaluator spinor_state(const PotentialSpec& spec, const BoundState& state) {
    spec.validate();
    if (spec.variant == Variant::Exponential)
        throw NotApplicable("q = 0 states use q0_state");
    SpinorEvaluator ev;
    ev.kind_ = SpinorEvaluator::Kind::Jacobi;
    ev.hp_ = state.params_at_E;
    ev.E_ = state.energy;
    ev.n_ = state.n;
    ev.Q_ = ev.hp_.eff.q;
    ev.e_ = ev.hp_.eps;
    ev.g_ = (ev.hp_.v + ev.hp_.eff.q) / (2.0 * ev.hp_.eff.q);
    ev.A_ = 2.0 * ev.hp_.eps;
    ev.B_ = ev.hp_.v / ev.hp_.eff.q;
    return ev;
}

SpinorEvaluator q0_state(const PotentialSpec& spec, Complex E) {
    spec.validate();
    if (spec.variant != Variant::Exponential)
        throw NotApplicable("q0_state requires the Exponential (q = 0) variant");
    SpinorEvaluator ev;
    ev.kind_ = SpinorEvaluator::Kind::Confluent;
    ev.hp_ = hyper_params(spec, E);
    ev.E_ = E;
    ev.n_ = 0;
    // 1F1 parameters: 1/2 + eps + i beta/(2 delta) simplifies to eps + i E/alpha.
    ev.a1_ = ev.hp_.eps + kI * E / spec.alpha;
    ev.b1_ = 1.0 + 2.0 * ev.hp_.eps;
    // Surface the b-pole immediately rather than on first evaluation.
    (void)hyp1f1({ev.a1_, ev.b1_, Complex{}});
    return ev;
}

double l2_norm(const SpinorEvaluator& ev, double mass, double x0, double x1,
               int n_points) {
    if (n_points < 3) n_points = 3;
    if (n_points % 2 == 0) ++n_points;
    const double h = (x1 - x0) / static_cast<double>(n_points - 1);
    auto density = [&](double x) {
        const SpinorEval e = ev.at_x(x);
        const Complex theta = e.lower / mass;
        return std::norm(e.upper) + std::norm(theta);
    };
    double acc = density(x0) + density(x1);
    for (int i = 1; i < n_points - 1; ++i)
        acc += (i % 2 == 1 ? 4.0 : 2.0) * density(x0 + h * static_cast<double>(i));
    return std::sqrt(acc * h / 3.0);
}

}  // namespace diracnu
