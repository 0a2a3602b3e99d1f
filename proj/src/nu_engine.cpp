#include "diracnu/nu_engine.hpp"

#include <algorithm>
#include <cmath>

namespace diracnu {

namespace {

constexpr double kDiscTol = 1e-10;

// Expression under the square root of the pi formula:
//   p(z) = ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma.
Poly2 under_sqrt(const NUProblem& pr, Complex k) {
    const Poly2 h = (pr.sigma.derivative() - pr.tau_tilde) * 0.5;
    const Poly2 h2(h.c0 * h.c0, 2.0 * h.c0 * h.c1, h.c1 * h.c1);
    return h2 - pr.sigma_tilde + k * pr.sigma;
}

}  // namespace

NUProblem validate_problem(const Poly2& sigma, const Poly2& sigma_tilde,
                           const Poly2& tau_tilde) {
    if (sigma.is_zero())
        throw DegreeViolation("sigma is the zero polynomial");
    if (tau_tilde.degree() > 1)
        throw DegreeViolation("tau_tilde has degree > 1: " + to_string(tau_tilde));
    // sigma, sigma_tilde are stored as Poly2 so degree <= 2 holds by type.
    return NUProblem{sigma, sigma_tilde, tau_tilde};
}

std::vector<Complex> k_candidates(const NUProblem& problem) {
    const Poly2 h = (problem.sigma.derivative() - problem.tau_tilde) * 0.5;
    // p(z) = a(k) z^2 + b(k) z + c(k), each coefficient linear in k.
    const Complex a0 = h.c1 * h.c1 - problem.sigma_tilde.c2;
    const Complex a1 = problem.sigma.c2;
    const Complex b0 = 2.0 * h.c0 * h.c1 - problem.sigma_tilde.c1;
    const Complex b1 = problem.sigma.c1;
    const Complex c0 = h.c0 * h.c0 - problem.sigma_tilde.c0;
    const Complex c1 = problem.sigma.c0;

    // Discriminant b^2 - 4ac as a quadratic in k.
    const Complex A2 = b1 * b1 - 4.0 * a1 * c1;
    const Complex A1 = 2.0 * b0 * b1 - 4.0 * (a0 * c1 + a1 * c0);
    const Complex A0 = b0 * b0 - 4.0 * a0 * c0;

    const double scale = std::max({std::abs(A2), std::abs(A1), std::abs(A0)});
    if (scale == 0.0)
        throw NoSolution("discriminant equation in k vanishes identically");
    const double cut = kDegreeTol * scale;

    std::vector<Complex> ks;
    if (std::abs(A2) > cut) {
        const Complex disc = A1 * A1 - 4.0 * A2 * A0;
        const Complex r = std::sqrt(disc);
        const Complex k1 = (-A1 + r) / (2.0 * A2);
        const Complex k2 = (-A1 - r) / (2.0 * A2);
        ks.push_back(k1);
        const double ksc = std::max({std::abs(k1), std::abs(k2), 1.0});
        if (std::abs(k1 - k2) > kDegreeTol * ksc) ks.push_back(k2);
    } else if (std::abs(A1) > cut) {
        ks.push_back(-A0 / A1);
    } else {
        throw NoSolution("discriminant equation in k is degenerate with no root");
    }
    return ks;
}

std::vector<Poly2> pi_candidates(const NUProblem& problem, Complex k) {
    const Poly2 p = under_sqrt(problem, k);
    const double scale = p.max_coeff_mag();
    const Complex disc = p.c1 * p.c1 - 4.0 * p.c2 * p.c0;
    if (std::abs(disc) > kDiscTol * scale * scale)
        throw NotPerfectSquare("under-sqrt quadratic has nonzero discriminant for k");

    // Exact linear square root r(z) via the principal branch; the +- pair
    // below covers the other sign.
    Poly2 r;
    if (std::abs(p.c2) > kDegreeTol * scale) {
        const Complex sa = std::sqrt(p.c2);
        r = Poly2(p.c1 / (2.0 * sa), sa);
    } else {
        r = Poly2(std::sqrt(p.c0));
    }
    const Poly2 h = (problem.sigma.derivative() - problem.tau_tilde) * 0.5;
    return {h + r, h - r};
}

NUBranch assemble_branch(const NUProblem& problem, Complex k, const Poly2& pi,
                         SqrtSign sign) {
    NUBranch b;
    b.k = k;
    b.pi = Poly2(pi.c0, pi.c1);
    b.tau = problem.tau_tilde + 2.0 * b.pi;
    b.lambda = k + b.pi.c1;
    b.sqrt_sign = sign;
    b.admissible = b.tau.c1.real() < 0.0;
    b.sigma_dd = problem.sigma.second_derivative();
    return b;
}

std::vector<NUBranch> enumerate_branches(const NUProblem& problem) {
    std::vector<NUBranch> out;
    for (Complex k : k_candidates(problem)) {
        const auto pis = pi_candidates(problem, k);
        out.push_back(assemble_branch(problem, k, pis[0], SqrtSign::Plus));
        out.push_back(assemble_branch(problem, k, pis[1], SqrtSign::Minus));
    }
    return out;
}

const NUBranch& select_branch(const std::vector<NUBranch>& branches,
                              BranchPolicy policy, int explicit_index) {
    if (branches.empty()) throw AmbiguousBranch("empty branch list");
    if (policy == BranchPolicy::ExplicitIndex) {
        if (explicit_index < 0 || explicit_index >= static_cast<int>(branches.size()))
            throw AmbiguousBranch("explicit branch index out of range");
        return branches[static_cast<size_t>(explicit_index)];
    }
    const NUBranch* found = nullptr;
    int count = 0;
    for (const auto& b : branches) {
        if (b.admissible) {
            found = &b;
            ++count;
        }
    }
    if (count != 1)
        throw AmbiguousBranch("PaperDefault requires a unique admissible branch, found " +
                              std::to_string(count));
    return *found;
}

Complex eigen_lambda(const NUBranch& branch, int n) {
    const double dn = static_cast<double>(n);
    return -dn * branch.tau.c1 - 0.5 * dn * (dn - 1.0) * branch.sigma_dd;
}

namespace {

// sigma = c1 s (1 - q s) with q != 0, or sigma = c1 s.  Anything else is
// outside the two weight classes this artifact needs.
struct SigmaShape {
    bool power_power;
    Complex c1;
    Complex q;
};

SigmaShape classify_sigma(const Poly2& sigma) {
    const double scale = sigma.max_coeff_mag();
    if (scale == 0.0 || std::abs(sigma.c0) > kDegreeTol * scale ||
        std::abs(sigma.c1) <= kDegreeTol * scale)
        throw UnsupportedSigmaClass("sigma must be c1*s or c1*s*(1-q*s): " + to_string(sigma));
    if (std::abs(sigma.c2) > kDegreeTol * scale)
        return {true, sigma.c1, -sigma.c2 / sigma.c1};
    return {false, sigma.c1, Complex{}};
}

// Partial-fraction exponents for n(s)/(c1 s (1-qs)) = A/s - qB/(1-qs),
// i.e. A - q(A+B) s = n(s)/c1.
WeightSpec power_power_exponents(const SigmaShape& sh, Complex n0, Complex n1) {
    WeightSpec w;
    w.cls = WeightClass::PowerPower;
    w.q_node = sh.q;
    w.A = n0 / sh.c1;
    w.B = -n1 / (sh.c1 * sh.q) - w.A;
    return w;
}

}  // namespace

WeightSpec pearson_weight(const NUBranch& branch, const NUProblem& problem) {
    const SigmaShape sh = classify_sigma(problem.sigma);
    // rho'/rho = (tau - sigma')/sigma.
    const Poly2 num = branch.tau - problem.sigma.derivative();
    if (sh.power_power) return power_power_exponents(sh, num.c0, num.c1);
    WeightSpec w;
    w.cls = WeightClass::PowerExp;
    w.A = num.c0 / sh.c1;
    w.B = num.c1 / sh.c1;
    return w;
}

ClassicalPolyRef rodrigues_polynomial(const NUBranch& branch, const WeightSpec& weight,
                                      int n) {
    (void)branch;
    ClassicalPolyRef ref;
    ref.n = n;
    if (weight.cls == WeightClass::PowerPower) {
        ref.family = PolyFamily::Jacobi;
        ref.a = weight.A;
        ref.b = weight.B;
        ref.arg0 = Complex{1.0, 0.0};
        ref.arg1 = -2.0 * weight.q_node;
    } else {
        // rho = s^A e^{Bs} is the Laguerre weight t^A e^{-t} in t = -B s.
        ref.family = PolyFamily::Laguerre;
        ref.a = weight.A;
        ref.b = Complex{};
        ref.arg0 = Complex{};
        ref.arg1 = -weight.B;
    }
    return ref;
}

WeightSpec phi_factor(const NUBranch& branch, const NUProblem& problem) {
    const SigmaShape sh = classify_sigma(problem.sigma);
    if (sh.power_power) return power_power_exponents(sh, branch.pi.c0, branch.pi.c1);
    WeightSpec w;
    w.cls = WeightClass::PowerExp;
    w.A = branch.pi.c0 / sh.c1;
    w.B = branch.pi.c1 / sh.c1;
    return w;
}

}  // namespace diracnu
