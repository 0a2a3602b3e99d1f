#include "diracnu/special_functions.hpp"

#include <cmath>
#include <vector>

namespace diracnu {

namespace {
constexpr int kMaxTerms = 10000;
constexpr double kSeriesTol = 1e-16;
constexpr double kRecurrenceTol = 1e-8;

bool is_nonpositive_integer(Complex x) {
    if (x.imag() != 0.0) return false;
    const double r = x.real();
    return r <= 0.0 && r == std::round(r);
}
}  // namespace

Complex gen_binomial(Complex x, int k) {
    Complex out{1.0, 0.0};
    for (int i = 1; i <= k; ++i)
        out *= (x - static_cast<double>(k - i)) / static_cast<double>(i);
    return out;
}

Complex jacobi_p_sum(int n, const JacobiParams& params, Complex z) {
    // P_n^{(a,b)}(z) = sum_j binom(n+a, n-j) binom(n+b, j)
    //                  ((z-1)/2)^j ((z+1)/2)^{n-j}
    const Complex zm = 0.5 * (z - 1.0);
    const Complex zp = 0.5 * (z + 1.0);
    Complex sum{};
    for (int j = 0; j <= n; ++j) {
        Complex term = gen_binomial(params.a + static_cast<double>(n), n - j) *
                       gen_binomial(params.b + static_cast<double>(n), j);
        for (int i = 0; i < j; ++i) term *= zm;
        for (int i = 0; i < n - j; ++i) term *= zp;
        sum += term;
    }
    return sum;
}

Complex jacobi_p(int n, const JacobiParams& params, Complex z) {
    if (n == 0) return Complex{1.0, 0.0};
    const Complex a = params.a;
    const Complex b = params.b;
    Complex pm1{1.0, 0.0};                                   // P_0
    Complex p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;     // P_1
    if (n == 1) return p;
    const double pscale = std::max({std::abs(a), std::abs(b), std::abs(z), 1.0});
    for (int m = 2; m <= n; ++m) {
        const Complex dm{static_cast<double>(m), 0.0};
        const Complex s = 2.0 * dm + a + b;  // 2m+a+b
        const Complex den = 2.0 * dm * (dm + a + b) * (s - 2.0);
        if (std::abs(den) < kRecurrenceTol * pscale) return jacobi_p_sum(n, params, z);
        const Complex c1 = (s - 1.0) * ((s * (s - 2.0)) * z + a * a - b * b);
        const Complex c2 = 2.0 * (dm + a - 1.0) * (dm + b - 1.0) * s;
        const Complex next = (c1 * p - c2 * pm1) / den;
        pm1 = p;
        p = next;
    }
    return p;
}

Complex jacobi_p_deriv(int n, const JacobiParams& params, Complex z) {
    if (n == 0) return Complex{};
    const Complex factor = 0.5 * (static_cast<double>(n) + params.a + params.b + 1.0);
    return factor * jacobi_p(n - 1, {params.a + 1.0, params.b + 1.0}, z);
}

Hyp1F1Result hyp1f1(const Hyp1F1Args& args) {
    if (is_nonpositive_integer(args.b))
        throw PoleAtB("1F1 parameter b is zero or a negative integer");

    // Polynomial case: a a nonpositive integer terminates the series exactly.
    int terminate_at = -1;
    if (is_nonpositive_integer(args.a))
        terminate_at = static_cast<int>(-args.a.real());

    Complex term{1.0, 0.0};
    Complex sum{1.0, 0.0};
    int quiet = 0;
    for (int j = 0; j < kMaxTerms; ++j) {
        if (terminate_at >= 0 && j >= terminate_at)
            return {sum, 0.0};
        term *= (args.a + static_cast<double>(j)) /
                (args.b + static_cast<double>(j)) * args.z / static_cast<double>(j + 1);
        sum += term;
        if (terminate_at < 0) {
            if (std::abs(term) <= kSeriesTol * std::abs(sum))
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 3) return {sum, std::abs(term)};
        }
    }
    throw NonConvergence("1F1 series did not converge within term cap", sum,
                         std::abs(term));
}

Complex hyp1f1_deriv(const Hyp1F1Args& args) {
    return args.a / args.b * hyp1f1({args.a + 1.0, args.b + 1.0, args.z}).value;
}

Complex laguerre_l(int n, Complex a, Complex t) {
    return gen_binomial(a + static_cast<double>(n), n) *
           hyp1f1({Complex{static_cast<double>(-n), 0.0}, a + 1.0, t}).value;
}

}  // namespace diracnu
