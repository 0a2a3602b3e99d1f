#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace diracnu {

using Complex = std::complex<double>;

// Relative zero-tolerance used for degree detection and coefficient checks.
inline constexpr double kDegreeTol = 1e-12;

struct DegreeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Polynomial of degree at most two with complex coefficients,
/// stored as c0 + c1*z + c2*z^2.
struct Poly2 {
    Complex c0{0.0, 0.0};
    Complex c1{0.0, 0.0};
    Complex c2{0.0, 0.0};

    Poly2() = default;
    Poly2(Complex a0) : c0(a0) {}
    Poly2(Complex a0, Complex a1) : c0(a0), c1(a1) {}
    Poly2(Complex a0, Complex a1, Complex a2) : c0(a0), c1(a1), c2(a2) {}

    Complex eval(Complex z) const { return c0 + z * (c1 + z * c2); }

    /// First derivative (degree drops by one).
    Poly2 derivative() const { return Poly2(c1, 2.0 * c2); }

    /// Second derivative as a scalar.
    Complex second_derivative() const { return 2.0 * c2; }

    double max_coeff_mag() const;

    /// Degree under the relative zero-tolerance; the zero polynomial
    /// reports degree 0.
    int degree(double tol = kDegreeTol) const;

    bool is_zero(double tol = kDegreeTol) const;

    Poly2 operator+(const Poly2& o) const { return Poly2(c0 + o.c0, c1 + o.c1, c2 + o.c2); }
    Poly2 operator-(const Poly2& o) const { return Poly2(c0 - o.c0, c1 - o.c1, c2 - o.c2); }
    Poly2 operator*(Complex s) const { return Poly2(c0 * s, c1 * s, c2 * s); }
};

inline Poly2 operator*(Complex s, const Poly2& p) { return p * s; }

std::string to_string(const Poly2& p);

}  // namespace diracnu
