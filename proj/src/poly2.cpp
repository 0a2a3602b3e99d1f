#include "diracnu/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diracnu {

double Poly2::max_coeff_mag() const {
    return std::max({std::abs(c0), std::abs(c1), std::abs(c2)});
}

int Poly2::degree(double tol) const {
    const double scale = max_coeff_mag();
    if (scale == 0.0) return 0;
    const double cut = tol * scale;
    if (std::abs(c2) > cut) return 2;
    if (std::abs(c1) > cut) return 1;
    return 0;
}

bool Poly2::is_zero(double tol) const {
    (void)tol;
    return max_coeff_mag() == 0.0;
}

std::string to_string(const Poly2& p) {
    std::ostringstream os;
    os << "(" << p.c0.real() << (p.c0.imag() < 0 ? "-" : "+") << std::abs(p.c0.imag()) << "i)"
       << " + (" << p.c1.real() << (p.c1.imag() < 0 ? "-" : "+") << std::abs(p.c1.imag()) << "i)z"
       << " + (" << p.c2.real() << (p.c2.imag() < 0 ? "-" : "+") << std::abs(p.c2.imag()) << "i)z^2";
    return os.str();
}

}  // namespace diracnu
