#include "kbsym/special.hpp"

#include <cmath>
#include <stdexcept>

namespace kbsym {

namespace {
bool near_nonpositive_integer(cplx b) {
    if (std::abs(b.imag()) > 1e-12) return false;
    double r = b.real();
    return r < 0.5 && std::abs(r - std::round(r)) < 1e-12;
}

bool near_integer(cplx b) {
    return std::abs(b.imag()) < 1e-12 && std::abs(b.real() - std::round(b.real())) < 1e-12;
}
}  // namespace

cplx kummer_M(cplx a, cplx b, cplx z) {
    if (near_nonpositive_integer(b)) throw PoleParameter("kummer_M: b is a nonpositive integer");
    if (std::abs(z) > 30.0) throw NoConvergence("kummer_M: |z| > 30 outside series regime");
    cplx term(1.0, 0.0);
    cplx sum(1.0, 0.0);
    for (int n = 0; n < 500; ++n) {
        term *= (a + cplx(n)) / (b + cplx(n)) * z / cplx(n + 1);
        cplx prev = sum;
        sum += term;
        if (std::abs(term) <= 1e-14 * (1.0 + std::abs(sum)) && n > 3) return sum;
        (void)prev;
    }
    throw NoConvergence("kummer_M: series did not stagnate");
}

cplx gamma_c(cplx z) {
    // Lanczos approximation, g = 7, 9 coefficients.
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const double pi = 3.14159265358979323846;
        return pi / (std::sin(pi * z) * gamma_c(cplx(1.0) - z));
    }
    z -= cplx(1.0);
    cplx x(c[0]);
    for (int i = 1; i < 9; ++i) x += c[i] / (z + cplx(i));
    cplx t = z + cplx(g + 0.5);
    const double sqrt2pi = 2.5066282746310002;
    return sqrt2pi * std::pow(t, z + cplx(0.5)) * std::exp(-t) * x;
}

cplx whittaker(WhittakerKind kind, cplx a, cplx b, cplx z) {
    if (near_integer(cplx(2.0) * b)) throw PoleParameter("whittaker: 2b is an integer");
    if (std::abs(z.imag()) < 1e-300 && z.real() < 0.0) throw BranchCut("whittaker: z on negative real axis");
    auto Mk = [&](cplx bb) {
        return std::exp(-z / 2.0) * std::pow(z, bb + cplx(0.5)) *
               kummer_M(bb - a + cplx(0.5), cplx(1.0) + cplx(2.0) * bb, z);
    };
    if (kind == WhittakerKind::M) return Mk(b);
    cplx c1 = gamma_c(cplx(-2.0) * b) / gamma_c(cplx(0.5) - b - a);
    cplx c2 = gamma_c(cplx(2.0) * b) / gamma_c(cplx(0.5) + b - a);
    return c1 * Mk(b) + c2 * Mk(-b);
}

}  // namespace kbsym
