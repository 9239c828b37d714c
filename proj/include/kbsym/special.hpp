#pragma once

#include <complex>

namespace kbsym {

using cplx = std::complex<double>;

// Kummer's confluent hypergeometric M(a, b, z) by direct series, summed to
// relative stagnation 1e-14.  Intended for |z| <= 30; throws NoConvergence
// beyond the trusted regime and PoleParameter when b is a nonpositive
// integer.
cplx kummer_M(cplx a, cplx b, cplx z);

// Complex gamma function (Lanczos, reflection for Re z < 1/2).
cplx gamma_c(cplx z);

enum class WhittakerKind { M, W };

// Whittaker functions via the Kummer connection formulas. Requires 2b not an
// integer (throws PoleParameter) and z off the negative real axis (throws
// BranchCut).
cplx whittaker(WhittakerKind kind, cplx a, cplx b, cplx z);

struct PoleParameter : std::domain_error {
    using std::domain_error::domain_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BranchCut : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace kbsym
