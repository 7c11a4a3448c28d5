#pragma once

#include "trapcosmo/numerics.hpp"

namespace trapcosmo {

// Gamma(z) on the principal branch: Lanczos approximation (g = 7, 9 terms)
// for Re z >= 1/2, reflection formula otherwise. Relative accuracy is about
// 2e-13 for |z| <= 50. A point within 1e-14 of a nonpositive integer raises
// PoleError.
Complex gamma(Complex z);

// Upper incomplete Gamma(z, b) for complex z and b, principal branch of b^z.
// Lower-series route for |b| < |z| + 1, Lentz continued fraction otherwise;
// either route exceeding 10000 iterations raises ConvergenceError. The b -> 0
// endpoint has no limit when Re z <= 0 (the phase of b^z keeps rotating), so
// |b| < 1e-8 with Re z <= 0 raises DomainError rather than guessing.
Complex upper_incomplete_gamma(Complex z, Complex b);

// Q(z, b) = upper_incomplete_gamma(z, b) / gamma(z).
Complex regularized_q(Complex z, Complex b);

namespace detail {

// upper_incomplete_gamma without the small-|b| rejection. Intended for
// closed-form response evaluation at an exact machine-representable endpoint,
// where the computation is well conditioned even though the b -> 0 limit does
// not exist. b must be nonzero when Re z <= 0.
Complex upper_incomplete_gamma_at(Complex z, Complex b);

}  // namespace detail

}  // namespace trapcosmo
