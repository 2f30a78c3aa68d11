#pragma once

#include "lincrit/bigfloat.hpp"
#include "lincrit/poly.hpp"

#include <vector>

namespace lincrit {

// A root z of p with a disk of the given radius around it that contains exactly one
// root of the square-free factor it came from.
struct CertifiedRoot {
  BigComplex z;
  BigFloat radius;
  int multiplicity = 1;
};

struct RootProfile {
  // Each distinct root once, with its multiplicity.
  std::vector<CertifiedRoot> roots;
  // Root moduli repeated by multiplicity, sorted descending, with enclosure radii.
  std::vector<BigFloat> moduli;
  std::vector<BigFloat> moduli_radius;
  // tied[i]: the enclosures of moduli[i] and moduli[i+1] overlap.
  std::vector<bool> tied;
  bool any_tie = false;
  mpfr_prec_t precision = 0;
};

// All complex roots of p (deg >= 1). The rational square-free part is split off exactly,
// each factor is solved by Aberth iteration, and every root receives an inclusion disk of
// radius deg * |f(z)| / |lc * prod (z - z_j)| evaluated in outward-rounded ball arithmetic.
// Disks must be pairwise disjoint with radius below 2^(-prec/2); otherwise the working
// precision doubles, at most three times, before PrecisionError is thrown.
RootProfile poly_roots(const Poly& p, mpfr_prec_t prec);

// Ball evaluation of p at a disk.
ComplexBall eval_ball(const Poly& p, const ComplexBall& z);

}  // namespace lincrit
