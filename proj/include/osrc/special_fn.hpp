#ifndef OSRC_SPECIAL_FN_HPP
#define OSRC_SPECIAL_FN_HPP

#include <complex>

namespace osrc
{

using cplx = std::complex<double>;

struct SpecialFnConfig
{
  int max_order = 2048;
  // Extra terms above max(m, |x|) where the downward ratio recurrence starts.
  int backward_offset = 40;
};

// Value and derivative of a Riccati-Bessel function. Both carry the common factor
// 2^exponent so that very small or very large magnitudes stay representable.
struct RiccatiPair
{
  cplx value;
  cplx derivative;
  int exponent = 0;

  cplx Value() const;
  cplx Derivative() const;
  // Natural log of |value| including the binary exponent.
  double LogAbsValue() const;
};

// psi_m(x) = x j_m(x).
RiccatiPair riccati_psi(int m, cplx x, const SpecialFnConfig &config = {});

// Riccati-Neumann part zeta_m(x) = x y_m(x), upward recurrence.
RiccatiPair riccati_zeta(int m, cplx x, const SpecialFnConfig &config = {});

// xi_m(x) = x h1_m(x) = psi_m + i zeta_m.
RiccatiPair riccati_xi1(int m, cplx x, const SpecialFnConfig &config = {});

// Product a*b of two scaled values, returned unscaled (may overflow to inf).
cplx ScaledProduct(cplx a, int ea, cplx b, int eb);

}  // namespace osrc

#endif  // OSRC_SPECIAL_FN_HPP
