#ifndef OSRC_PADE_HPP
#define OSRC_PADE_HPP

#include <complex>
#include <vector>

namespace osrc
{

using cplx = std::complex<double>;

// Rotated Pade approximant of (1 + z)^{1/2}:
//   C0 + sum_l A_l z / (1 + B_l z)  =  F0 - sum_l A_l / (B_l (1 + B_l z)).
struct SqrtPadeCoeffs
{
  int order = 0;
  double theta = 0.0;
  cplx C0;
  cplx F0;
  std::vector<cplx> A;
  std::vector<cplx> B;
};

// Rotated partial-fraction approximant of (1 + z)^{-1/2}:  sum_l R_l / (S_l + z).
struct InvSqrtPadeCoeffs
{
  int order = 0;
  double theta = 0.0;
  std::vector<double> c;
  std::vector<double> d;
  std::vector<cplx> R;
  std::vector<cplx> S;
};

// Real Pade coefficients a_l, b_l (l = 1..order) of (1 + w)^{1/2}.
void SqrtPadeRealCoeffs(int order, std::vector<double> &a, std::vector<double> &b);

SqrtPadeCoeffs sqrt_pade(int order, double theta);
InvSqrtPadeCoeffs invsqrt_pade(int order, double theta);

cplx eval_sqrt_pade(const SqrtPadeCoeffs &coeffs, cplx z);
cplx eval_invsqrt_pade(const InvSqrtPadeCoeffs &coeffs, cplx z);

// Branches the approximants target: e^{i theta/2} (e^{-i theta}(1+z))^{1/2} with the
// principal root, cut along 1 + z in e^{i theta}(-inf, 0]; and its reciprocal.
cplx rotated_sqrt(cplx z, double theta);
cplx rotated_invsqrt(cplx z, double theta);

}  // namespace osrc

#endif  // OSRC_PADE_HPP
