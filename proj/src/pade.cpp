#include "osrc/pade.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "osrc/errors.hpp"

namespace osrc
{

namespace
{

constexpr double kPoleTolerance = 1e-14;

void CheckParameters(int order, double theta)
{
  if (order < 1)
  {
    throw ParameterError("Pade order must be at least 1, got " + std::to_string(order));
  }
  if (!(theta > -std::numbers::pi && theta <= std::numbers::pi))
  {
    throw ParameterError("Pade rotation angle must lie in (-pi, pi]");
  }
}

}  // namespace

void SqrtPadeRealCoeffs(int order, std::vector<double> &a, std::vector<double> &b)
{
  a.resize(order);
  b.resize(order);
  const double den = 2.0 * order + 1.0;
  for (int l = 1; l <= order; ++l)
  {
    const double s = std::sin(l * std::numbers::pi / den);
    const double c = std::cos(l * std::numbers::pi / den);
    a[l - 1] = 2.0 / den * s * s;
    b[l - 1] = c * c;
  }
}

SqrtPadeCoeffs sqrt_pade(int order, double theta)
{
  CheckParameters(order, theta);
  std::vector<double> a, b;
  SqrtPadeRealCoeffs(order, a, b);
  const cplx i(0.0, 1.0);
  const cplx rot = std::exp(-i * theta);
  SqrtPadeCoeffs p;
  p.order = order;
  p.theta = theta;
  p.A.resize(order);
  p.B.resize(order);
  cplx r = 1.0;
  for (int l = 0; l < order; ++l)
  {
    const cplx den = 1.0 + b[l] * (rot - 1.0);
    p.A[l] = std::exp(-i * theta / 2.0) * a[l] / (den * den);
    p.B[l] = rot * b[l] / den;
    r += a[l] * (rot - 1.0) / den;
  }
  p.C0 = std::exp(i * theta / 2.0) * r;
  p.F0 = p.C0;
  for (int l = 0; l < order; ++l)
  {
    p.F0 += p.A[l] / p.B[l];
  }
  return p;
}

InvSqrtPadeCoeffs invsqrt_pade(int order, double theta)
{
  CheckParameters(order, theta);
  const cplx i(0.0, 1.0);
  InvSqrtPadeCoeffs p;
  p.order = order;
  p.theta = theta;
  p.c.resize(order);
  p.d.resize(order);
  p.R.resize(order);
  p.S.resize(order);
  for (int l = 0; l < order; ++l)
  {
    const double t = std::tan(std::numbers::pi / (2.0 * order) * (0.5 + l));
    p.c[l] = (1.0 + t * t) / order;
    p.d[l] = order * p.c[l];
    p.R[l] = std::exp(i * theta / 2.0) * p.c[l];
    p.S[l] = 1.0 - std::exp(i * theta) + p.d[l] * std::exp(i * theta);
  }
  return p;
}

cplx eval_sqrt_pade(const SqrtPadeCoeffs &p, cplx z)
{
  cplx sum = p.C0;
  for (int l = 0; l < p.order; ++l)
  {
    const cplx den = 1.0 + p.B[l] * z;
    if (std::abs(den) < kPoleTolerance)
    {
      throw SingularEvaluationError("square-root Pade term " + std::to_string(l + 1) +
                                        " evaluated at its pole",
                                    l + 1);
    }
    sum += p.A[l] * z / den;
  }
  return sum;
}

cplx eval_invsqrt_pade(const InvSqrtPadeCoeffs &p, cplx z)
{
  cplx sum = 0.0;
  for (int l = 0; l < p.order; ++l)
  {
    const cplx den = p.S[l] + z;
    if (std::abs(den) < kPoleTolerance)
    {
      throw SingularEvaluationError("inverse square-root Pade term " + std::to_string(l) +
                                        " evaluated at its pole",
                                    l);
    }
    sum += p.R[l] / den;
  }
  return sum;
}

cplx rotated_sqrt(cplx z, double theta)
{
  const cplx i(0.0, 1.0);
  return std::exp(i * theta / 2.0) * std::sqrt(std::exp(-i * theta) * (1.0 + z));
}

cplx rotated_invsqrt(cplx z, double theta)
{
  return 1.0 / rotated_sqrt(z, theta);
}

}  // namespace osrc
