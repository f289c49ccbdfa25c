#include "osrc/special_fn.hpp"

#include <cmath>
#include <vector>

#include "osrc/errors.hpp"

namespace osrc
{

namespace
{

constexpr int kRescaleBits = 400;

cplx Ldexp(cplx z, int e)
{
  return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)};
}

// Rescale a (prev, cur) pair so that the larger magnitude of cur sits near 1.
void Renormalize(cplx &prev, cplx &cur, int &exponent)
{
  const double mag = std::max(std::abs(cur.real()), std::abs(cur.imag()));
  if (mag == 0.0 || !std::isfinite(mag))
  {
    return;
  }
  int e;
  std::frexp(mag, &e);
  if (e > kRescaleBits || e < -kRescaleBits)
  {
    prev = Ldexp(prev, -e);
    cur = Ldexp(cur, -e);
    exponent += e;
  }
}

void CheckArguments(int m, cplx x, const SpecialFnConfig &config)
{
  if (m < 0)
  {
    throw ParameterError("Riccati-Bessel order must be non-negative");
  }
  if (m > config.max_order)
  {
    throw OrderError("Riccati-Bessel order " + std::to_string(m) + " exceeds maximum " +
                     std::to_string(config.max_order));
  }
  if (x == cplx(0.0, 0.0))
  {
    throw DomainError("Riccati-Bessel functions are undefined at x = 0");
  }
}

}  // namespace

cplx RiccatiPair::Value() const
{
  return Ldexp(value, exponent);
}

cplx RiccatiPair::Derivative() const
{
  return Ldexp(derivative, exponent);
}

double RiccatiPair::LogAbsValue() const
{
  return std::log(std::abs(value)) + exponent * std::log(2.0);
}

cplx ScaledProduct(cplx a, int ea, cplx b, int eb)
{
  return Ldexp(a * b, ea + eb);
}

RiccatiPair riccati_psi(int m, cplx x, const SpecialFnConfig &config)
{
  CheckArguments(m, x, config);
  const cplx s = std::sin(x), c = std::cos(x);
  if (m == 0)
  {
    return {s, c, 0};
  }
  const double ax = std::abs(x);

  // Upward recurrence is stable while the order stays below |x|.
  const int k0 = static_cast<int>(std::min<double>(m, std::floor(ax)));
  cplx prev = c, cur = s;  // psi_{-1} = cos x, psi_0 = sin x
  for (int k = 0; k < k0; ++k)
  {
    const cplx next = (2.0 * k + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  if (k0 == m)
  {
    return {cur, prev - static_cast<double>(m) / x * cur, 0};
  }

  // Downward recurrence for ratios rho_k = psi_k / psi_{k-1}.
  const int start = m + config.backward_offset + static_cast<int>(std::ceil(ax));
  std::vector<cplx> rho(m + 1);
  cplx r = 0.0;
  for (int k = start; k >= 0; --k)
  {
    r = 1.0 / ((2.0 * k + 1.0) / x - r);
    if (k <= m)
    {
      rho[k] = r;
    }
  }

  // Anchor on whichever of psi_{k0-1}, psi_{k0} is larger, away from a zero.
  int anchor = k0;
  cplx p = cur, q = prev;
  if (std::abs(prev) > std::abs(cur))
  {
    anchor = k0 - 1;
    p = prev;
  }
  int exponent = 0;
  q = p;
  for (int k = anchor + 1; k <= m; ++k)
  {
    q = p;
    p *= rho[k];
    Renormalize(q, p, exponent);
  }
  return {p, q - static_cast<double>(m) / x * p, exponent};
}

RiccatiPair riccati_zeta(int m, cplx x, const SpecialFnConfig &config)
{
  CheckArguments(m, x, config);
  const cplx s = std::sin(x), c = std::cos(x);
  cplx prev = s, cur = -c;  // zeta_{-1} = sin x, zeta_0 = -cos x
  int exponent = 0;
  for (int k = 0; k < m; ++k)
  {
    const cplx next = (2.0 * k + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
    Renormalize(prev, cur, exponent);
  }
  return {cur, prev - static_cast<double>(m) / x * cur, exponent};
}

RiccatiPair riccati_xi1(int m, cplx x, const SpecialFnConfig &config)
{
  const RiccatiPair psi = riccati_psi(m, x, config);
  const RiccatiPair zeta = riccati_zeta(m, x, config);
  const int e = zeta.exponent;
  const cplx i(0.0, 1.0);
  return {Ldexp(psi.value, psi.exponent - e) + i * zeta.value,
          Ldexp(psi.derivative, psi.exponent - e) + i * zeta.derivative, e};
}

}  // namespace osrc
