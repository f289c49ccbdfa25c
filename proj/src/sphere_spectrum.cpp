#include "osrc/sphere_spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "osrc/errors.hpp"
#include "osrc/pade.hpp"

namespace osrc
{

double damping_epsilon(double kappa, double curvature)
{
  if (!(kappa > 0.0) || !(curvature > 0.0))
  {
    throw ParameterError("damping rule needs positive wavenumber and curvature");
  }
  return 0.39 * std::cbrt(kappa) * std::pow(curvature, 2.0 / 3.0);
}

EfioEigenvalues efio_eigenvalues(int m, double kappa, double radius,
                                 const SpecialFnConfig &config)
{
  if (!(kappa > 0.0) || !(radius > 0.0))
  {
    throw ParameterError("wavenumber and radius must be positive");
  }
  const cplx x = kappa * radius;
  const RiccatiPair psi = riccati_psi(m, x, config);
  const RiccatiPair xi = riccati_xi1(m, x, config);
  return {ScaledProduct(xi.value, xi.exponent, psi.value, psi.exponent),
          ScaledProduct(xi.derivative, xi.exponent, psi.derivative, psi.exponent)};
}

double laplace_beltrami_eigenvalue(int m, double radius, LambdaConvention convention)
{
  if (m < 0)
  {
    throw ParameterError("mode index must be non-negative");
  }
  const double mm = static_cast<double>(m) * (m + 1);
  if (convention == LambdaConvention::PaperHalf)
  {
    return mm / 2.0;
  }
  if (!(radius > 0.0))
  {
    throw ParameterError("radius must be positive");
  }
  return mm / (radius * radius);
}

OsrcEigenvalues osrc_eigenvalues(double lambda, double kappa, double epsilon)
{
  const cplx ke(kappa, epsilon);
  const cplx w = 1.0 - lambda / (ke * ke);
  if (std::abs(w) < 1e-14)
  {
    throw SingularModeError("mode with lambda = kappa^2 is singular without damping");
  }
  const cplx root = std::sqrt(w);
  return {root, 1.0 / root};
}

PadeOsrcEigenvalues pade_osrc_eigenvalues(double lambda, double kappa, double epsilon,
                                          int order, double theta)
{
  const cplx ke(kappa, epsilon);
  const cplx z = -lambda / (ke * ke);
  const cplx inv = eval_invsqrt_pade(invsqrt_pade(order, theta), z);
  const cplx sq = eval_sqrt_pade(sqrt_pade(order, theta), z);
  if (inv == 0.0 || sq == 0.0)
  {
    throw SingularModeError("Pade eigenvalue vanished; reciprocal undefined");
  }
  return {1.0 / inv, inv, sq, 1.0 / sq};
}

namespace
{

double Epsilon(const SpectrumOptions &o)
{
  return o.epsilon >= 0.0 ? o.epsilon : damping_epsilon(o.kappa, o.curvature);
}

}  // namespace

std::array<cplx, 2> formulation_spectrum(Formulation f, int m, const SpectrumOptions &o)
{
  const EfioEigenvalues t = efio_eigenvalues(m, o.kappa, o.radius);
  if (f == Formulation::Efie)
  {
    return {t.t_minus, t.t_plus};
  }
  if (f == Formulation::Calderon)
  {
    const cplx c = -t.t_plus * t.t_minus;
    return {c, c};
  }
  const double lambda = laplace_beltrami_eigenvalue(m, o.radius, o.convention);
  const double eps = Epsilon(o);
  if (f == Formulation::EfiePadeEtm || f == Formulation::EfiePadeMte)
  {
    const PadeOsrcEigenvalues p = pade_osrc_eigenvalues(lambda, o.kappa, eps, o.pade_order, o.theta);
    if (f == Formulation::EfiePadeEtm)
    {
      return {p.inv_plus * t.t_minus, p.inv_minus * t.t_plus};
    }
    return {p.sqrt_plus * t.t_minus, p.sqrt_minus * t.t_plus};
  }
  const OsrcEigenvalues l = osrc_eigenvalues(lambda, o.kappa, eps);
  if (f == Formulation::Lambda2Only)
  {
    return {t.t_minus, l.minus * l.minus * t.t_plus};
  }
  return {l.plus * t.t_minus, l.minus * t.t_plus};
}

int spectrum_max_order(const SpectrumOptions &o)
{
  if (o.max_mode > 0)
  {
    return o.max_mode;
  }
  if (!(o.ppw > 0.0))
  {
    throw ParameterError("points per wavelength must be positive");
  }
  return static_cast<int>(std::ceil(o.kappa * o.radius * o.ppw / 2.0));
}

std::vector<SpectrumRow> spectrum_report(const std::vector<Formulation> &formulations,
                                         const SpectrumOptions &o)
{
  std::vector<SpectrumRow> rows;
  if (formulations.empty())
  {
    return rows;
  }
  const int mmax = spectrum_max_order(o);
  for (Formulation f : formulations)
  {
    for (int m = 1; m <= mmax; ++m)
    {
      const auto v = formulation_spectrum(f, m, o);
      rows.push_back({f, m, 0, v[0]});
      rows.push_back({f, m, 1, v[1]});
    }
  }
  return rows;
}

std::string SpectrumCsv(const std::vector<SpectrumRow> &rows)
{
  std::ostringstream out;
  out << "formulation,m,branch,re,im,abs\n";
  char buf[160];
  for (const auto &r : rows)
  {
    std::snprintf(buf, sizeof(buf), ",%d,%s,%.17g,%.17g,%.17g\n", r.m,
                  r.branch == 0 ? "minus" : "plus", r.value.real(), r.value.imag(),
                  std::abs(r.value));
    out << FormulationName(r.formulation) << buf;
  }
  return out.str();
}

std::string FormulationName(Formulation f)
{
  switch (f)
  {
    case Formulation::Efie:
      return "efie";
    case Formulation::Calderon:
      return "calderon";
    case Formulation::EtmLeft:
      return "etm_left";
    case Formulation::MteLeft:
      return "mte_left";
    case Formulation::EtmRight:
      return "etm_right";
    case Formulation::MteRight:
      return "mte_right";
    case Formulation::Lambda2Only:
      return "lambda2_only";
    case Formulation::EfiePadeEtm:
      return "efie_pade_etm";
    case Formulation::EfiePadeMte:
      return "efie_pade_mte";
  }
  return "unknown";
}

Formulation ParseFormulation(const std::string &name)
{
  for (Formulation f : {Formulation::Efie, Formulation::Calderon, Formulation::EtmLeft,
                        Formulation::MteLeft, Formulation::EtmRight, Formulation::MteRight,
                        Formulation::Lambda2Only, Formulation::EfiePadeEtm,
                        Formulation::EfiePadeMte})
  {
    if (FormulationName(f) == name)
    {
      return f;
    }
  }
  throw UsageError("unknown formulation '" + name + "'");
}

LambdaConvention ParseLambdaConvention(const std::string &name)
{
  if (name == "standard")
  {
    return LambdaConvention::Standard;
  }
  if (name == "paper_half")
  {
    return LambdaConvention::PaperHalf;
  }
  throw UsageError("unknown lambda convention '" + name + "'");
}

std::string LambdaConventionName(LambdaConvention c)
{
  return c == LambdaConvention::Standard ? "standard" : "paper_half";
}

}  // namespace osrc
