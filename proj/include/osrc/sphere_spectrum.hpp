#ifndef OSRC_SPHERE_SPECTRUM_HPP
#define OSRC_SPHERE_SPECTRUM_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "osrc/special_fn.hpp"

namespace osrc
{

using cplx = std::complex<double>;

enum class LambdaConvention
{
  Standard,  // m(m+1)/R^2
  PaperHalf  // m(m+1)/2
};

enum class Formulation
{
  Efie,
  Calderon,
  EtmLeft,
  MteLeft,
  EtmRight,
  MteRight,
  Lambda2Only,
  EfiePadeEtm,
  EfiePadeMte
};

struct EfioEigenvalues
{
  cplx t_minus;  // xi_m psi_m
  cplx t_plus;   // xi_m' psi_m'
};

struct OsrcEigenvalues
{
  cplx plus;   // (1 - lambda / kappa_eps^2)^{1/2}
  cplx minus;  // reciprocal
};

// Pade eigenvalues. "inv" uses the inverse square-root sum, "sqrt" the square-root sum;
// each "plus" approximates OsrcEigenvalues::plus and each "minus" its reciprocal.
struct PadeOsrcEigenvalues
{
  cplx inv_plus;
  cplx inv_minus;
  cplx sqrt_plus;
  cplx sqrt_minus;
};

double damping_epsilon(double kappa, double curvature);

EfioEigenvalues efio_eigenvalues(int m, double kappa, double radius,
                                 const SpecialFnConfig &config = {});

double laplace_beltrami_eigenvalue(int m, double radius,
                                   LambdaConvention convention = LambdaConvention::Standard);

OsrcEigenvalues osrc_eigenvalues(double lambda, double kappa, double epsilon);

PadeOsrcEigenvalues pade_osrc_eigenvalues(double lambda, double kappa, double epsilon,
                                          int order, double theta);

struct SpectrumOptions
{
  double kappa = 3.141592653589793;
  double radius = 1.0;
  double curvature = 1.0;
  double ppw = 10.0;
  int pade_order = 15;
  double theta = 1.0471975511965976;
  LambdaConvention convention = LambdaConvention::Standard;
  // Unset (negative) means the damping rule with the given curvature.
  double epsilon = -1.0;
  int max_mode = 0;  // positive values override the ppw-derived mode count
};

// Two eigenvalue branches of the named formulation at mode m.
std::array<cplx, 2> formulation_spectrum(Formulation f, int m, const SpectrumOptions &options);

struct SpectrumRow
{
  Formulation formulation;
  int m;
  int branch;
  cplx value;
};

int spectrum_max_order(const SpectrumOptions &options);

std::vector<SpectrumRow> spectrum_report(const std::vector<Formulation> &formulations,
                                         const SpectrumOptions &options);

std::string SpectrumCsv(const std::vector<SpectrumRow> &rows);

std::string FormulationName(Formulation f);
Formulation ParseFormulation(const std::string &name);
LambdaConvention ParseLambdaConvention(const std::string &name);
std::string LambdaConventionName(LambdaConvention c);

}  // namespace osrc

#endif  // OSRC_SPHERE_SPECTRUM_HPP
