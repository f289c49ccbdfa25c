#ifndef OSRC_MIE_ORACLE_HPP
#define OSRC_MIE_ORACLE_HPP

#include <string>
#include <vector>

#include "osrc/bem_core.hpp"

namespace osrc
{

using FarField = std::vector<Eigen::Vector3cd>;

// Far-field amplitudes F with e^s(x) ~ F(x/|x|) e^{ik|x|}/|x|.
struct DirectionGrid
{
  std::vector<Vec3> directions;
  std::vector<double> theta_deg;  // angle from the propagation direction
  std::vector<std::string> plane; // "E" (contains the polarization) or "H"
};

DirectionGrid default_direction_grid(const PlaneWave &wave, int samples = 181);

int mie_truncation(double kappa, double radius);

// Exterior coefficients of a perfectly conducting sphere (a_n magnetic-type from
// derivatives, b_n from values), n = 1..count.
void mie_coefficients(double kappa, double radius, int count, std::vector<cplx> &a,
                      std::vector<cplx> &b);

FarField mie_far_field(double kappa, double radius, const PlaneWave &wave,
                       const std::vector<Vec3> &directions, int extra_terms = 0);

struct CrossSections
{
  double extinction = 0.0;  // from the forward amplitude
  double scattering = 0.0;  // from the coefficient series
};
CrossSections mie_cross_sections(double kappa, double radius, const PlaneWave &wave);

// Radiation of a surface current J given by div-conforming coefficients, integrated
// with a per-triangle rule of the given degree.
FarField far_field_from_currents(const TriangleMesh &mesh, const RwgSpace &space,
                                 const VectorXc &coeffs, double kappa,
                                 const std::vector<Vec3> &directions, int quad_degree = 3);

// Far field of the direct formulation: the unknown is the exterior magnetic trace of
// the scattered field and the electric trace equals minus that of the incident wave.
FarField far_field_direct(const TriangleMesh &mesh, const RwgSpace &space,
                          const VectorXc &coeffs, const PlaneWave &wave,
                          const std::vector<Vec3> &directions, int quad_degree = 3);

double relative_error(const FarField &computed, const FarField &reference);

}  // namespace osrc

#endif  // OSRC_MIE_ORACLE_HPP
