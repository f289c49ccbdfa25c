#include "osrc/mie_oracle.hpp"

#include <cmath>
#include <numbers>

#include "osrc/errors.hpp"
#include "osrc/quadrature.hpp"
#include "osrc/special_fn.hpp"

namespace osrc
{

namespace
{

const cplx kI(0.0, 1.0);

struct Frame
{
  Vec3 ex, ey, ez;
};

Frame WaveFrame(const PlaneWave &wave)
{
  return {wave.polarization, wave.direction.cross(wave.polarization), wave.direction};
}

void CheckDirections(const std::vector<Vec3> &dirs)
{
  for (const auto &d : dirs)
  {
    if (std::abs(d.norm() - 1.0) > 1e-10)
    {
      throw ParameterError("far-field directions must be unit vectors");
    }
  }
}

}  // namespace

DirectionGrid default_direction_grid(const PlaneWave &wave, int samples)
{
  if (samples < 2)
  {
    throw ParameterError("direction grid needs at least two samples per cut");
  }
  const Frame f = WaveFrame(wave);
  DirectionGrid grid;
  for (int cut = 0; cut < 2; ++cut)
  {
    const Vec3 &side = cut == 0 ? f.ex : f.ey;
    for (int i = 0; i < samples; ++i)
    {
      const double deg = 180.0 * i / (samples - 1);
      const double t = deg * std::numbers::pi / 180.0;
      grid.directions.push_back((std::cos(t) * f.ez + std::sin(t) * side).normalized());
      grid.theta_deg.push_back(deg);
      grid.plane.push_back(cut == 0 ? "E" : "H");
    }
  }
  return grid;
}

int mie_truncation(double kappa, double radius)
{
  const double x = kappa * radius;
  return static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 16.0));
}

void mie_coefficients(double kappa, double radius, int count, std::vector<cplx> &a,
                      std::vector<cplx> &b)
{
  if (!(kappa > 0.0) || !(radius > 0.0))
  {
    throw ParameterError("Mie series needs positive wavenumber and radius");
  }
  a.resize(count);
  b.resize(count);
  const cplx x = kappa * radius;
  for (int n = 1; n <= count; ++n)
  {
    const RiccatiPair psi = riccati_psi(n, x);
    const RiccatiPair xi = riccati_xi1(n, x);
    const int e = psi.exponent - xi.exponent;
    a[n - 1] = ScaledProduct(psi.derivative / xi.derivative, e, 1.0, 0);
    b[n - 1] = ScaledProduct(psi.value / xi.value, e, 1.0, 0);
  }
}

FarField mie_far_field(double kappa, double radius, const PlaneWave &wave,
                       const std::vector<Vec3> &directions, int extra_terms)
{
  wave.Validate();
  CheckDirections(directions);
  const int nmax = mie_truncation(kappa, radius) + extra_terms;
  std::vector<cplx> a, b;
  mie_coefficients(kappa, radius, nmax, a, b);
  const Frame f = WaveFrame(wave);
  FarField out;
  out.reserve(directions.size());
  for (const Vec3 &s : directions)
  {
    const double lx = f.ex.dot(s), ly = f.ey.dot(s), lz = std::clamp(f.ez.dot(s), -1.0, 1.0);
    const double theta = std::acos(lz);
    const double phi = (lx == 0.0 && ly == 0.0) ? 0.0 : std::atan2(ly, lx);
    const double mu = lz;
    double pi_prev = 0.0, pi_cur = 1.0;
    cplx s1 = 0.0, s2 = 0.0;
    for (int n = 1; n <= nmax; ++n)
    {
      if (n > 1)
      {
        const double next = ((2.0 * n - 1.0) * mu * pi_cur - n * pi_prev) / (n - 1.0);
        pi_prev = pi_cur;
        pi_cur = next;
      }
      const double tau = n * mu * pi_cur - (n + 1.0) * pi_prev;
      const double w = (2.0 * n + 1.0) / (n * (n + 1.0));
      s1 += w * (a[n - 1] * pi_cur + b[n - 1] * tau);
      s2 += w * (a[n - 1] * tau + b[n - 1] * pi_cur);
    }
    const Vec3 th(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta));
    const Vec3 ph(-std::sin(phi), std::cos(phi), 0.0);
    const Eigen::Vector3cd local =
        (kI / kappa) * (std::cos(phi) * s2 * th.cast<cplx>() - std::sin(phi) * s1 * ph.cast<cplx>());
    out.push_back(local[0] * f.ex.cast<cplx>() + local[1] * f.ey.cast<cplx>() +
                  local[2] * f.ez.cast<cplx>());
  }
  return out;
}

CrossSections mie_cross_sections(double kappa, double radius, const PlaneWave &wave)
{
  const FarField fwd = mie_far_field(kappa, radius, wave, {wave.direction});
  CrossSections cs;
  cs.extinction = 4.0 * std::numbers::pi / kappa * wave.polarization.cast<cplx>().dot(fwd[0]).imag();
  std::vector<cplx> a, b;
  const int nmax = mie_truncation(kappa, radius);
  mie_coefficients(kappa, radius, nmax, a, b);
  double sum = 0.0;
  for (int n = 1; n <= nmax; ++n)
  {
    sum += (2.0 * n + 1.0) * (std::norm(a[n - 1]) + std::norm(b[n - 1]));
  }
  cs.scattering = 2.0 * std::numbers::pi / (kappa * kappa) * sum;
  return cs;
}

namespace
{

// Accumulates int e^{-ik s.y} J(y) dy for every direction.
std::vector<Eigen::Vector3cd> RadiationVectors(const TriangleMesh &mesh, const RwgSpace &space,
                                               const VectorXc &coeffs, double kappa,
                                               const std::vector<Vec3> &directions, int degree)
{
  const TriangleRule rule = TriangleQuadrature(degree);
  std::vector<Eigen::Vector3cd> nvec(directions.size(), Eigen::Vector3cd::Zero());
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const auto &f = mesh.triangles[t];
    const Vec3 &p0 = mesh.vertices[f[0]], &p1 = mesh.vertices[f[1]], &p2 = mesh.vertices[f[2]];
    const double area = mesh.Area(t);
    for (int q = 0; q < rule.Size(); ++q)
    {
      const Vec3 y = p0 + rule.u[q] * (p1 - p0) + rule.v[q] * (p2 - p0);
      Eigen::Vector3cd j = Eigen::Vector3cd::Zero();
      for (int i = 0; i < 3; ++i)
      {
        const Vec3 phi =
            space.tri_signs[t][i] * (y - mesh.vertices[f[i]]) / (2.0 * area);
        j += coeffs[space.tri_edges[t][i]] * phi.cast<cplx>();
      }
      const double w = rule.w[q] * area;
      for (size_t d = 0; d < directions.size(); ++d)
      {
        nvec[d] += (w * std::exp(-kI * kappa * directions[d].dot(y))) * j;
      }
    }
  }
  return nvec;
}

}  // namespace

FarField far_field_from_currents(const TriangleMesh &mesh, const RwgSpace &space,
                                 const VectorXc &coeffs, double kappa,
                                 const std::vector<Vec3> &directions, int quad_degree)
{
  if (coeffs.size() != space.Size())
  {
    throw DimensionError("coefficient vector does not match the basis");
  }
  CheckDirections(directions);
  const auto nvec = RadiationVectors(mesh, space, coeffs, kappa, directions, quad_degree);
  FarField out;
  for (size_t d = 0; d < directions.size(); ++d)
  {
    const Eigen::Vector3cd s = directions[d].cast<cplx>();
    out.push_back(kI * kappa / (4.0 * std::numbers::pi) * (nvec[d] - s * s.dot(nvec[d])));
  }
  return out;
}

FarField far_field_direct(const TriangleMesh &mesh, const RwgSpace &space,
                          const VectorXc &coeffs, const PlaneWave &wave,
                          const std::vector<Vec3> &directions, int quad_degree)
{
  wave.Validate();
  const double kappa = wave.kappa;
  FarField out = far_field_from_currents(mesh, space, -coeffs, kappa, directions, quad_degree);
  const TriangleRule rule = TriangleQuadrature(quad_degree);
  std::vector<Eigen::Vector3cd> mvec(directions.size(), Eigen::Vector3cd::Zero());
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const auto &f = mesh.triangles[t];
    const Vec3 &p0 = mesh.vertices[f[0]], &p1 = mesh.vertices[f[1]], &p2 = mesh.vertices[f[2]];
    const double area = mesh.Area(t);
    const Vec3 n = mesh.Normal(t);
    for (int q = 0; q < rule.Size(); ++q)
    {
      const Vec3 y = p0 + rule.u[q] * (p1 - p0) + rule.v[q] * (p2 - p0);
      const Eigen::Vector3cd m = CrossC(wave.Field(y), n.cast<cplx>());
      for (size_t d = 0; d < directions.size(); ++d)
      {
        mvec[d] += (rule.w[q] * area * std::exp(-kI * kappa * directions[d].dot(y))) * m;
      }
    }
  }
  for (size_t d = 0; d < directions.size(); ++d)
  {
    const Eigen::Vector3cd s = directions[d].cast<cplx>();
    out[d] += kI * kappa / (4.0 * std::numbers::pi) * CrossC(s, mvec[d]);
  }
  return out;
}

double relative_error(const FarField &computed, const FarField &reference)
{
  if (computed.size() != reference.size())
  {
    throw DimensionError("far-field samples differ in length");
  }
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < computed.size(); ++i)
  {
    num += (computed[i] - reference[i]).squaredNorm();
    den += reference[i].squaredNorm();
  }
  if (den == 0.0)
  {
    throw DomainError("reference far field vanishes");
  }
  return std::sqrt(num / den);
}

}  // namespace osrc
