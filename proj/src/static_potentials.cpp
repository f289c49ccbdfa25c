#include "osrc/static_potentials.hpp"

#include <cmath>

namespace osrc
{

StaticPotentials ComputeStaticPotentials(const Eigen::Vector3d &a, const Eigen::Vector3d &b,
                                         const Eigen::Vector3d &c, const Eigen::Vector3d &x)
{
  const Eigen::Vector3d cr = (b - a).cross(c - a);
  const Eigen::Vector3d n = cr.normalized();
  const double size = std::sqrt(cr.norm());
  const double d = n.dot(x - a);
  const double ad = std::abs(d);
  const Eigen::Vector3d rho = x - d * n;
  const double tiny = 1e-13 * size;

  const Eigen::Vector3d *v[3] = {&a, &b, &c};
  double k_m1 = 0.0, omega = 0.0, sum_t_i1 = 0.0;
  Eigen::Vector3d u_i1 = Eigen::Vector3d::Zero(), u_i3 = Eigen::Vector3d::Zero();
  Eigen::Vector3d u_im1 = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i)
  {
    const Eigen::Vector3d &p = *v[i], &q = *v[(i + 1) % 3];
    const Eigen::Vector3d lhat = (q - p).normalized();
    const Eigen::Vector3d uhat = lhat.cross(n);
    const double lp = (q - rho).dot(lhat), lm = (p - rho).dot(lhat);
    const double t = (p - rho).dot(uhat);
    const double r0sq = t * t + d * d;
    const double rp = (q - x).norm(), rm = (p - x).norm();

    double im1 = 0.0;
    if (lm >= 0.0)
    {
      im1 = std::log((rp + lp) / (rm + lm));
    }
    else if (lp <= 0.0)
    {
      im1 = std::log((rm - lm) / (rp - lp));
    }
    else if (r0sq > tiny * tiny)
    {
      im1 = std::log((rp + lp) * (rm - lm) / r0sq);
    }
    const double i1 = 0.5 * (r0sq * im1 + lp * rp - lm * rm);
    const double i3 = 0.25 * (3.0 * r0sq * i1 + lp * rp * rp * rp - lm * rm * rm * rm);

    double beta = 0.0;
    if (ad > tiny)
    {
      beta = std::atan(t * lp / (r0sq + ad * rp)) - std::atan(t * lm / (r0sq + ad * rm));
    }
    k_m1 += t * im1 - ad * beta;
    omega += beta;
    sum_t_i1 += t * i1;
    u_im1 += uhat * im1;
    u_i1 += uhat * i1;
    u_i3 += uhat * i3;
  }
  StaticPotentials s;
  s.inv_r = k_m1;
  s.r = (sum_t_i1 + d * d * k_m1) / 3.0;
  s.inv_r_vec = u_i1 - d * n * k_m1;
  s.r_vec = u_i3 / 3.0 - d * n * s.r;
  s.grad_inv_r = u_im1;
  if (ad > tiny)
  {
    s.grad_inv_r += (d > 0.0 ? 1.0 : -1.0) * omega * n;
  }
  return s;
}

}  // namespace osrc
