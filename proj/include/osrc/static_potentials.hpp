#ifndef OSRC_STATIC_POTENTIALS_HPP
#define OSRC_STATIC_POTENTIALS_HPP

#include <Eigen/Dense>

namespace osrc
{

// Closed-form integrals over a flat triangle (a, b, c) for an observation point x,
// with R = |y - x| and y running over the triangle.
struct StaticPotentials
{
  double inv_r = 0.0;              // int 1/R
  double r = 0.0;                  // int R
  Eigen::Vector3d inv_r_vec;       // int (y - x)/R
  Eigen::Vector3d r_vec;           // int (y - x) R
  Eigen::Vector3d grad_inv_r;      // int grad_y (1/R), principal value in the plane
};

StaticPotentials ComputeStaticPotentials(const Eigen::Vector3d &a, const Eigen::Vector3d &b,
                                         const Eigen::Vector3d &c, const Eigen::Vector3d &x);

}  // namespace osrc

#endif  // OSRC_STATIC_POTENTIALS_HPP
