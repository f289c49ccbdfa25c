#ifndef OSRC_QUADRATURE_HPP
#define OSRC_QUADRATURE_HPP

#include <vector>

namespace osrc
{

// Gauss-Legendre nodes and weights on [0, 1].
void GaussLegendre01(int n, std::vector<double> &nodes, std::vector<double> &weights);

// Rule on the reference triangle (0,0), (1,0), (0,1) in coordinates (u, v); the
// weights sum to one, so integrals are sum(w * f) * area.
struct TriangleRule
{
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;
  int Size() const { return static_cast<int>(w.size()); }
};

// Rule exact for polynomials of the given total degree. Degrees up to 5 use the
// classical 1, 3 and 7 point rules; higher degrees use a collapsed Gauss product rule.
TriangleRule TriangleQuadrature(int degree);

// Collapsed n x n Gauss product rule (exact to degree 2n - 1).
TriangleRule CollapsedGaussRule(int n);

// Collapsed rule on graded nodes that cluster toward all three edges; for
// integrands with weak singularities along the triangle boundary.
TriangleRule GradedCollapsedRule(int n);

}  // namespace osrc

#endif  // OSRC_QUADRATURE_HPP
