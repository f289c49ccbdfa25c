#include "osrc/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "osrc/errors.hpp"

namespace osrc
{

void GaussLegendre01(int n, std::vector<double> &nodes, std::vector<double> &weights)
{
  if (n < 1)
  {
    throw ParameterError("Gauss-Legendre rule needs at least one point");
  }
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i)
  {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1)
      {
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = weights[n - 1 - i] = 0.5 * w;
  }
}

TriangleRule CollapsedGaussRule(int n)
{
  std::vector<double> x, w;
  GaussLegendre01(n, x, w);
  TriangleRule rule;
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      // (s, t) in the unit square mapped to u = s, v = (1 - s) t.
      rule.u.push_back(x[i]);
      rule.v.push_back((1.0 - x[i]) * x[j]);
      rule.w.push_back(2.0 * w[i] * w[j] * (1.0 - x[i]));
    }
  }
  return rule;
}

TriangleRule GradedCollapsedRule(int n)
{
  std::vector<double> x, w;
  GaussLegendre01(n, x, w);
  // Quintic smoothstep: nodes cluster at both ends with a vanishing Jacobian there.
  for (int i = 0; i < n; ++i)
  {
    const double s = x[i];
    x[i] = s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    w[i] *= 30.0 * s * s * (1.0 - s) * (1.0 - s);
  }
  TriangleRule rule;
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      rule.u.push_back(x[i]);
      rule.v.push_back((1.0 - x[i]) * x[j]);
      rule.w.push_back(2.0 * w[i] * w[j] * (1.0 - x[i]));
    }
  }
  return rule;
}

TriangleRule TriangleQuadrature(int degree)
{
  TriangleRule rule;
  if (degree <= 1)
  {
    rule.u = {1.0 / 3.0};
    rule.v = {1.0 / 3.0};
    rule.w = {1.0};
    return rule;
  }
  if (degree == 2)
  {
    rule.u = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
    rule.v = {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
    rule.w = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return rule;
  }
  if (degree <= 5)
  {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
    const double w1 = (155.0 - s15) / 1200.0, w2 = (155.0 + s15) / 1200.0;
    rule.u = {1.0 / 3.0, a1, b1, a1, a2, b2, a2};
    rule.v = {1.0 / 3.0, a1, a1, b1, a2, a2, b2};
    rule.w = {9.0 / 40.0, w1, w1, w1, w2, w2, w2};
    return rule;
  }
  return CollapsedGaussRule((degree + 2) / 2);
}

}  // namespace osrc
