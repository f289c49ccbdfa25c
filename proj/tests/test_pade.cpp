#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "osrc/errors.hpp"
#include "osrc/pade.hpp"

using osrc::cplx;

namespace
{

constexpr double kPi = std::numbers::pi;

// Distance from z to the cut z = -1 - r e^{i theta}, r >= 0.
double CutDistance(cplx z, double theta)
{
  const cplx dir = -std::exp(cplx(0.0, theta));
  const cplx rel = z + 1.0;
  const double t = std::max(0.0, (rel * std::conj(dir)).real());
  return std::abs(rel - t * dir);
}

double DiskError(int order, bool sqrt_kind, double cut_distance)
{
  const double theta = kPi / 3.0;
  const auto sq = osrc::sqrt_pade(order, theta);
  const auto inv = osrc::invsqrt_pade(order, theta);
  double worst = 0.0;
  for (double re = -5.0; re <= 5.0; re += 0.125)
  {
    for (double im = -5.0; im <= 5.0; im += 0.125)
    {
      const cplx z(re, im);
      if (std::abs(z) > 5.0 || CutDistance(z, theta) < cut_distance)
      {
        continue;
      }
      const cplx exact = sqrt_kind ? osrc::rotated_sqrt(z, theta) : osrc::rotated_invsqrt(z, theta);
      const cplx approx = sqrt_kind ? osrc::eval_sqrt_pade(sq, z) : osrc::eval_invsqrt_pade(inv, z);
      worst = std::max(worst, std::abs(approx - exact) / std::abs(exact));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("real square-root coefficients at order one")
{
  std::vector<double> a, b;
  osrc::SqrtPadeRealCoeffs(1, a, b);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b[0] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("unrotated coefficients reduce to the real ones")
{
  for (int order : {1, 4, 9})
  {
    std::vector<double> a, b;
    osrc::SqrtPadeRealCoeffs(order, a, b);
    const auto p = osrc::sqrt_pade(order, 0.0);
    CHECK(std::abs(p.C0 - 1.0) < 1e-15);
    for (int l = 0; l < order; ++l)
    {
      CHECK(std::abs(p.A[l] - a[l]) < 1e-15);
      CHECK(std::abs(p.B[l] - b[l]) < 1e-15);
    }
    for (double w : {-0.5, 0.0, 0.7, 3.0})
    {
      double real = 1.0;
      for (int l = 0; l < order; ++l)
      {
        real += a[l] * w / (1.0 + b[l] * w);
      }
      CHECK(std::abs(osrc::eval_sqrt_pade(p, w) - real) < 1e-14);
    }
  }
}

TEST_CASE("square-root approximant values")
{
  CHECK(std::abs(osrc::eval_sqrt_pade(osrc::sqrt_pade(1, 0.0), 0.0) - 1.0) < 1e-15);
  // Rotation moves z = 3 to w = 4 e^{-i pi/3} - 1, where the order-8 error is
  // 4 |(2 e^{-i pi/6} - 1) / (2 e^{-i pi/6} + 1)|^17 ~ 2e-6.
  const auto p8 = osrc::sqrt_pade(8, kPi / 3.0);
  CHECK(std::abs(osrc::eval_sqrt_pade(p8, 3.0) - 2.0) < 3e-6);
  CHECK(std::abs(osrc::eval_sqrt_pade(osrc::sqrt_pade(10, kPi / 3.0), 3.0) - 2.0) < 1e-6);
  CHECK(std::abs(osrc::eval_sqrt_pade(p8, 0.21) - 1.1) < 1e-8);
  CHECK(osrc::eval_sqrt_pade(p8, -2.0).real() > 0.0);
  // Rotated branch at z = -2: e^{i pi/6} (e^{-i pi/3} (-1))^{1/2}.
  CHECK(std::abs(osrc::eval_sqrt_pade(p8, -2.0) - osrc::rotated_sqrt(-2.0, kPi / 3.0)) < 1e-3);
}

TEST_CASE("square-root coefficient invariants")
{
  for (int order : {1, 5, 8, 15})
  {
    for (double theta : {0.0, kPi / 4.0, kPi / 3.0, kPi / 2.0, -kPi / 3.0})
    {
      const auto p = osrc::sqrt_pade(order, theta);
      cplx f0 = p.C0;
      for (int l = 0; l < order; ++l)
      {
        f0 += p.A[l] / p.B[l];
      }
      CHECK(std::abs(f0 - p.F0) < 1e-12);
      CHECK(std::abs(osrc::eval_sqrt_pade(p, 0.0) - p.C0) < 1e-15);
      // Second closed form F0 - sum A / (B (1 + B z)).
      for (cplx z : {cplx(0.5, 0.0), cplx(-3.0, 1.0), cplx(2.0, -4.0)})
      {
        cplx alt = p.F0;
        for (int l = 0; l < order; ++l)
        {
          alt -= p.A[l] / (p.B[l] * (1.0 + p.B[l] * z));
        }
        CHECK(std::abs(alt - osrc::eval_sqrt_pade(p, z)) < 1e-12);
      }
    }
  }
}

TEST_CASE("inverse square-root coefficients")
{
  const auto p1 = osrc::invsqrt_pade(1, 0.0);
  CHECK(p1.c[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p1.d[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(osrc::eval_invsqrt_pade(p1, 0.0) - 1.0) < 1e-15);
  for (int order : {1, 3, 8, 15})
  {
    for (double theta : {0.0, kPi / 3.0, -kPi / 5.0})
    {
      const auto p = osrc::invsqrt_pade(order, theta);
      const cplx rot = std::exp(cplx(0.0, theta));
      for (int l = 0; l < order; ++l)
      {
        CHECK(p.d[l] == order * p.c[l]);
        CHECK(std::abs(p.R[l] - std::exp(cplx(0.0, theta / 2.0)) * p.c[l]) < 1e-15);
        CHECK(std::abs(p.S[l] - (1.0 - rot + p.d[l] * rot)) < 1e-13);
      }
    }
    CHECK(std::abs(osrc::eval_invsqrt_pade(osrc::invsqrt_pade(order, 0.0), 0.0) - 1.0) < 1e-12);
  }
}

TEST_CASE("inverse square-root approximant values")
{
  const double theta = kPi / 3.0;
  const auto p8 = osrc::invsqrt_pade(8, theta);
  CHECK(std::abs(osrc::eval_invsqrt_pade(p8, 3.0) - 0.5) < 2e-6);
  CHECK(std::abs(osrc::eval_invsqrt_pade(osrc::invsqrt_pade(10, theta), 3.0) - 0.5) < 1e-6);
  const cplx z(-1.0, 0.5);
  const cplx v = osrc::eval_invsqrt_pade(p8, z);
  CHECK(std::isfinite(std::abs(v)));
  CHECK(std::abs(v - osrc::rotated_invsqrt(z, theta)) / std::abs(osrc::rotated_invsqrt(z, theta)) <
        1e-2);
  // Away from every cut the rotated branch is the principal one.
  CHECK(std::abs(osrc::rotated_invsqrt(3.0, theta) - 0.5) < 1e-15);
}

TEST_CASE("unrotated inverse square root is real on the real axis")
{
  for (int order : {2, 8, 15})
  {
    const auto p = osrc::invsqrt_pade(order, 0.0);
    for (double x = -0.99; x < 20.0; x += 0.37)
    {
      CHECK(std::abs(osrc::eval_invsqrt_pade(p, x).imag()) < 1e-12);
    }
  }
}

TEST_CASE("reciprocity at order fifteen")
{
  const auto sq = osrc::sqrt_pade(15, kPi / 3.0);
  const auto inv = osrc::invsqrt_pade(15, kPi / 3.0);
  const cplx ray = std::exp(cplx(0.0, kPi / 4.0));
  for (double t = 0.0; t <= 10.0; t += 0.25)
  {
    const cplx z = t * ray;
    CHECK(std::abs(osrc::eval_sqrt_pade(sq, z) * osrc::eval_invsqrt_pade(inv, z) - 1.0) < 1e-3);
  }
}

TEST_CASE("error on the test disk is non-increasing in the order")
{
  for (bool sqrt_kind : {true, false})
  {
    const double e5 = DiskError(5, sqrt_kind, 1.0);
    const double e10 = DiskError(10, sqrt_kind, 1.0);
    const double e15 = DiskError(15, sqrt_kind, 1.0);
    CHECK(e10 <= e5);
    CHECK(e15 <= e10);
  }
}

TEST_CASE("poles and invalid parameters")
{
  const auto sq = osrc::sqrt_pade(4, kPi / 3.0);
  try
  {
    osrc::eval_sqrt_pade(sq, -1.0 / sq.B[0]);
    FAIL("expected a pole");
  }
  catch (const osrc::SingularEvaluationError &e)
  {
    CHECK(e.Index() == 1);
  }
  const auto inv = osrc::invsqrt_pade(4, kPi / 3.0);
  try
  {
    osrc::eval_invsqrt_pade(inv, -inv.S[2]);
    FAIL("expected a pole");
  }
  catch (const osrc::SingularEvaluationError &e)
  {
    CHECK(e.Index() == 2);
  }
  CHECK_THROWS_AS(osrc::sqrt_pade(0, 0.0), osrc::ParameterError);
  CHECK_THROWS_AS(osrc::invsqrt_pade(-2, 0.0), osrc::ParameterError);
  CHECK_THROWS_AS(osrc::sqrt_pade(3, -kPi), osrc::ParameterError);
  CHECK_THROWS_AS(osrc::invsqrt_pade(3, 3.5), osrc::ParameterError);
  CHECK_NOTHROW(osrc::sqrt_pade(3, kPi));
}
