#include <cmath>

#include "doctest.h"
#include "stefan/grid.hpp"

using namespace stefan;

namespace {

Field sample(int n, double s, double (*f)(double, double)) {
  Field v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = f(s * i / n, s);
  return v;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("trapezoid is exact for linear profiles") {
  const double s = 0.37;
  const Field v = sample(10, s, [](double x, double s) { return 3.0 * (s - x); });
  CHECK(grid::trapezoid(v, s) == doctest::Approx(1.5 * s * s).epsilon(1e-14));
}

TEST_CASE("interface stencil is exact for quadratics") {
  const double s = 0.2;
  const Field lin = sample(8, s, [](double x, double s) { return 5.0 * (s - x); });
  CHECK(grid::interface_derivative(lin, s) == doctest::Approx(-5.0).epsilon(1e-12));
  const Field quad = sample(8, s, [](double x, double s) { return (s - x) * (s - x); });
  CHECK(std::fabs(grid::interface_derivative(quad, s)) < 1e-13);
  const Field g = grid::gradient(quad, s);
  for (int i = 0; i <= 8; ++i) CHECK(g[i] == doctest::Approx(-2 * (s - s * i / 8)).epsilon(1e-12));
}

TEST_CASE("tridiagonal solve matches a hand-checked system") {
  // [2 -1 0; -1 2 -1; 0 -1 2] x = [1 0 1] -> x = [1 1 1]
  const std::vector<double> sub{0, -1, -1}, diag{2, 2, 2}, sup{-1, -1, 0}, rhs{1, 0, 1};
  const Field x = grid::solve_tridiagonal(sub, diag, sup, rhs);
  for (double v : x) CHECK(v == doctest::Approx(1.0));
  const std::vector<double> zero{0, 0, 0};
  CHECK_THROWS_AS(grid::solve_tridiagonal(zero, zero, zero, rhs), SimulationError);
}

TEST_CASE("resampling onto a longer interval pads with the interface value") {
  const Field v = sample(4, 1.0, [](double x, double s) { return s - x; });
  const Field same = grid::resample(v, 1.0, 1.0);
  for (size_t i = 0; i < v.size(); ++i) CHECK(same[i] == doctest::Approx(v[i]));
  const Field longer = grid::resample(v, 1.0, 2.0);
  CHECK(longer[0] == doctest::Approx(1.0));
  CHECK(longer[1] == doctest::Approx(0.5));
  CHECK(longer[2] == doctest::Approx(0.0));
  CHECK(longer[4] == doctest::Approx(0.0));
}

TEST_CASE("front-fixed step keeps the Dirichlet node and an equilibrium") {
  Field v(11, 0.0);
  FrontFixedStep step{0.1, 0.0, 0.0, 1.0, 1e-5, 1.0, {}};
  const Field out = advance_front_fixed(v, step);
  for (double x : out) CHECK(x == 0.0);

  v = {5, 4, 3, 2, 1, 0, 0, 0, 0, 0, 0};
  double cfl = -1;
  step.sdot = 1e-3;
  const Field moved = advance_front_fixed(v, step, &cfl);
  CHECK(moved.back() == 0.0);
  CHECK(cfl == doctest::Approx(1.0 * (0.9 * 1e-3 / 0.1) / 0.1));
}

}  // TEST_SUITE
