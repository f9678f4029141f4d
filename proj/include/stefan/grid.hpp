#pragma once

// Fields live on the normalized grid xi_i = i/N, i = 0..N, mapped to the
// physical interval [0, s] by x = xi * s. The last sample sits on the
// interface.

#include <span>
#include <stdexcept>
#include <vector>

namespace stefan {

using Field = std::vector<double>;

class SimulationError : public std::runtime_error {
 public:
  enum class Kind { BlowUp, Numerical, DomainExceeded };

  SimulationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace grid {

inline int intervals(std::span<const double> f) {
  return static_cast<int>(f.size()) - 1;
}

/// Normalized node positions i/N.
std::vector<double> nodes(int n);

/// Composite trapezoid of f over [0, length].
double trapezoid(std::span<const double> f, double length);

/// df/dx at the interface (last node) from the one-sided 3-point stencil.
double interface_derivative(std::span<const double> f, double s);

/// df/dx at every node: central differences inside, second-order one-sided
/// stencils at both ends.
Field gradient(std::span<const double> f, double s);

/// Thomas algorithm. sub[0] and sup[n-1] are ignored. Throws
/// SimulationError(Numerical) on a vanishing pivot.
Field solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                        std::span<const double> sup, std::span<const double> rhs);

/// Re-samples a field stored over [0, s_from] onto the same number of
/// nodes over [0, s_to] by linear interpolation in x. Points beyond s_from
/// take the interface value 0.
Field resample(std::span<const double> f, double s_from, double s_to);

/// Largest |f_i|.
double max_abs(std::span<const double> f);

}  // namespace grid

/// Inputs for one boundary-immobilized step of
///   v_t = (alpha/s^2) v_xixi + (xi sdot/s) v_xi + source
/// with v_xi(0) = -(q/k) s and v(1) = 0.
struct FrontFixedStep {
  double s;         // interface position at the start of the step
  double sdot;      // interface velocity driving the grid-motion term
  double flux_in;   // heat flux q entering at x = 0, W/m^2
  double dt;
  double alpha;
  double k;
  std::span<const double> source;  // optional, empty means none
};

/// Implicit diffusion, explicit convection and source. The Neumann
/// condition goes through a ghost node; the Dirichlet node stays exactly 0.
/// Returns the new samples. `cfl` receives dt * max|xi sdot / s| / dxi.
Field advance_front_fixed(std::span<const double> v, const FrontFixedStep& step,
                          double* cfl = nullptr);

}  // namespace stefan
