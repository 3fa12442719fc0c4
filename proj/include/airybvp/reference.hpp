#pragma once

#include "airybvp/core.hpp"

namespace airy {

/// Direct solver settings.  The solution is a degree-`degree` polynomial in x
/// (Legendre dual-Petrov–Galerkin), advanced exactly in time by the matrix
/// exponential of the semi-discrete generator; `points` only sets the uniform output grid.
struct ReferenceConfig {
  int points = 256;        // P: output grid x_i = i/P
  int degree = 192;        // polynomial degree in x
  double dt = 1e-5;        // sampling step; traces are recorded every step
  double final_time = 0.01;
  int output_stride = 1;   // field snapshot every output_stride steps
  bool check_wellposedness = true;
};

struct ReferenceSolution {
  SpaceTimeField field;
  BoundaryTraces traces;  // u, u_x, u_xx at both ends, exact for the discrete solution
};

struct WellposednessReport {
  int degree = 0;
  double max_growth = 0.0;        // max Re(lambda) of the discrete generator
  int coarse_degree = 0;
  double coarse_max_growth = 0.0;
  bool ill_posed = false;
};

/// Growth rates of the discrete generator at two resolutions; unbounded growth under
/// refinement flags a boundary combination that is ill-posed forward in time.
WellposednessReport check_wellposedness(const BoundarySpec& bc, int degree);

ReferenceSolution solve_reference(const InitialDatum& f, const BoundarySpec& bc, const ReferenceConfig& cfg);

/// One-sided finite-difference estimates of d^j u at x = 0 and x = 1 (j = 0,1,2).
/// The field's times must be uniform and start at 0.
BoundaryTraces extract_traces(const SpaceTimeField& field, int order = 4);

/// |w_hat(k,t) - e^{i k^3 t}(-F(k,t) + e^{-ik} G(k,t))| for each k.
std::vector<double> verify_global_relation(const SpaceTimeField& w, std::span<const double> ks, double t);
std::vector<double> verify_global_relation(const SpaceTimeField& w, const BoundaryTraces& traces,
                                           std::span<const double> ks, double t);

/// Fornberg weights for the `order`-th derivative at z from nodes x.
std::vector<double> fd_weights(double z, std::span<const double> x, int order);

}  // namespace airy
