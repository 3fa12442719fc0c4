#include "airybvp/reference.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>

#include "airybvp/oscquad.hpp"

namespace airy {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

// Legendre coefficients of d/dx on [0,1]: d/dx P_k(2x-1) = 2 sum_{j<k, k-j odd} (2j+1) P_j(2x-1)
RMat derivative_matrix(int N) {
  RMat D = RMat::Zero(N + 1, N + 1);
  for (int k = 1; k <= N; ++k)
    for (int j = k - 1; j >= 0; j -= 2) D(j, k) = 2.0 * (2 * j + 1);
  return D;
}

// rows: points, columns: P_k(2x-1)
RMat legendre_values(std::span<const double> xs, int N) {
  RMat V(static_cast<Eigen::Index>(xs.size()), N + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = 2.0 * xs[i] - 1.0;
    double p0 = 1.0, p1 = y;
    V(i, 0) = 1.0;
    if (N >= 1) V(i, 1) = y;
    for (int k = 2; k <= N; ++k) {
      const double p2 = ((2.0 * k - 1.0) * y * p1 - (k - 1.0) * p0) / k;
      V(i, k) = p2;
      p0 = p1;
      p1 = p2;
    }
  }
  return V;
}

// 6 x (N+1): (u, u_x, u_xx) at x = 0, then at x = 1
RMat boundary_values(int N, const RMat& D) {
  RMat ends(2, N + 1);
  for (int k = 0; k <= N; ++k) {
    ends(0, k) = (k % 2 == 0) ? 1.0 : -1.0;
    ends(1, k) = 1.0;
  }
  RMat B(6, N + 1);
  RMat Dj = RMat::Identity(N + 1, N + 1);
  for (int j = 0; j < 3; ++j) {
    B.row(j) = ends.row(0) * Dj;
    B.row(3 + j) = ends.row(1) * Dj;
    Dj = Dj * D;
  }
  return B;
}

// Orthonormal basis of {x : A x = 0}; A has full row rank or the family is degenerate.
Mat null_space(const Mat& A, const std::string& family) {
  const Eigen::Index r = A.rows(), n = A.cols();
  Eigen::ColPivHouseholderQR<Mat> rank_qr(A.adjoint());
  rank_qr.setThreshold(1e-10);
  if (rank_qr.rank() < r)
    throw IllPosedError("reference", "boundary conditions for family '" + family + "' are linearly dependent");
  Eigen::HouseholderQR<Mat> qr(A.adjoint());
  Mat Q = qr.householderQ() * Mat::Identity(n, n);
  return Q.rightCols(n - r);
}

struct Discretization {
  int N = 0;
  RMat D;
  RMat Bv;
  Mat X, Y, M, K;
};

Discretization discretize(const BoundarySpec& bc, int N) {
  Discretization d;
  d.N = N;
  d.D = derivative_matrix(N);
  d.Bv = boundary_values(N, d.D);
  const auto rows = bc.rows();
  Mat C(3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) C(i, j) = rows[i][j];

  // boundary form of (u_xxx, psi) + (u, psi_xxx): [u_xx psi* - u_x psi_x* + u psi_xx*]_0^1
  RMat S = RMat::Zero(6, 6);
  for (int side = 0; side < 2; ++side) {
    const double s = side == 0 ? -1.0 : 1.0;
    const int off = 3 * side;
    S(off + 2, off + 0) += s;
    S(off + 1, off + 1) -= s;
    S(off + 0, off + 2) += s;
  }
  const Mat Nc = null_space(C, bc.name());
  const Mat Cadj = (Nc.transpose() * S.cast<Complex>()).conjugate();

  const Mat Bc = d.Bv.cast<Complex>();
  d.X = null_space(C * Bc, bc.name());
  d.Y = null_space(Cadj * Bc, bc.name());

  Eigen::VectorXd w(N + 1);
  for (int k = 0; k <= N; ++k) w(k) = 1.0 / (2.0 * k + 1.0);
  const RMat D3 = d.D * d.D * d.D;
  const Mat WX = w.cast<Complex>().asDiagonal() * d.X;
  d.M = d.Y.adjoint() * WX;
  d.K = -(d.Y.adjoint() * (w.cast<Complex>().asDiagonal() * (D3.cast<Complex>() * d.X)));
  return d;
}

double max_growth(const Discretization& d) {
  Eigen::PartialPivLU<Mat> lu(d.M);
  const Mat A = lu.solve(d.K);
  Eigen::ComplexEigenSolver<Mat> es(A, false);
  if (es.info() != Eigen::Success) throw InstabilityError("reference", "eigenvalue computation failed");
  double g = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) g = std::max(g, es.eigenvalues()(i).real());
  return g;
}

// Gauss–Legendre nodes and weights on [a, b]
void gauss_nodes(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double wt = 2.0 / ((1.0 - z * z) * dp * dp) * r;
    if (z == 0.0) {
      x.push_back(c);
      w.push_back(wt);
    } else {
      x.push_back(c - r * z);
      w.push_back(wt);
      x.push_back(c + r * z);
      w.push_back(wt);
    }
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

WellposednessReport check_wellposedness(const BoundarySpec& bc, int degree) {
  if (degree < 16) throw InputError("reference", "degree must be at least 16");
  WellposednessReport r;
  r.degree = degree;
  r.coarse_degree = std::max(12, degree / 2);
  r.max_growth = max_growth(discretize(bc, degree));
  r.coarse_max_growth = max_growth(discretize(bc, r.coarse_degree));
  r.ill_posed = r.max_growth > 100.0 && r.max_growth > 1.5 * std::max(r.coarse_max_growth, 0.0);
  return r;
}

ReferenceSolution solve_reference(const InitialDatum& f, const BoundarySpec& bc, const ReferenceConfig& cfg) {
  if (cfg.points < 64) throw InputError("reference", "P must be at least 64");
  if (cfg.degree < 16) throw InputError("reference", "degree must be at least 16");
  if (!(cfg.dt > 0.0) || !(cfg.final_time > 0.0)) throw InputError("reference", "dt and T must be positive");
  if (cfg.dt > cfg.final_time / 100.0 * (1.0 + 1e-12)) throw InputError("reference", "dt must not exceed T/100");
  if (cfg.output_stride < 1) throw InputError("reference", "output stride must be positive");
  const long steps = std::lround(cfg.final_time / cfg.dt);
  if (std::abs(steps * cfg.dt - cfg.final_time) > 1e-9 * cfg.final_time)
    throw InputError("reference", "T must be an integer multiple of dt");
  if (steps % cfg.output_stride != 0) throw InputError("reference", "output stride must divide the step count");

  if (cfg.check_wellposedness) {
    const auto report = check_wellposedness(bc, cfg.degree);
    if (report.ill_posed)
      throw IllPosedError("reference", "boundary family '" + bc.name() +
                                           "' is ill-posed forward in time: discrete growth rate " +
                                           std::to_string(report.max_growth) + " at degree " +
                                           std::to_string(report.degree) + " vs " +
                                           std::to_string(report.coarse_max_growth) + " at degree " +
                                           std::to_string(report.coarse_degree));
  }

  const int N = cfg.degree;
  const Discretization d = discretize(bc, N);

  // Petrov–Galerkin projection of f: (u0 - f, psi) = 0 for every test function
  std::vector<double> knots{0.0};
  if (!f.is_sampled()) knots.insert(knots.end(), f.breakpoints().begin(), f.breakpoints().end());
  knots.push_back(1.0);
  std::vector<double> qx, qw;
  for (std::size_t p = 0; p + 1 < knots.size(); ++p) gauss_nodes(N + 40, knots[p], knots[p + 1], qx, qw);
  Vec fw(static_cast<Eigen::Index>(qx.size()));
  for (std::size_t q = 0; q < qx.size(); ++q) {
    const Complex v = f(qx[q]);
    if (!finite(v)) throw InputError("reference", "initial datum is not finite");
    fw(q) = qw[q] * v;
  }
  const Mat Psi = legendre_values(qx, N).cast<Complex>() * d.Y;
  Eigen::PartialPivLU<Mat> mass(d.M);
  Vec c = mass.solve(Psi.adjoint() * fw);

  const double dt = cfg.dt;
  Eigen::PartialPivLU<Mat> mlu(d.M);
  const Mat G = (dt * mlu.solve(d.K)).exp();

  const SpaceGrid grid(cfg.points);
  const auto xs = grid.points();
  const Mat E = legendre_values(xs, N).cast<Complex>() * d.X;
  const Mat R = d.Bv.cast<Complex>() * d.X;

  const long snapshots = steps / cfg.output_stride + 1;
  std::vector<double> times(static_cast<std::size_t>(snapshots));
  for (long s = 0; s < snapshots; ++s) times[static_cast<std::size_t>(s)] = static_cast<double>(s * cfg.output_stride) * dt;
  SpaceTimeField field(grid, times);
  std::array<std::array<std::vector<Complex>, 3>, 2> series;
  for (auto& side : series)
    for (auto& s : side) s.resize(static_cast<std::size_t>(steps + 1));

  auto record = [&](long step) {
    const Vec tr = R * c;
    for (int j = 0; j < 3; ++j) {
      series[0][j][static_cast<std::size_t>(step)] = tr(j);
      series[1][j][static_cast<std::size_t>(step)] = tr(3 + j);
    }
    if (step % cfg.output_stride == 0) {
      const Vec u = E * c;
      auto slice = field.slice(static_cast<std::size_t>(step / cfg.output_stride));
      for (std::size_t i = 0; i < slice.size(); ++i) slice[i] = u(static_cast<Eigen::Index>(i));
    }
  };

  record(0);
  for (long s = 1; s <= steps; ++s) {
    const double before = c.norm();
    c = G * c;
    const double after = c.norm();
    if (!std::isfinite(after) || (before > 0.0 && after > 10.0 * before))
      throw InstabilityError("reference", "solution norm grew more than tenfold in one step at t = " +
                                              std::to_string(s * dt) + " (family '" + bc.name() + "')");
    record(s);
  }
  return {std::move(field), BoundaryTraces(dt, std::move(series))};
}

// ---------------------------------------------------------------------------

std::vector<double> fd_weights(double z, std::span<const double> x, int order) {
  // Fornberg's recursion
  const int n = static_cast<int>(x.size()) - 1;
  if (n < order) throw InputError("reference", "not enough nodes for the derivative order");
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(order + 1)));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) w[i] = c[i][order];
  return w;
}

BoundaryTraces extract_traces(const SpaceTimeField& field, int order) {
  if (field.points() < 7) throw InputError("reference", "trace extraction needs at least 7 spatial points");
  if (order < 1) throw InputError("reference", "order must be positive");
  const auto& ts = field.times();
  if (ts.size() < 2 || ts.front() != 0.0) throw InputError("reference", "field times must start at 0");
  const double dt = ts[1] - ts[0];
  for (std::size_t m = 1; m < ts.size(); ++m)
    if (std::abs(ts[m] - dt * static_cast<double>(m)) > 1e-9 * dt) throw InputError("reference", "field times must be uniform");

  const double h = field.grid().spacing();
  std::array<std::array<std::vector<double>, 3>, 2> weights;
  for (int j = 0; j < 3; ++j) {
    const int count = order + j;
    if (static_cast<std::size_t>(count) > field.points())
      throw InputError("reference", "grid too coarse for the requested trace order");
    std::vector<double> nodes(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) nodes[i] = i;
    weights[0][j] = fd_weights(0.0, nodes, j);
    for (auto& v : weights[0][j]) v /= std::pow(h, j);
    for (int i = 0; i < count; ++i) nodes[i] = -i;
    weights[1][j] = fd_weights(0.0, nodes, j);
    for (auto& v : weights[1][j]) v /= std::pow(h, j);
  }
  std::array<std::array<std::vector<Complex>, 3>, 2> series;
  const std::size_t last = field.points() - 1;
  for (int side = 0; side < 2; ++side) {
    for (int j = 0; j < 3; ++j) {
      auto& s = series[side][j];
      s.resize(ts.size());
      const auto& w = weights[side][j];
      for (std::size_t m = 0; m < ts.size(); ++m) {
        Complex acc{};
        for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * field(side == 0 ? i : last - i, m);
        s[m] = acc;
      }
    }
  }
  return {dt, std::move(series)};
}

std::vector<double> verify_global_relation(const SpaceTimeField& w, std::span<const double> ks, double t) {
  return verify_global_relation(w, extract_traces(w), ks, t);
}

std::vector<double> verify_global_relation(const SpaceTimeField& w, const BoundaryTraces& traces,
                                           std::span<const double> ks, double t) {
  double initial = 0.0;
  for (const auto& v : w.slice(0)) initial = std::max(initial, std::abs(v));
  if (w.times().front() != 0.0 || initial > 1e-8)
    throw ContractViolation("reference", "global relation needs a field with zero initial slice");
  const std::size_t m = w.time_index(t);
  const auto slice = w.slice(m);
  const TimeFunction profile = TimeFunction::sampled(w.grid().spacing(), {slice.begin(), slice.end()});
  std::vector<double> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double k = ks[i];
    const Complex what = oscillatory_integral(profile, k, 0.0, 1.0);
    const Complex F = endpoint_moment(traces, 0, k, t);
    const Complex G = endpoint_moment(traces, 1, k, t);
    const Complex rhs = std::polar(1.0, k * k * k * t) * (-F + std::polar(1.0, -k) * G);
    out[i] = std::abs(what - rhs);
  }
  return out;
}

}  // namespace airy
