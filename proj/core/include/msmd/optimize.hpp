#pragma once
// Box-constrained minimization via a logistic change of variables plus
// multi-start over a Latin hypercube. Inner optimizers come from GSL
// (BFGS with analytic gradients, Nelder-Mead otherwise).

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace msmd {

struct ParamBox {
  std::vector<double> lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
  void validate() const;
  Eigen::VectorXd center() const;
};

// natural x in (lo, hi) <-> unconstrained work coordinate u
Eigen::VectorXd to_work(const Eigen::VectorXd& x, const ParamBox& box);
Eigen::VectorXd to_natural(const Eigen::VectorXd& u, const ParamBox& box);
// diagonal of dx/du at work point u
Eigen::VectorXd natural_jacobian(const Eigen::VectorXd& u, const ParamBox& box);

using ObjFn = std::function<double(const Eigen::VectorXd&)>;
using ObjGradFn = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct MinimizeOptions {
  int max_iter = 400;
  double grad_tol = 1e-6;     // on the work-space gradient norm
  double simplex_tol = 1e-8;  // characteristic simplex size
  double initial_step = 0.25; // work units
};

struct MinimizeResult {
  Eigen::VectorXd x;  // work coordinates
  double f = 0.0;
  bool converged = false;
  int iterations = 0;
};

MinimizeResult minimize_bfgs(const ObjGradFn& fdf, const Eigen::VectorXd& u0,
                             const MinimizeOptions& opt);
MinimizeResult minimize_simplex(const ObjFn& f, const Eigen::VectorXd& u0,
                                const MinimizeOptions& opt);

// 'count' stratified starts in natural coordinates; the first one is the box
// center so a sane default is always tried
std::vector<Eigen::VectorXd> latin_hypercube_starts(const ParamBox& box, int count,
                                                    std::uint64_t seed);

// which coordinates of x sit within 1e-3 of the box edge (relative to width)
std::vector<bool> boundary_flags(const Eigen::VectorXd& x, const ParamBox& box);

// pick up to 'count' pool indices walking 'ranked' (objective, index) pairs in
// order, skipping points closer than min_sep (max-norm in box fractions) to an
// already chosen one; backfills with the best skipped points if short
std::vector<int> diverse_prefix(const std::vector<std::pair<double, int>>& ranked,
                                const std::vector<Eigen::VectorXd>& pool,
                                const ParamBox& box, int count, double min_sep);

// symmetric-difference Hessian of f at x with per-coordinate steps
Eigen::MatrixXd numerical_hessian(const ObjFn& f, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& steps);

}  // namespace msmd
