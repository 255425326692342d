#include "msmd/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "msmd/rng.hpp"

namespace msmd {

namespace {

void ensure_gsl_handler_off() {
  // GSL aborts the process by default; status codes are handled at call sites
  static const int once = [] {
    gsl_set_error_handler_off();
    return 0;
  }();
  (void)once;
}

Eigen::VectorXd from_gsl(const gsl_vector* v) {
  Eigen::VectorXd x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[static_cast<int>(i)] = gsl_vector_get(v, i);
  return x;
}

void to_gsl(const Eigen::VectorXd& x, gsl_vector* v) {
  for (int i = 0; i < x.size(); ++i) gsl_vector_set(v, static_cast<std::size_t>(i), x[i]);
}

struct GradCtx {
  const ObjGradFn* fn;
};

double fdf_f(const gsl_vector* v, void* p) {
  auto* ctx = static_cast<GradCtx*>(p);
  Eigen::VectorXd g(static_cast<int>(v->size));
  return (*ctx->fn)(from_gsl(v), g);
}

void fdf_df(const gsl_vector* v, void* p, gsl_vector* grad) {
  auto* ctx = static_cast<GradCtx*>(p);
  Eigen::VectorXd g(static_cast<int>(v->size));
  (*ctx->fn)(from_gsl(v), g);
  to_gsl(g, grad);
}

void fdf_fdf(const gsl_vector* v, void* p, double* f, gsl_vector* grad) {
  auto* ctx = static_cast<GradCtx*>(p);
  Eigen::VectorXd g(static_cast<int>(v->size));
  *f = (*ctx->fn)(from_gsl(v), g);
  to_gsl(g, grad);
}

struct PlainCtx {
  const ObjFn* fn;
};

double plain_f(const gsl_vector* v, void* p) {
  auto* ctx = static_cast<PlainCtx*>(p);
  return (*ctx->fn)(from_gsl(v));
}

}  // namespace

void ParamBox::validate() const {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("box: dimension mismatch");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box: need lo < hi");
}

Eigen::VectorXd ParamBox::center() const {
  Eigen::VectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  return c;
}

Eigen::VectorXd to_work(const Eigen::VectorXd& x, const ParamBox& box) {
  box.validate();
  Eigen::VectorXd u(x.size());
  for (int i = 0; i < x.size(); ++i) {
    double f = (x[i] - box.lo[i]) / (box.hi[i] - box.lo[i]);
    f = std::clamp(f, 1e-12, 1.0 - 1e-12);
    u[i] = std::log(f / (1.0 - f));
  }
  return u;
}

Eigen::VectorXd to_natural(const Eigen::VectorXd& u, const ParamBox& box) {
  Eigen::VectorXd x(u.size());
  for (int i = 0; i < u.size(); ++i) {
    double s = 1.0 / (1.0 + std::exp(-u[i]));
    x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * s;
  }
  return x;
}

Eigen::VectorXd natural_jacobian(const Eigen::VectorXd& u, const ParamBox& box) {
  Eigen::VectorXd j(u.size());
  for (int i = 0; i < u.size(); ++i) {
    double s = 1.0 / (1.0 + std::exp(-u[i]));
    j[i] = (box.hi[i] - box.lo[i]) * s * (1.0 - s);
  }
  return j;
}

MinimizeResult minimize_bfgs(const ObjGradFn& fdf, const Eigen::VectorXd& u0,
                             const MinimizeOptions& opt) {
  ensure_gsl_handler_off();
  GradCtx ctx{&fdf};
  gsl_multimin_function_fdf F;
  F.n = static_cast<std::size_t>(u0.size());
  F.f = fdf_f;
  F.df = fdf_df;
  F.fdf = fdf_fdf;
  F.params = &ctx;

  gsl_vector* x = gsl_vector_alloc(F.n);
  to_gsl(u0, x);
  gsl_multimin_fdfminimizer* s =
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, F.n);
  gsl_multimin_fdfminimizer_set(s, &F, x, opt.initial_step, 0.1);

  MinimizeResult res;
  double f0 = s->f;
  int it = 0;
  int restarts = 0;
  double step = opt.initial_step;
  bool grad_ok = false;
  while (it < opt.max_iter) {
    int status = gsl_multimin_fdfminimizer_iterate(s);
    ++it;
    if (status == GSL_ENOPROG) {
      // the line search stalls easily; restart at the current point with a
      // shorter step before giving up
      if (restarts >= 3) break;
      ++restarts;
      step *= 0.2;
      to_gsl(from_gsl(s->x), x);
      gsl_multimin_fdfminimizer_set(s, &F, x, step, 0.1);
      continue;
    }
    if (status != GSL_SUCCESS) break;
    if (gsl_multimin_test_gradient(s->gradient, opt.grad_tol) == GSL_SUCCESS) {
      grad_ok = true;
      break;
    }
  }
  res.x = from_gsl(s->x);
  res.f = s->f;
  res.iterations = it;
  // line-search stagnation at a lower point still counts as converged
  res.converged = grad_ok || (it > 0 && res.f <= f0);
  gsl_multimin_fdfminimizer_free(s);
  gsl_vector_free(x);
  return res;
}

MinimizeResult minimize_simplex(const ObjFn& f, const Eigen::VectorXd& u0,
                                const MinimizeOptions& opt) {
  ensure_gsl_handler_off();
  PlainCtx ctx{&f};
  gsl_multimin_function F;
  F.n = static_cast<std::size_t>(u0.size());
  F.f = plain_f;
  F.params = &ctx;

  gsl_vector* x = gsl_vector_alloc(F.n);
  to_gsl(u0, x);
  gsl_vector* step = gsl_vector_alloc(F.n);
  gsl_vector_set_all(step, opt.initial_step);
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, F.n);
  gsl_multimin_fminimizer_set(s, &F, x, step);

  MinimizeResult res;
  int it = 0;
  bool size_ok = false;
  while (it < opt.max_iter) {
    int status = gsl_multimin_fminimizer_iterate(s);
    ++it;
    if (status != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(s) < opt.simplex_tol) {
      size_ok = true;
      break;
    }
  }
  res.x = from_gsl(s->x);
  res.f = s->fval;
  res.iterations = it;
  res.converged = size_ok;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return res;
}

std::vector<Eigen::VectorXd> latin_hypercube_starts(const ParamBox& box, int count,
                                                    std::uint64_t seed) {
  box.validate();
  if (count < 1) throw std::invalid_argument("latin_hypercube_starts: count < 1");
  auto g = make_rng(seed, 0xa11ce);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  int d = box.dim();
  std::vector<Eigen::VectorXd> starts(count, Eigen::VectorXd(d));
  for (int i = 0; i < d; ++i) {
    std::vector<int> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    for (int s = 0; s < count; ++s) {
      double frac = (perm[s] + unif(g)) / count;
      frac = std::clamp(frac, 0.02, 0.98);
      starts[s][i] = box.lo[i] + (box.hi[i] - box.lo[i]) * frac;
    }
  }
  starts[0] = box.center();
  return starts;
}

std::vector<int> diverse_prefix(const std::vector<std::pair<double, int>>& ranked,
                                const std::vector<Eigen::VectorXd>& pool,
                                const ParamBox& box, int count, double min_sep) {
  box.validate();
  auto frac = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd f(x.size());
    for (int i = 0; i < x.size(); ++i) f[i] = (x[i] - box.lo[i]) / (box.hi[i] - box.lo[i]);
    return f;
  };
  std::vector<int> chosen;
  std::vector<Eigen::VectorXd> fr;
  std::vector<int> skipped;
  for (const auto& [q, idx] : ranked) {
    if (static_cast<int>(chosen.size()) >= count) break;
    if (!std::isfinite(q)) continue;
    Eigen::VectorXd f = frac(pool[idx]);
    bool near = false;
    for (const Eigen::VectorXd& c : fr)
      if ((f - c).cwiseAbs().maxCoeff() < min_sep) {
        near = true;
        break;
      }
    if (near) {
      skipped.push_back(idx);
    } else {
      chosen.push_back(idx);
      fr.push_back(std::move(f));
    }
  }
  for (std::size_t s = 0; s < skipped.size() && static_cast<int>(chosen.size()) < count; ++s)
    chosen.push_back(skipped[s]);
  return chosen;
}

std::vector<bool> boundary_flags(const Eigen::VectorXd& x, const ParamBox& box) {
  std::vector<bool> flags(x.size());
  for (int i = 0; i < x.size(); ++i) {
    double w = box.hi[i] - box.lo[i];
    flags[i] = (x[i] - box.lo[i] < 1e-3 * w) || (box.hi[i] - x[i] < 1e-3 * w);
  }
  return flags;
}

Eigen::MatrixXd numerical_hessian(const ObjFn& f, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& steps) {
  int d = static_cast<int>(x.size());
  Eigen::MatrixXd h(d, d);
  double f0 = f(x);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += steps[i];
    xm[i] -= steps[i];
    h(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (steps[i] * steps[i]);
    for (int j = i + 1; j < d; ++j) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += steps[i]; xpp[j] += steps[j];
      xpm[i] += steps[i]; xpm[j] -= steps[j];
      xmp[i] -= steps[i]; xmp[j] += steps[j];
      xmm[i] -= steps[i]; xmm[j] -= steps[j];
      h(i, j) = h(j, i) =
          (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * steps[i] * steps[j]);
    }
  }
  return h;
}

}  // namespace msmd
