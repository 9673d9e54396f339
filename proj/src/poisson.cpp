#include "liebundle/poisson.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "liebundle/linalg.hpp"

namespace liebundle {

namespace {

std::vector<double> delta_diag(const DeformationParams& p) {
  std::vector<double> d(static_cast<std::size_t>(p.n()));
  for (int r = 0; r < p.n(); ++r) d[static_cast<std::size_t>(r)] = p.coeff(0, r);
  return d;
}

std::vector<double> eta_diag(const DeformationParams& p) {
  // suffix products a_{r+1}...a_{n-1}; division-free
  std::vector<double> e(static_cast<std::size_t>(p.n()));
  for (int r = 0; r < p.n(); ++r) e[static_cast<std::size_t>(r)] = p.coeff(r, p.n() - 1);
  return e;
}

Matrix scale_rows(const std::vector<double>& d, const Matrix& m) {
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = d[static_cast<std::size_t>(i)] * m(i, j);
  return out;
}

Matrix scale_cols(const Matrix& m, const std::vector<double>& d) {
  Matrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * d[static_cast<std::size_t>(j)];
  return out;
}

/// K(rho) = rho - delta^-1 rho^T delta; only valid with nonzero parameters.
Matrix skew_completion(const DeformationParams& p, const Matrix& rho) {
  const int n = p.n();
  Matrix k(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double dj = p.coeff(0, j);
      const double di = p.coeff(0, i);
      k(i, j) = rho(i, j) - (dj / di) * rho(j, i);
    }
  return k;
}

void require_nonzero_params(const DeformationParams& p, const char* where) {
  if (!p.all_nonzero()) throw std::invalid_argument(std::string(where) + ": zero deformation parameter");
}

std::vector<double> lower_entries_as_upper_partials(const Matrix& mu, int n) {
  std::vector<double> partials(static_cast<std::size_t>(skew_dim(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) partials[static_cast<std::size_t>(upper_coord_index(n, i, j))] = mu(j, i);
  return partials;
}

}  // namespace

SkewElement gradient_from_partials(const ParamsPtr& params, std::span<const double> upper_partials) {
  const int n = params->n();
  if (static_cast<int>(upper_partials.size()) != skew_dim(n)) throw std::invalid_argument("gradient_from_partials: wrong length");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = upper_partials[static_cast<std::size_t>(upper_coord_index(n, i, j))];
      m(j, i) = v;
      m(i, j) = -params->coeff(i, j) * v;
    }
  return SkewElement(params, std::move(m), unchecked);
}

SkewElement fd_gradient(const std::function<double(const DualPoint&)>& eval, const DualPoint& rho) {
  const ParamsPtr& params = rho.params();
  const int dim = skew_dim(params->n());
  std::vector<double> coords = rho.coords();
  std::vector<double> partials(static_cast<std::size_t>(dim));
  const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
  for (int k = 0; k < dim; ++k) {
    const double xk = coords[static_cast<std::size_t>(k)];
    double h = cbrt_eps * (1.0 + std::abs(xk));
    // round the step so xk + h - xk is exact
    volatile double tmp = xk + h;
    h = tmp - xk;
    coords[static_cast<std::size_t>(k)] = xk + h;
    const double fp = eval(dual_from_coords(params, coords));
    coords[static_cast<std::size_t>(k)] = xk - h;
    const double fm = eval(dual_from_coords(params, coords));
    coords[static_cast<std::size_t>(k)] = xk;
    if (!std::isfinite(fp) || !std::isfinite(fm)) throw std::runtime_error("fd_gradient: non-finite function value");
    partials[static_cast<std::size_t>(k)] = (fp - fm) / (2.0 * h);
  }
  return gradient_from_partials(params, partials);
}

SkewElement gradient(const ScalarField& f, const DualPoint& rho) {
  if (f.grad) return f.grad(rho);
  return fd_gradient(f.eval, rho);
}

double lie_poisson_bracket(const ScalarField& f, const ScalarField& g, const DualPoint& rho, const SymElement& s) {
  require_same_params(rho.params(), s.params());
  const SkewElement df = gradient(f, rho);
  const SkewElement dg = gradient(g, rho);
  return trace_pair(rho, bracket(df, dg, s));
}

DualPoint coadjoint(const SkewElement& x, const DualPoint& rho, const SymElement& s) {
  require_same_params(x.params(), rho.params());
  require_same_params(x.params(), s.params());
  const Matrix m = rho.matrix() * x.matrix() * s.matrix() - s.matrix() * x.matrix() * rho.matrix();
  return pi_project(rho.params(), m);
}

double casimir_value(int l, const DualPoint& rho, const SymElement& s) {
  require_same_params(rho.params(), s.params());
  if (l < 1) throw std::invalid_argument("casimir_value: l must be >= 1");
  const DeformationParams& p = *rho.params();
  require_nonzero_params(p, "casimir_value");
  const Matrix sinv = invert(s.matrix()).inverse;
  const Matrix b = skew_completion(p, rho.matrix()) * sinv;
  return matmul_power(b, 2 * l).trace() / (2.0 * l);
}

SkewElement casimir_gradient(int l, const DualPoint& rho, const SymElement& s) {
  require_same_params(rho.params(), s.params());
  if (l < 1) throw std::invalid_argument("casimir_gradient: l must be >= 1");
  const DeformationParams& p = *rho.params();
  require_nonzero_params(p, "casimir_gradient");
  const int n = p.n();
  const Matrix sinv = invert(s.matrix()).inverse;
  const Matrix b = skew_completion(p, rho.matrix()) * sinv;
  const Matrix bp = matmul_power(b, 2 * l - 1);
  const std::vector<double> d = delta_diag(p);
  std::vector<double> dinv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) dinv[i] = 1.0 / d[i];
  // mu = S^-1 B^(2l-1) - delta^-1 (S^-1 B^(2l-1))^T delta
  const Matrix first = sinv * bp;
  const Matrix mu = first - scale_cols(scale_rows(dinv, first.transpose()), d);
  return gradient_from_partials(rho.params(), lower_entries_as_upper_partials(mu, n));
}

ScalarField casimir_field(int l, const SymElement& s) {
  ScalarField f;
  f.name = "C" + std::to_string(l);
  SymElement s_copy = s;
  f.eval = [l, s_copy](const DualPoint& rho) { return casimir_value(l, rho, s_copy); };
  f.grad = [l, s_copy](const DualPoint& rho) { return casimir_gradient(l, rho, s_copy); };
  return f;
}

namespace {

/// The division-free expansion matrix
/// G = a (rho S^-1)^2 - eta (S^-1 rho)^T delta (rho S^-1)
///       - (rho S^-1) eta (S^-1 rho)^T delta + eta ((S^-1 rho)^T)^2 delta,
/// with a the full parameter product and eta the suffix-product diagonal.
/// Tr(G^l)/(2l) equals a^l C_l when no parameter vanishes and stays finite
/// otherwise.
Matrix degenerate_core(const DeformationParams& p, const Matrix& rho, const Matrix& sinv) {
  const double full = p.full_product();
  const std::vector<double> d = delta_diag(p);
  const std::vector<double> e = eta_diag(p);
  const Matrix u = rho * sinv;              // rho S^-1
  const Matrix rt = (sinv * rho).transpose();
  const Matrix q = scale_cols(scale_rows(e, rt), d);  // eta (S^-1 rho)^T delta
  const Matrix t4 = scale_cols(scale_rows(e, rt * rt), d);
  return full * (u * u) - q * u - u * q + t4;
}

}  // namespace

double casimir_degenerate_value(int l, const DualPoint& rho, const SymElement& s) {
  require_same_params(rho.params(), s.params());
  if (l < 1) throw std::invalid_argument("casimir_degenerate_value: l must be >= 1");
  const Matrix sinv = invert(s.matrix()).inverse;
  const Matrix g = degenerate_core(*rho.params(), rho.matrix(), sinv);
  return matmul_power(g, l).trace() / (2.0 * l);
}

SkewElement casimir_degenerate_gradient(int l, const DualPoint& rho, const SymElement& s) {
  require_same_params(rho.params(), s.params());
  if (l < 1) throw std::invalid_argument("casimir_degenerate_gradient: l must be >= 1");
  const DeformationParams& p = *rho.params();
  const int n = p.n();
  const double full = p.full_product();
  const std::vector<double> d = delta_diag(p);
  const std::vector<double> e = eta_diag(p);
  const Matrix sinv = invert(s.matrix()).inverse;
  const Matrix sinv_t = sinv.transpose();
  const Matrix& r = rho.matrix();
  const Matrix rt = r.transpose();
  const Matrix g = degenerate_core(p, r, sinv);
  const Matrix f = matmul_power(g, l - 1);
  const Matrix ft = f.transpose();

  // d/drho of Tr(G^l)/(2l); each term cycled into Tr(sigma * ...) form
  Matrix mu(n, n);
  mu += full * (sinv * r * sinv * f);
  mu += full * (sinv * f * r * sinv);
  mu -= scale_rows(e, ft * sinv_t * scale_cols(rt, d) * sinv);
  mu -= sinv * f * scale_cols(scale_rows(e, rt * sinv_t), d);
  mu -= sinv * scale_cols(scale_rows(e, rt * sinv_t), d) * f;
  mu -= scale_rows(e, sinv_t * scale_cols(rt * ft, d) * sinv);
  mu += scale_rows(e, scale_cols(ft, d) * sinv * r * sinv);
  mu += sinv * r * scale_rows(e, scale_cols(ft, d)) * sinv;
  mu *= 0.5;
  return gradient_from_partials(rho.params(), lower_entries_as_upper_partials(mu, n));
}

ScalarField casimir_degenerate_field(int l, const SymElement& s) {
  ScalarField f;
  f.name = "Ctilde" + std::to_string(l);
  SymElement s_copy = s;
  f.eval = [l, s_copy](const DualPoint& rho) { return casimir_degenerate_value(l, rho, s_copy); };
  f.grad = [l, s_copy](const DualPoint& rho) { return casimir_degenerate_gradient(l, rho, s_copy); };
  return f;
}

namespace {

using MatrixPoly = std::vector<Matrix>;  // coefficient list in lambda

MatrixPoly poly_mul(const MatrixPoly& a, const MatrixPoly& b, int order) {
  const int n = a.front().rows();
  MatrixPoly c(static_cast<std::size_t>(order) + 1, Matrix(n, n));
  for (int m = 0; m <= order; ++m)
    for (int i = 0; i <= m; ++i) {
      const int j = m - i;
      if (i < static_cast<int>(a.size()) && j < static_cast<int>(b.size()))
        c[static_cast<std::size_t>(m)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
  return c;
}

MatrixPoly poly_power(const MatrixPoly& b, int p, int order) {
  const int n = b.front().rows();
  MatrixPoly r(static_cast<std::size_t>(order) + 1, Matrix(n, n));
  r[0] = Matrix::identity(n);
  for (int k = 0; k < p; ++k) r = poly_mul(r, b, order);
  return r;
}

}  // namespace

std::vector<ScalarField> pencil_integrals(const PencilSpec& pencil, int l, int order) {
  require_same_params(pencil.s1.params(), pencil.s2.params());
  if (l < 1) throw std::invalid_argument("pencil_integrals: l must be >= 1");
  if (order < 0) throw std::invalid_argument("pencil_integrals: order must be >= 0");
  const ParamsPtr params = pencil.s1.params();
  require_nonzero_params(*params, "pencil_integrals");

  const Matrix s1inv = invert(pencil.s1.matrix()).inverse;
  // Neumann coefficients: E_m = (-1)^m S1^-1 (S2 S1^-1)^m
  MatrixPoly e(static_cast<std::size_t>(order) + 1, Matrix(params->n(), params->n()));
  e[0] = s1inv;
  const Matrix step = pencil.s2.matrix() * s1inv;
  for (int m = 1; m <= order; ++m) e[static_cast<std::size_t>(m)] = (-1.0) * (e[static_cast<std::size_t>(m) - 1] * step);

  const std::vector<double> d = delta_diag(*params);
  std::vector<double> dinv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) dinv[i] = 1.0 / d[i];

  std::vector<ScalarField> fields;
  for (int m = 0; m <= order; ++m) {
    ScalarField f;
    f.name = "C" + std::to_string(l) + "_lambda" + std::to_string(m);
    f.eval = [params, e, l, m, order](const DualPoint& rho) {
      const Matrix k = skew_completion(*params, rho.matrix());
      MatrixPoly b(e.size(), Matrix(params->n(), params->n()));
      for (std::size_t i = 0; i < e.size(); ++i) b[i] = k * e[i];
      const MatrixPoly p = poly_power(b, 2 * l, order);
      return p[static_cast<std::size_t>(m)].trace() / (2.0 * l);
    };
    f.grad = [params, e, l, m, order, d, dinv](const DualPoint& rho) {
      const int n = params->n();
      const Matrix k = skew_completion(*params, rho.matrix());
      MatrixPoly b(e.size(), Matrix(n, n));
      for (std::size_t i = 0; i < e.size(); ++i) b[i] = k * e[i];
      const MatrixPoly bp = poly_power(b, 2 * l - 1, order);
      const MatrixPoly front = poly_mul(e, bp, order);
      // mu = E B^(2l-1) - delta^-1 (B^(2l-1))^T E^T delta, coefficient m
      Matrix mu = front[static_cast<std::size_t>(m)];
      for (int i = 0; i <= m; ++i) {
        const int j = m - i;
        const Matrix term = bp[static_cast<std::size_t>(i)].transpose() * e[static_cast<std::size_t>(j)].transpose();
        mu -= scale_cols(scale_rows(dinv, term), d);
      }
      return gradient_from_partials(params, lower_entries_as_upper_partials(mu, n));
    };
    fields.push_back(std::move(f));
  }
  return fields;
}

ScalarField coordinate_field(const ParamsPtr& params, int upper_index) {
  const int dim = skew_dim(params->n());
  if (upper_index < 0 || upper_index >= dim) throw std::invalid_argument("coordinate_field: index out of range");
  ScalarField f;
  f.name = "rho[" + std::to_string(upper_index) + "]";
  f.eval = [upper_index](const DualPoint& rho) { return rho.coords()[static_cast<std::size_t>(upper_index)]; };
  f.grad = [params, upper_index, dim](const DualPoint&) {
    std::vector<double> partials(static_cast<std::size_t>(dim), 0.0);
    partials[static_cast<std::size_t>(upper_index)] = 1.0;
    return gradient_from_partials(params, partials);
  };
  return f;
}

ScalarField quadratic_field(const ParamsPtr& params, std::string name,
                            std::vector<std::tuple<int, int, double>> terms) {
  const int dim = skew_dim(params->n());
  for (const auto& [i, j, c] : terms) {
    (void)c;
    if (i < 0 || i >= dim || j < 0 || j >= dim) throw std::invalid_argument("quadratic_field: coordinate index out of range");
  }
  ScalarField f;
  f.name = std::move(name);
  f.eval = [terms](const DualPoint& rho) {
    const std::vector<double> xi = rho.coords();
    double v = 0.0;
    for (const auto& [i, j, c] : terms) v += c * xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(j)];
    return v;
  };
  f.grad = [params, terms, dim](const DualPoint& rho) {
    const std::vector<double> xi = rho.coords();
    std::vector<double> partials(static_cast<std::size_t>(dim), 0.0);
    for (const auto& [i, j, c] : terms) {
      partials[static_cast<std::size_t>(i)] += c * xi[static_cast<std::size_t>(j)];
      partials[static_cast<std::size_t>(j)] += c * xi[static_cast<std::size_t>(i)];
    }
    return gradient_from_partials(params, partials);
  };
  return f;
}

ScalarField scaled_field(std::string name, double factor, ScalarField f) {
  ScalarField out;
  out.name = std::move(name);
  auto eval = f.eval;
  out.eval = [factor, eval](const DualPoint& rho) { return factor * eval(rho); };
  if (f.grad) {
    auto grad = f.grad;
    out.grad = [factor, grad](const DualPoint& rho) {
      const SkewElement g = grad(rho);
      return SkewElement(g.params(), g.matrix() * factor, unchecked);
    };
  }
  return out;
}

Matrix poisson_tensor(const DualPoint& rho, const SymElement& s) {
  const ParamsPtr& params = rho.params();
  require_same_params(params, s.params());
  const int dim = skew_dim(params->n());
  std::vector<SkewElement> grads;
  grads.reserve(static_cast<std::size_t>(dim));
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  for (int k = 0; k < dim; ++k) {
    e[static_cast<std::size_t>(k)] = 1.0;
    grads.push_back(gradient_from_partials(params, e));
    e[static_cast<std::size_t>(k)] = 0.0;
  }
  Matrix t(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      const double v = trace_pair(rho, bracket(grads[static_cast<std::size_t>(a)], grads[static_cast<std::size_t>(b)], s));
      t(a, b) = v;
      t(b, a) = -v;
    }
  return t;
}

}  // namespace liebundle
