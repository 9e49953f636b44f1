// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

double shrink(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}
}  // namespace

std::string atom_kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::Zero: return "zero";
    case AtomKind::QuadraticHalfSqNorm: return "quadratic_half_sq_norm";
    case AtomKind::L1Norm: return "l1_norm";
    case AtomKind::IndicatorBox: return "indicator_box";
    case AtomKind::IndicatorNonneg: return "indicator_nonneg";
    case AtomKind::IndicatorZero: return "indicator_zero";
    case AtomKind::IndicatorPolyhedron: return "indicator_polyhedron";
    case AtomKind::LinearPlusIndicatorInfBall: return "linear_plus_indicator_inf_ball";
    case AtomKind::IndicatorExpEpigraph: return "indicator_exp_epigraph";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SubdiffSet

SubdiffSet SubdiffSet::intervals(Vec lo, Vec hi) {
  SubdiffSet s;
  s.kind = Kind::IntervalProduct;
  s.lo = std::move(lo);
  s.hi = std::move(hi);
  return s;
}

SubdiffSet SubdiffSet::free_space(int dim) {
  return intervals(Vec::Constant(dim, -kInf), Vec::Constant(dim, kInf));
}

SubdiffSet SubdiffSet::cone(Mat generators) {
  SubdiffSet s;
  s.kind = Kind::GeneratedCone;
  s.generators = std::move(generators);
  return s;
}

Vec nnls_cone_point(const Mat& G, const Vec& target) {
  if (G.cols() == 0) return Vec::Zero(target.size());
  const int k = static_cast<int>(G.cols());
  Mat M = G.transpose() * G;
  Vec r = G.transpose() * target;
  Vec nu = Vec::Zero(k);
  // cyclic coordinate descent on the NNQP dual; exact per-coordinate steps
  for (int sweep = 0; sweep < 20000; ++sweep) {
    double change = 0.0;
    for (int i = 0; i < k; ++i) {
      double mii = M(i, i);
      if (mii <= 0.0) continue;
      double gi = M.row(i).dot(nu) - r[i];
      double ni = std::max(0.0, nu[i] - gi / mii);
      change = std::max(change, std::abs(ni - nu[i]));
      nu[i] = ni;
    }
    if (change <= 1e-14 * (1.0 + nu.lpNorm<Eigen::Infinity>())) break;
  }
  return G * nu;
}

Vec SubdiffSet::project(const Vec& target) const {
  switch (kind) {
    case Kind::Empty:
      throw std::logic_error("SubdiffSet::project on empty set");
    case Kind::IntervalProduct: {
      Vec p(target.size());
      for (int i = 0; i < target.size(); ++i) p[i] = clamp(target[i], lo[i], hi[i]);
      return p;
    }
    case Kind::GeneratedCone:
      return nnls_cone_point(generators, target);
  }
  throw std::logic_error("unreachable");
}

double SubdiffSet::dist(const Vec& target) const {
  if (kind == Kind::Empty) return kInf;
  return (project(target) - target).norm();
}

// ---------------------------------------------------------------------------
// LinearSystem

LinearSystem LinearSystem::whole_space(int dim) {
  LinearSystem s;
  s.dim = dim;
  s.C = Mat::Zero(0, dim);
  s.c = Vec::Zero(0);
  return s;
}

void LinearSystem::append_row(const Vec& row, double rhs, bool equality) {
  const int r = rows();
  C.conservativeResize(r + 1, Eigen::NoChange);
  C.row(r) = row.transpose();
  c.conservativeResize(r + 1);
  c[r] = rhs;
  if (equality) eq_rows.push_back(r);
}

// ---------------------------------------------------------------------------
// factories

ConvexAtom ConvexAtom::zero(int dim) {
  if (dim <= 0) throw std::invalid_argument("atom dim must be positive");
  return ConvexAtom(AtomKind::Zero, dim);
}

ConvexAtom ConvexAtom::quadratic(Vec center) {
  const int d = static_cast<int>(center.size());
  if (d <= 0) throw std::invalid_argument("atom dim must be positive");
  ConvexAtom a(AtomKind::QuadraticHalfSqNorm, d);
  a.a_ = std::move(center);
  return a;
}

ConvexAtom ConvexAtom::quadratic_masked(Vec center, std::vector<std::uint8_t> mask) {
  ConvexAtom a = quadratic(std::move(center));
  if (!mask.empty() && static_cast<int>(mask.size()) != a.dim_)
    throw std::invalid_argument("mask length must match dim");
  a.mask_ = std::move(mask);
  return a;
}

ConvexAtom ConvexAtom::l1(Vec center) {
  const int d = static_cast<int>(center.size());
  if (d <= 0) throw std::invalid_argument("atom dim must be positive");
  ConvexAtom a(AtomKind::L1Norm, d);
  a.a_ = std::move(center);
  return a;
}

ConvexAtom ConvexAtom::box(Vec lower, Vec upper) {
  const int d = static_cast<int>(lower.size());
  if (d <= 0 || upper.size() != d) throw std::invalid_argument("box bounds mismatch");
  for (int i = 0; i < d; ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
      throw std::invalid_argument("box requires L <= U componentwise");
  }
  ConvexAtom a(AtomKind::IndicatorBox, d);
  a.lo_ = std::move(lower);
  a.hi_ = std::move(upper);
  return a;
}

ConvexAtom ConvexAtom::nonneg(int dim) {
  if (dim <= 0) throw std::invalid_argument("atom dim must be positive");
  return ConvexAtom(AtomKind::IndicatorNonneg, dim);
}

ConvexAtom ConvexAtom::indicator_zero(int dim) {
  if (dim <= 0) throw std::invalid_argument("atom dim must be positive");
  return ConvexAtom(AtomKind::IndicatorZero, dim);
}

ConvexAtom ConvexAtom::polyhedron(Mat C, Vec c) {
  const int d = static_cast<int>(C.cols());
  if (d <= 0 || C.rows() != c.size()) throw std::invalid_argument("polyhedron shape mismatch");
  for (int i = 0; i < C.rows(); ++i) {
    if (C.row(i).norm() == 0.0 && c[i] < 0.0)
      throw std::invalid_argument("polyhedron has an unsatisfiable zero row");
  }
  ConvexAtom a(AtomKind::IndicatorPolyhedron, d);
  a.C_ = std::move(C);
  a.c_ = std::move(c);
  return a;
}

ConvexAtom ConvexAtom::linear_inf_ball(Vec center) {
  const int d = static_cast<int>(center.size());
  if (d <= 0) throw std::invalid_argument("atom dim must be positive");
  ConvexAtom a(AtomKind::LinearPlusIndicatorInfBall, d);
  a.a_ = std::move(center);
  return a;
}

ConvexAtom ConvexAtom::exp_epigraph() { return ConvexAtom(AtomKind::IndicatorExpEpigraph, 2); }

void ConvexAtom::check_dim(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::invalid_argument("dimension mismatch: atom dim " + std::to_string(dim_) +
                                ", argument dim " + std::to_string(x.size()));
}

bool ConvexAtom::mask_all() const {
  if (mask_.empty()) return true;
  return std::all_of(mask_.begin(), mask_.end(), [](std::uint8_t m) { return m != 0; });
}

// ---------------------------------------------------------------------------
// evaluation

ExtReal ConvexAtom::eval(const Vec& x) const {
  check_dim(x);
  const double s = poly_slack(x);
  switch (kind_) {
    case AtomKind::Zero:
      return 0.0;
    case AtomKind::QuadraticHalfSqNorm: {
      double v = 0.0;
      for (int i = 0; i < dim_; ++i)
        if (mask_flag(i)) v += 0.5 * (x[i] - a_[i]) * (x[i] - a_[i]);
      return v;
    }
    case AtomKind::L1Norm:
      return (x - a_).lpNorm<1>();
    case AtomKind::IndicatorBox:
      for (int i = 0; i < dim_; ++i)
        if (x[i] < lo_[i] - s || x[i] > hi_[i] + s) return ExtReal::inf();
      return 0.0;
    case AtomKind::IndicatorNonneg:
      for (int i = 0; i < dim_; ++i)
        if (x[i] < -s) return ExtReal::inf();
      return 0.0;
    case AtomKind::IndicatorZero:
      return x.lpNorm<Eigen::Infinity>() <= s ? ExtReal(0.0) : ExtReal::inf();
    case AtomKind::IndicatorPolyhedron: {
      Vec r = C_ * x - c_;
      return r.maxCoeff() <= s ? ExtReal(0.0) : ExtReal::inf();
    }
    case AtomKind::LinearPlusIndicatorInfBall:
      if (x.lpNorm<Eigen::Infinity>() > 1.0 + s) return ExtReal::inf();
      return a_.dot(x);
    case AtomKind::IndicatorExpEpigraph: {
      double gap = x[1] - std::exp(x[0]);
      return gap >= -poly_slack(x) * (1.0 + std::exp(std::min(x[0], 300.0))) ? ExtReal(0.0)
                                                                             : ExtReal::inf();
    }
  }
  throw std::logic_error("unreachable");
}

bool ConvexAtom::has_conjugate() const {
  return kind_ != AtomKind::IndicatorPolyhedron && kind_ != AtomKind::IndicatorExpEpigraph;
}

ExtReal ConvexAtom::conjugate(const Vec& q) const {
  check_dim(q);
  const double s = poly_slack(q);
  switch (kind_) {
    case AtomKind::Zero:
      // conjugate is the indicator of {0}
      return q.lpNorm<Eigen::Infinity>() <= s ? ExtReal(0.0) : ExtReal::inf();
    case AtomKind::QuadraticHalfSqNorm: {
      double v = 0.0;
      for (int i = 0; i < dim_; ++i) {
        if (mask_flag(i)) {
          v += 0.5 * q[i] * q[i] + a_[i] * q[i];
        } else if (std::abs(q[i]) > s) {
          return ExtReal::inf();
        }
      }
      return v;
    }
    case AtomKind::L1Norm:
      // indicator of the l_inf unit ball, shifted by the center's linear term
      if (q.lpNorm<Eigen::Infinity>() > 1.0 + s) return ExtReal::inf();
      return a_.dot(q);
    case AtomKind::IndicatorBox: {
      // support function of the box; infinite bounds restrict the domain
      double v = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double qi = q[i];
        if (qi > s && std::isinf(hi_[i])) return ExtReal::inf();
        if (qi < -s && std::isinf(lo_[i])) return ExtReal::inf();
        if (qi > 0 && std::isfinite(hi_[i]))
          v += qi * hi_[i];
        else if (qi < 0 && std::isfinite(lo_[i]))
          v += qi * lo_[i];
        // remaining cases pair a (near-)zero q_i with an infinite bound
      }
      return v;
    }
    case AtomKind::IndicatorNonneg:
      return q.maxCoeff() <= s ? ExtReal(0.0) : ExtReal::inf();
    case AtomKind::IndicatorZero:
      return 0.0;
    case AtomKind::LinearPlusIndicatorInfBall:
      return (q - a_).lpNorm<1>();
    default:
      throw std::runtime_error("no closed-form conjugate registered for atom kind " +
                               atom_kind_name(kind_));
  }
}

// ---------------------------------------------------------------------------
// prox

Vec project_polyhedron(const Mat& C, const Vec& c, const Vec& v) {
  if (C.rows() == 0) return v;
  Vec r = C * v - c;
  if (r.maxCoeff() <= 0.0) return v;
  const int k = static_cast<int>(C.rows());
  Mat M = C * C.transpose();
  Vec nu = Vec::Zero(k);
  for (int sweep = 0; sweep < 50000; ++sweep) {
    double kkt = 0.0;
    for (int i = 0; i < k; ++i) {
      double mii = M(i, i);
      if (mii <= 0.0) continue;
      double gi = M.row(i).dot(nu) - r[i];
      nu[i] = std::max(0.0, nu[i] - gi / mii);
    }
    for (int i = 0; i < k; ++i) {
      double gi = M.row(i).dot(nu) - r[i];
      kkt = std::max(kkt, std::abs(std::min(nu[i], gi)));
      kkt = std::max(kkt, nu[i] > 0 ? std::abs(gi) : std::max(0.0, -gi));
    }
    if (kkt <= 1e-13 * (1.0 + r.lpNorm<Eigen::Infinity>())) break;
  }
  return v - C.transpose() * nu;
}

namespace {
// projection onto the epigraph of exp; golden section on the boundary
// parameter followed by a few Newton steps
Vec project_exp_epigraph(const Vec& v) {
  if (v[1] >= std::exp(v[0])) return v;
  auto phi = [&](double p) {
    double e = std::exp(p);
    return 0.5 * ((p - v[0]) * (p - v[0]) + (e - v[1]) * (e - v[1]));
  };
  double hi = v[0];
  double lo = v[0] - 1.0;
  auto dphi = [&](double p) {
    double e = std::exp(p);
    return (p - v[0]) + e * (e - v[1]);
  };
  while (dphi(lo) > 0.0 && lo > v[0] - 800.0) lo -= 20.0;
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = phi(x1), f2 = phi(x2);
  for (int it = 0; it < 240 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = phi(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = phi(x2);
    }
  }
  double p = 0.5 * (a + b);
  for (int it = 0; it < 4; ++it) {
    double e = std::exp(p);
    double g = (p - v[0]) + e * (e - v[1]);
    double h = 1.0 + e * (2.0 * e - v[1]);
    if (h <= 0.0) break;
    double step = g / h;
    if (!std::isfinite(step)) break;
    p -= step;
  }
  Vec out(2);
  out[0] = p;
  out[1] = std::exp(p);
  return out;
}
}  // namespace

Vec ConvexAtom::prox(const Vec& v, double t) const {
  check_dim(v);
  if (!(t > 0.0)) throw std::invalid_argument("prox requires t > 0");
  switch (kind_) {
    case AtomKind::Zero:
      return v;
    case AtomKind::QuadraticHalfSqNorm: {
      Vec p = v;
      for (int i = 0; i < dim_; ++i)
        if (mask_flag(i)) p[i] = (v[i] + t * a_[i]) / (1.0 + t);
      return p;
    }
    case AtomKind::L1Norm: {
      Vec p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = a_[i] + shrink(v[i] - a_[i], t);
      return p;
    }
    case AtomKind::IndicatorBox: {
      Vec p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = clamp(v[i], lo_[i], hi_[i]);
      return p;
    }
    case AtomKind::IndicatorNonneg:
      return v.cwiseMax(0.0);
    case AtomKind::IndicatorZero:
      return Vec::Zero(dim_);
    case AtomKind::IndicatorPolyhedron:
      return project_polyhedron(C_, c_, v);
    case AtomKind::LinearPlusIndicatorInfBall: {
      Vec p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = clamp(v[i] - t * a_[i], -1.0, 1.0);
      return p;
    }
    case AtomKind::IndicatorExpEpigraph:
      return project_exp_epigraph(v);
  }
  throw std::logic_error("unreachable");
}

Vec ConvexAtom::conj_prox(const Vec& v, double t) const {
  check_dim(v);
  if (!(t > 0.0)) throw std::invalid_argument("prox requires t > 0");
  // Moreau: prox_{t psi*}(v) = v - t prox_{psi / t}(v / t)
  return v - t * prox(v / t, 1.0 / t);
}

// ---------------------------------------------------------------------------
// checks

Certificate ConvexAtom::subdiff_check(const Vec& x, const Vec& q, double tol) const {
  check_dim(x);
  check_dim(q);
  ExtReal fx = eval(x);
  if (fx.is_inf()) {
    Certificate c = Certificate::fail(kInf, "point outside dom");
    c.domain_violation = true;
    return c;
  }
  if (has_conjugate()) {
    ExtReal fq = conjugate(q);
    if (fq.is_inf()) return Certificate::fail(kInf, "candidate outside dom of conjugate");
    double r = std::abs(fx.value() + fq.value() - x.dot(q));
    return r <= tol ? Certificate::pass(r) : Certificate::fail(r, "Fenchel-Young residual above tol");
  }
  // no conjugate closed form: use the subdifferential set distance
  double r = subdiff(x).dist(q);
  return r <= tol ? Certificate::pass(r) : Certificate::fail(r, "subdifferential distance above tol");
}

Certificate ConvexAtom::domain_check(const Vec& x, bool relative_interior) const {
  check_dim(x);
  if (kind_ == AtomKind::IndicatorExpEpigraph) {
    double gap = x[1] - std::exp(x[0]);
    if (relative_interior) {
      // full-dimensional set: ri = strict interior
      return gap > poly_slack(x) ? Certificate::pass(0.0)
                                 : Certificate::fail(std::max(0.0, -gap), "not in int(dom)");
    }
    return eval(x).finite() ? Certificate::pass(0.0)
                            : Certificate::fail(std::max(0.0, -gap), "outside dom");
  }
  // catalog atoms: full domain, or a polyhedron where plain membership
  // suffices even under the ri flag
  (void)relative_interior;
  if (eval(x).finite()) return Certificate::pass(0.0);
  LinearSystem sys = domain_system();
  double viol = 0.0;
  if (sys.rows() > 0) {
    Vec r = sys.C * x - sys.c;
    viol = std::max(0.0, r.maxCoeff());
  }
  Certificate c = Certificate::fail(viol, "outside dom");
  c.domain_violation = true;
  return c;
}

Certificate ConvexAtom::conj_domain_check(const Vec& q, bool relative_interior) const {
  check_dim(q);
  (void)relative_interior;
  if (!has_conjugate())
    return Certificate::indeterminate_result("conjugate domain not decidable for " +
                                             atom_kind_name(kind_));
  // conjugates of the catalog are polyhedral functions or quadratics whose
  // domain is an affine set, so membership answers the ri query too
  if (conjugate(q).finite()) return Certificate::pass(0.0);
  Certificate c = Certificate::fail(0.0, "outside dom of conjugate");
  c.domain_violation = true;
  LinearSystem sys = conj_domain_system();
  if (sys.rows() > 0) {
    Vec r = sys.C * q - sys.c;
    c.residual = std::max(0.0, r.maxCoeff());
  }
  return c;
}

// ---------------------------------------------------------------------------
// subdifferential sets

SubdiffSet ConvexAtom::subdiff(const Vec& x, double kink_tol) const {
  check_dim(x);
  if (!eval(x).finite()) return SubdiffSet::empty_set();
  const double s = kink_tol < 0.0 ? poly_slack(x) : kink_tol;
  switch (kind_) {
    case AtomKind::Zero:
      return SubdiffSet::point(Vec::Zero(dim_));
    case AtomKind::QuadraticHalfSqNorm: {
      Vec g = Vec::Zero(dim_);
      for (int i = 0; i < dim_; ++i)
        if (mask_flag(i)) g[i] = x[i] - a_[i];
      return SubdiffSet::point(g);
    }
    case AtomKind::L1Norm: {
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        double d = x[i] - a_[i];
        if (d > s) {
          lo[i] = hi[i] = 1.0;
        } else if (d < -s) {
          lo[i] = hi[i] = -1.0;
        } else {
          lo[i] = -1.0;
          hi[i] = 1.0;
        }
      }
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorBox: {
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        bool at_lo = x[i] <= lo_[i] + s;
        bool at_hi = x[i] >= hi_[i] - s;
        lo[i] = at_lo ? -kInf : 0.0;
        hi[i] = at_hi ? kInf : 0.0;
      }
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorNonneg: {
      Vec lo(dim_), hi = Vec::Zero(dim_);
      for (int i = 0; i < dim_; ++i) lo[i] = x[i] <= s ? -kInf : 0.0;
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorZero:
      return SubdiffSet::free_space(dim_);
    case AtomKind::IndicatorPolyhedron: {
      // normal cone spanned by the active rows
      Vec r = C_ * x - c_;
      std::vector<int> act;
      for (int i = 0; i < r.size(); ++i)
        if (r[i] >= -s) act.push_back(i);
      Mat G(dim_, act.size());
      for (size_t j = 0; j < act.size(); ++j) G.col(static_cast<int>(j)) = C_.row(act[j]).transpose();
      return SubdiffSet::cone(std::move(G));
    }
    case AtomKind::LinearPlusIndicatorInfBall: {
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        lo[i] = x[i] <= -1.0 + s ? -kInf : a_[i];
        hi[i] = x[i] >= 1.0 - s ? kInf : a_[i];
      }
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorExpEpigraph: {
      double gap = x[1] - std::exp(x[0]);
      if (gap > s * (1.0 + std::exp(x[0]))) return SubdiffSet::point(Vec::Zero(2));
      Mat G(2, 1);
      G(0, 0) = std::exp(x[0]);
      G(1, 0) = -1.0;
      return SubdiffSet::cone(std::move(G));
    }
  }
  throw std::logic_error("unreachable");
}

SubdiffSet ConvexAtom::conj_subdiff(const Vec& q, double kink_tol) const {
  check_dim(q);
  if (!has_conjugate()) throw std::runtime_error("no conjugate registered for " + atom_kind_name(kind_));
  if (!conjugate(q).finite()) return SubdiffSet::empty_set();
  const double s = kink_tol < 0.0 ? poly_slack(q) : kink_tol;
  switch (kind_) {
    case AtomKind::Zero:
      // conjugate delta_{0}: subdifferential is the whole space at 0
      return SubdiffSet::free_space(dim_);
    case AtomKind::QuadraticHalfSqNorm: {
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        if (mask_flag(i)) {
          lo[i] = hi[i] = q[i] + a_[i];
        } else {
          lo[i] = -kInf;
          hi[i] = kInf;
        }
      }
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::L1Norm: {
      // conjugate <a, q> + delta(inf-ball): a + normal cone of the ball
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        lo[i] = q[i] <= -1.0 + s ? -kInf : a_[i];
        hi[i] = q[i] >= 1.0 - s ? kInf : a_[i];
      }
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorBox: {
      // argmax set of the support function
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        if (q[i] > s) {
          lo[i] = hi[i] = hi_[i];
        } else if (q[i] < -s) {
          lo[i] = hi[i] = lo_[i];
        } else {
          lo[i] = lo_[i];
          hi[i] = hi_[i];
        }
      }
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorNonneg: {
      // conjugate delta(q <= 0): normal cone of the nonpositive orthant
      Vec lo = Vec::Zero(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) hi[i] = q[i] >= -s ? kInf : 0.0;
      return SubdiffSet::intervals(lo, hi);
    }
    case AtomKind::IndicatorZero:
      // conjugate is the zero function
      return SubdiffSet::point(Vec::Zero(dim_));
    case AtomKind::LinearPlusIndicatorInfBall: {
      // conjugate ||q - a||_1
      Vec lo(dim_), hi(dim_);
      for (int i = 0; i < dim_; ++i) {
        double d = q[i] - a_[i];
        if (d > s) {
          lo[i] = hi[i] = 1.0;
        } else if (d < -s) {
          lo[i] = hi[i] = -1.0;
        } else {
          lo[i] = -1.0;
          hi[i] = 1.0;
        }
      }
      return SubdiffSet::intervals(lo, hi);
    }
    default:
      throw std::logic_error("unreachable");
  }
}

Vec ConvexAtom::domain_project(const Vec& x) const {
  check_dim(x);
  switch (kind_) {
    case AtomKind::Zero:
    case AtomKind::QuadraticHalfSqNorm:
    case AtomKind::L1Norm:
      return x;
    case AtomKind::IndicatorBox: {
      Vec p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = clamp(x[i], lo_[i], hi_[i]);
      return p;
    }
    case AtomKind::IndicatorNonneg:
      return x.cwiseMax(0.0);
    case AtomKind::IndicatorZero:
      return Vec::Zero(dim_);
    case AtomKind::IndicatorPolyhedron:
      return project_polyhedron(C_, c_, x);
    case AtomKind::LinearPlusIndicatorInfBall: {
      Vec p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = clamp(x[i], -1.0, 1.0);
      return p;
    }
    case AtomKind::IndicatorExpEpigraph:
      return project_exp_epigraph(x);
  }
  throw std::logic_error("unreachable");
}

Vec ConvexAtom::conj_domain_project(const Vec& q) const {
  check_dim(q);
  switch (kind_) {
    case AtomKind::Zero:
      return Vec::Zero(dim_);
    case AtomKind::QuadraticHalfSqNorm: {
      Vec p = q;
      for (int i = 0; i < dim_; ++i)
        if (!mask_flag(i)) p[i] = 0.0;
      return p;
    }
    case AtomKind::L1Norm: {
      Vec p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = clamp(q[i], -1.0, 1.0);
      return p;
    }
    case AtomKind::IndicatorBox: {
      Vec p = q;
      for (int i = 0; i < dim_; ++i) {
        if (std::isinf(hi_[i])) p[i] = std::min(p[i], 0.0);
        if (std::isinf(lo_[i])) p[i] = std::max(p[i], 0.0);
      }
      return p;
    }
    case AtomKind::IndicatorNonneg:
      return q.cwiseMin(0.0);
    case AtomKind::IndicatorZero:
    case AtomKind::LinearPlusIndicatorInfBall:
      return q;
    default:
      throw std::runtime_error("no conjugate registered for " + atom_kind_name(kind_));
  }
}

// ---------------------------------------------------------------------------
// domain descriptions and flags

LinearSystem ConvexAtom::domain_system() const {
  LinearSystem s = LinearSystem::whole_space(dim_);
  switch (kind_) {
    case AtomKind::Zero:
    case AtomKind::QuadraticHalfSqNorm:
    case AtomKind::L1Norm:
      return s;
    case AtomKind::IndicatorBox:
      for (int i = 0; i < dim_; ++i) {
        if (std::isfinite(hi_[i])) s.append_row(Vec::Unit(dim_, i), hi_[i], false);
        if (std::isfinite(lo_[i])) s.append_row(-Vec::Unit(dim_, i), -lo_[i], false);
      }
      return s;
    case AtomKind::IndicatorNonneg:
      for (int i = 0; i < dim_; ++i) s.append_row(-Vec::Unit(dim_, i), 0.0, false);
      return s;
    case AtomKind::IndicatorZero:
      for (int i = 0; i < dim_; ++i) s.append_row(Vec::Unit(dim_, i), 0.0, true);
      return s;
    case AtomKind::IndicatorPolyhedron:
      s.C = C_;
      s.c = c_;
      return s;
    case AtomKind::LinearPlusIndicatorInfBall:
      for (int i = 0; i < dim_; ++i) {
        s.append_row(Vec::Unit(dim_, i), 1.0, false);
        s.append_row(-Vec::Unit(dim_, i), 1.0, false);
      }
      return s;
    case AtomKind::IndicatorExpEpigraph:
      s.representable = false;
      return s;
  }
  throw std::logic_error("unreachable");
}

LinearSystem ConvexAtom::conj_domain_system() const {
  LinearSystem s = LinearSystem::whole_space(dim_);
  switch (kind_) {
    case AtomKind::Zero:
      for (int i = 0; i < dim_; ++i) s.append_row(Vec::Unit(dim_, i), 0.0, true);
      return s;
    case AtomKind::QuadraticHalfSqNorm:
      for (int i = 0; i < dim_; ++i)
        if (!mask_flag(i)) s.append_row(Vec::Unit(dim_, i), 0.0, true);
      return s;
    case AtomKind::L1Norm:
      for (int i = 0; i < dim_; ++i) {
        s.append_row(Vec::Unit(dim_, i), 1.0, false);
        s.append_row(-Vec::Unit(dim_, i), 1.0, false);
      }
      return s;
    case AtomKind::IndicatorBox:
      for (int i = 0; i < dim_; ++i) {
        if (std::isinf(hi_[i])) s.append_row(Vec::Unit(dim_, i), 0.0, false);
        if (std::isinf(lo_[i])) s.append_row(-Vec::Unit(dim_, i), 0.0, false);
      }
      return s;
    case AtomKind::IndicatorNonneg:
      for (int i = 0; i < dim_; ++i) s.append_row(Vec::Unit(dim_, i), 0.0, false);
      return s;
    case AtomKind::IndicatorZero:
    case AtomKind::LinearPlusIndicatorInfBall:
      return s;
    case AtomKind::IndicatorPolyhedron:
    case AtomKind::IndicatorExpEpigraph:
      s.representable = false;
      return s;
  }
  throw std::logic_error("unreachable");
}

bool ConvexAtom::is_polyhedral() const {
  switch (kind_) {
    case AtomKind::QuadraticHalfSqNorm:
    case AtomKind::IndicatorExpEpigraph:
      return false;
    default:
      return true;
  }
}

bool ConvexAtom::conj_is_polyhedral() const {
  switch (kind_) {
    case AtomKind::QuadraticHalfSqNorm:
    case AtomKind::IndicatorExpEpigraph:
      return false;
    default:
      return true;
  }
}

bool ConvexAtom::is_indicator() const {
  switch (kind_) {
    case AtomKind::IndicatorBox:
    case AtomKind::IndicatorNonneg:
    case AtomKind::IndicatorZero:
    case AtomKind::IndicatorPolyhedron:
    case AtomKind::IndicatorExpEpigraph:
      return true;
    default:
      return false;
  }
}

bool ConvexAtom::bounded_below() const { return true; }

bool ConvexAtom::piecewise_linear_quadratic() const {
  return kind_ != AtomKind::IndicatorExpEpigraph;
}

bool ConvexAtom::strongly_convex() const {
  return kind_ == AtomKind::QuadraticHalfSqNorm && mask_all();
}

bool ConvexAtom::domain_is_whole_space() const {
  switch (kind_) {
    case AtomKind::Zero:
    case AtomKind::QuadraticHalfSqNorm:
    case AtomKind::L1Norm:
      return true;
    default:
      return false;
  }
}

}  // namespace ccopt
