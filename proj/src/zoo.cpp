// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccopt/rng.hpp"

namespace ccopt {

Mat difference_matrix(int n, const std::vector<std::pair<int, int>>& edges) {
  Mat D = Mat::Zero(static_cast<int>(edges.size()), n);
  for (size_t k = 0; k < edges.size(); ++k) {
    auto [i, j] = edges[k];
    if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
      throw std::invalid_argument("edge (i, j) requires 0 <= i < j < n");
    D(static_cast<int>(k), i) = -1.0;
    D(static_cast<int>(k), j) = 1.0;
  }
  return D;
}

std::vector<std::pair<int, int>> line_graph_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

PrimalModel build_heaviside_svm(const Mat& points, const Vec& labels, double lambda) {
  const int r = static_cast<int>(points.rows());
  const int s = static_cast<int>(points.cols());
  if (labels.size() != r) throw std::invalid_argument("labels length must match point count");
  for (int i = 0; i < r; ++i)
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw std::invalid_argument("labels must be +1 or -1");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

  const int n = s + 1;
  std::vector<std::uint8_t> mask(static_cast<size_t>(n), 1);
  mask.back() = 0;  // the bias omega0 is unpenalized
  ConvexAtom f = ConvexAtom::quadratic_masked(Vec::Zero(n), std::move(mask));
  ConvexAtom g = ConvexAtom::zero(1);
  Mat A = Mat::Zero(1, n);
  Mat B(r, n);
  for (int i = 0; i < r; ++i) {
    B.row(i).head(s) = -labels[i] * points.row(i);
    B(i, s) = -labels[i];
  }
  Vec b = Vec::Constant(r, -1.0);
  return build_primal(std::move(f), std::move(g), std::move(A), std::move(B), std::move(b),
                      CardFlavor::Variant::Plus, Vec::Constant(r, lambda));
}

DualModel build_sparse_svm_dual(const Mat& points, const Vec& labels, const Vec& mu) {
  PrimalModel p = build_heaviside_svm(points, labels, 1.0);
  return derive_dual(p, mu);
}

PrimalModel build_energy_min(ConvexAtom omega, Mat A, Vec a, Mat D, Vec lambda) {
  if (omega.kind() != AtomKind::IndicatorNonneg && omega.kind() != AtomKind::IndicatorBox)
    throw std::invalid_argument("energy minimization expects a nonnegativity or box constraint");
  const int m = static_cast<int>(A.rows());
  if (a.size() != m) throw std::invalid_argument("len(a) must equal rows(A)");
  ConvexAtom g = ConvexAtom::quadratic(std::move(a));
  Vec b = Vec::Zero(D.rows());
  return build_primal(std::move(omega), std::move(g), std::move(A), std::move(D), std::move(b),
                      CardFlavor::Variant::Zero, std::move(lambda));
}

PrimalModel build_edge_denoising(const Vec& beta, const std::vector<std::pair<int, int>>& edges,
                                 Vec lambda) {
  const int n = static_cast<int>(beta.size());
  Mat D = difference_matrix(n, edges);
  ConvexAtom f = ConvexAtom::zero(n);
  ConvexAtom g = ConvexAtom::quadratic(beta);
  return build_primal(std::move(f), std::move(g), Mat::Identity(n, n), std::move(D),
                      Vec::Zero(static_cast<int>(edges.size())), CardFlavor::Variant::Zero,
                      std::move(lambda));
}

PrimalModel build_calcium(const Vec& beta, Vec lambda) {
  const int n = static_cast<int>(beta.size());
  Mat D = difference_matrix(n, line_graph_edges(n));
  ConvexAtom f = ConvexAtom::nonneg(n);
  ConvexAtom g = ConvexAtom::quadratic(beta);
  return build_primal(std::move(f), std::move(g), Mat::Identity(n, n), std::move(D), Vec::Zero(n - 1),
                      CardFlavor::Variant::Plus, std::move(lambda));
}

PrimalModel build_l1_energy(Mat A, Vec a, Mat D, Vec lambda) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  if (a.size() != m) throw std::invalid_argument("len(a) must equal rows(A)");
  ConvexAtom f = ConvexAtom::nonneg(n);
  ConvexAtom g = ConvexAtom::l1(std::move(a));
  Vec b = Vec::Zero(D.rows());
  return build_primal(std::move(f), std::move(g), std::move(A), std::move(D), std::move(b),
                      CardFlavor::Variant::Zero, std::move(lambda));
}

// ---------------------------------------------------------------------------
// data generators

SvmDataset generate_separable(int dim, int count, double margin, std::uint64_t seed) {
  if (!(margin > 0.0)) throw std::invalid_argument("margin must be positive");
  Rng rng(seed);
  Vec w = rng.normal_vec(dim);
  while (w.norm() < 1e-8) w = rng.normal_vec(dim);
  w /= w.norm();
  double b0 = rng.uniform(-0.5, 0.5);

  SvmDataset ds;
  ds.points.resize(count, dim);
  ds.labels.resize(count);
  double min_t = -1.0;
  for (int i = 0; i < count; ++i) {
    double c = rng.uniform() < 0.5 ? -1.0 : 1.0;
    Vec y = rng.normal_vec(dim, 2.0);
    double t = margin + std::abs(rng.normal(0.0, 1.0));
    // place y at signed distance c * t from the hyperplane
    Vec x = y + (c * t - (w.dot(y) + b0)) * w;
    ds.points.row(i) = x.transpose();
    ds.labels[i] = c;
    min_t = min_t < 0 ? t : std::min(min_t, t);
  }
  // scale the generating hyperplane to unit margins
  ds.margin_witness.resize(dim + 1);
  ds.margin_witness.head(dim) = w / min_t;
  ds.margin_witness[dim] = b0 / min_t;
  return ds;
}

SvmDataset generate_nonseparable(int dim, int count, std::uint64_t seed) {
  if (count < 2) throw std::invalid_argument("need at least two points");
  Rng rng(seed);
  SvmDataset ds;
  ds.points.resize(count, dim);
  ds.labels.resize(count);
  for (int i = 0; i < count; ++i) {
    ds.points.row(i) = rng.normal_vec(dim, 2.0).transpose();
    ds.labels[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
  }
  // coincident pair with opposite labels defeats any margin
  ds.points.row(1) = ds.points.row(0);
  ds.labels[0] = 1.0;
  ds.labels[1] = -1.0;
  return ds;
}

Vec generate_piecewise_signal(int n, int pieces, double sigma, std::uint64_t seed) {
  if (pieces < 1 || pieces > n) throw std::invalid_argument("pieces out of range");
  Rng rng(seed);
  std::vector<int> cuts{0};
  while (static_cast<int>(cuts.size()) < pieces) {
    int c = rng.uniform_int(1, n - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);
  Vec x(n);
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double level = std::round(rng.uniform(-4.0, 4.0));
    for (int i = cuts[k]; i < cuts[k + 1]; ++i) x[i] = level;
  }
  if (sigma > 0.0) x += rng.normal_vec(n, sigma);
  return x;
}

Vec generate_spike_train(int n, int spikes, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  Vec x = Vec::Zero(n);
  for (int k = 0; k < spikes; ++k) {
    int pos = rng.uniform_int(0, n - 1);
    double amp = rng.uniform(1.0, 4.0);
    for (int i = pos; i < n; ++i) x[i] += amp * std::pow(0.7, i - pos);
  }
  if (sigma > 0.0) x += rng.normal_vec(n, sigma);
  return x;
}

}  // namespace ccopt
