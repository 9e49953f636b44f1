// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ccopt/model.hpp"

namespace ccopt {

// difference operator: one row per edge (i, j) with i < j, entries
// (Dx)_(i,j) = x_j - x_i
Mat difference_matrix(int n, const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> line_graph_edges(int n);

// hinge-free SVM with the 0/1 loss:
//   min 1/2 ||omega||^2 + Phi_{+,lambda}(1_r - Diag(c) [Q 1] x),
// x = [omega; omega0]. Cast with B = -Diag(c) [Q 1], b = -1_r.
PrimalModel build_heaviside_svm(const Mat& points, const Vec& labels, double lambda);

// stationary dual of the Heaviside SVM (y eliminated up to the pinned
// g-block): built through derive_dual so the mapping stays mechanical
DualModel build_sparse_svm_dual(const Mat& points, const Vec& labels, const Vec& mu);

// min over x in Omega of 1/2 ||A x - a||^2 + Phi_{0,lambda}(D x);
// omega must be an indicator atom (nonnegativity or a box)
PrimalModel build_energy_min(ConvexAtom omega, Mat A, Vec a, Mat D, Vec lambda);

// min 1/2 ||x - beta||^2 + Phi_{0,lambda}(D x) over the given graph
PrimalModel build_edge_denoising(const Vec& beta, const std::vector<std::pair<int, int>>& edges,
                                 Vec lambda);

// min over x >= 0 of 1/2 ||x - beta||^2 + Phi_{+,lambda}(D x), line graph
PrimalModel build_calcium(const Vec& beta, Vec lambda);

// min over x >= 0 of ||A x - a||_1 + Phi_{0,lambda}(D x)
PrimalModel build_l1_energy(Mat A, Vec a, Mat D, Vec lambda);

struct SvmDataset {
  Mat points;  // r x s
  Vec labels;  // entries +-1
  Vec margin_witness;  // (omega, omega0) with unit margins; empty if none
};

// strictly separable two-class sample; ships the generating hyperplane
// scaled to unit margin as the witness
SvmDataset generate_separable(int dim, int count, double margin, std::uint64_t seed);
// contains at least one coincident pair with opposite labels
SvmDataset generate_nonseparable(int dim, int count, std::uint64_t seed);

// step signal plus Gaussian noise; sigma = 0 gives the exact steps
Vec generate_piecewise_signal(int n, int pieces, double sigma, std::uint64_t seed);
// sparse nonnegative jumps with decay, plus noise
Vec generate_spike_train(int n, int spikes, double sigma, std::uint64_t seed);

}  // namespace ccopt
