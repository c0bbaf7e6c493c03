#pragma once

#include <cstddef>
#include <span>

#include "rgm/graph.hpp"

/// Sparse Google-matrix kernels.
///
/// G = alpha * S + (1 - alpha) / N, with dangling columns of S set to 1/N.
/// G is never formed; each product costs O(edges + N). The default versions
/// are OpenMP-parallel with reductions over fixed-size chunks, so results do
/// not depend on the thread count. The `serial` namespace keeps plain loop
/// versions as the reference the parallel kernels are tested against.
namespace rgm::kernels {

double sum(std::span<const double> x);
double l1_norm(std::span<const double> x);
double l1_distance(std::span<const double> a, std::span<const double> b);

/// y = G x
void google_apply(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y);

/// y = G^T x
void google_apply_transpose(const DirectedGraph& g, double alpha, std::span<const double> x,
                            std::span<double> y);

/// Y = G X for a row-major N x k block.
void google_apply_block(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y,
                        std::size_t k);

namespace serial {
double sum(std::span<const double> x);
void google_apply(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y);
void google_apply_transpose(const DirectedGraph& g, double alpha, std::span<const double> x,
                            std::span<double> y);
void google_apply_block(const DirectedGraph& g, double alpha, std::span<const double> x, std::span<double> y,
                        std::size_t k);
}  // namespace serial

}  // namespace rgm::kernels
