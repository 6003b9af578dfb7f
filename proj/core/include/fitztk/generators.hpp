#pragma once

#include "fitztk/operator_graph.hpp"

namespace fitztk {

/// Union of the two coordinate axes in the plane: two line pieces through
/// the origin with directions (1,0) and (0,1). NI but not monotone.
PolygonalOperator cross_operator();

/// The 1-D identity graph {(a, a)} as a single line piece.
PolygonalOperator identity_line();

// A = S + K with S = Q diag(lambda) Q^T, lambda >= 0, K skew; the symmetric
// part is PSD by construction. With probability ~0.3 one eigenvalue is
// zeroed so singular symmetric parts get exercised.
LinearMonotoneOperator gen_linear_monotone(Eigen::Index n, std::uint64_t seed);

// Connected nondecreasing staircase: alternating horizontal/vertical
// segments through sorted corner points, ended by horizontal rays covering
// x -> -inf and x -> +inf. Maximal monotone in R x R.
PolygonalOperator gen_maximal_1d(std::uint64_t seed);

// m point pieces kept pairwise monotone by greedy rejection sampling.
PolygonalOperator gen_point_cloud_monotone(Eigen::Index n, int m, std::uint64_t seed);

// Arbitrary piece soup, monotone or not. bounded_only restricts to points
// and segments so that phi stays finite everywhere.
PolygonalOperator gen_polygonal_soup(Eigen::Index n, int num_pieces, std::uint64_t seed,
                                     bool bounded_only = false);

/// Candidate directions for the support-ratio estimate: signed axis pairs
/// (s e_i, -s e_j) plus random normal pairs.
std::vector<PairedPoint> ratio_candidates(Eigen::Index n, Rng& rng, int count = 64);

/// A pair p with c(p) = 0, built by projecting xstar against x.
PairedPoint coupling_null_pair(Eigen::Index n, Rng& rng);

}  // namespace fitztk
