#pragma once

#include <vector>

#include "roecart/operators.hpp"
#include "roecart/space.hpp"

namespace roecart {

// Presentation of a masa B = V Diag V* inside the matrix algebra over a
// space.  The frame V must be unitary to kUnitaryTol; its columns span the
// minimal projections of B (rank one, one per point).
class MasaFrame {
 public:
  MasaFrame(SpacePtr space, Eigen::MatrixXcd v);

  static MasaFrame standard(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const Eigen::MatrixXcd& matrix() const { return v_; }

  Operator conjugate_in(const Operator& a) const;   // V* a V, frame coordinates
  Operator conjugate_out(const Operator& a) const;  // V a V*
  Operator projection(int x) const;                 // V e_xx V*

 private:
  SpacePtr space_;
  Eigen::MatrixXcd v_;
};

// A linear span of square operators on one space, stored as an orthonormal
// basis of the vectorized matrices.  Rank decisions use the kRankTol cutoff.
class AlgebraSpan {
 public:
  static AlgebraSpan full_matrix_algebra(SpacePtr space);
  static AlgebraSpan from_basis(SpacePtr space, const std::vector<Operator>& basis);

  int dimension() const { return dim_; }
  bool is_full() const { return full_; }
  bool closed_under_adjoint() const { return star_closed_; }
  const SpacePtr& space() const { return space_; }

  bool contains(const Operator& a) const;

  // Orthonormal coordinates of vec(a); throws when a is outside the span.
  Eigen::VectorXcd coordinates(const Operator& a) const;

  // n^2 x dim matrix with orthonormal columns (materialized for the full span).
  Eigen::MatrixXcd orthonormal_basis() const;

 private:
  AlgebraSpan() = default;
  friend AlgebraSpan generated_algebra(const SpacePtr&, const std::vector<Operator>&, bool);

  SpacePtr space_;
  Eigen::MatrixXcd q_;  // ambient_dim x dim_, orthonormal columns
  int dim_ = 0;
  bool full_ = false;
  bool star_closed_ = false;
};

// Split an entourage into disjoint slice-bound-1 parts.  Parts are chosen
// greedily over the (row, col) lexicographic pair order; one pass per part
// makes each part maximal in the remainder, which is what bounds the part
// count by 2k+2 for slice bound k.
std::vector<Entourage> greedy_decompose(const Entourage& e);

struct FactoredNormalizer {
  DiagonalFunction f;
  Operator v;
  double error = 0.0;  // ||a - f v||, the sup of the dropped entries
};

// Write a diagonal-normalizing operator as f * v with v a partial translation
// of the entries of modulus >= eps.  Exact when eps is below the smallest
// nonzero entry.
FactoredNormalizer factor_normalizer(const Operator& a, double eps);

// Span closure of the *-algebra generated by `gens` (adjoints included, the
// full diagonal adjoined on request).  Stabilizes at dimension <= n^2.
AlgebraSpan generated_algebra(const SpacePtr& space, const std::vector<Operator>& gens,
                              bool include_diag);
int generated_dimension(const SpacePtr& space, const std::vector<Operator>& gens,
                        bool include_diag);

// Whether B = V Diag V* is maximal abelian inside the ambient span.  An
// operator commutes with every frame projection exactly when it preserves
// each frame line, i.e. lies in V Diag V* itself; the commutant of B inside
// the ambient is therefore ambient ∩ B, and maximality reduces to the rank
// test "every frame projection lies in the ambient span".
bool is_masa(const MasaFrame& frame, const AlgebraSpan& ambient);

// General form for an arbitrary abelian family: solves the commutant as a
// linear system inside the ambient span and compares it with the family's
// span.  Costs a dense SVD over the ambient dimension; intended for small
// spans and for cross-checking the frame fast path.
bool is_masa(const std::vector<Operator>& abelian_basis, const AlgebraSpan& ambient);

// Conditional expectation onto the frame masa: V diag_expectation(V* a V) V*.
Operator masa_expectation(const Operator& a, const MasaFrame& frame);

// The squares space {k^2 : 1 <= k <= 2 blocks} with the Hadamard frame that
// mixes the two points of each consecutive pair.  The frame masa is spanned
// blockwise by (1/2)[[a+b, a-b], [a-b, a+b]]; it meets the standard diagonal
// only in the scalar-per-block diagonals.
MasaFrame exotic_frame(int blocks);

// s = blockwise diag(1, -1) on the squares space: a self-adjoint unitary
// normalizing the exotic masa B, with span(B + sB) containing every standard
// diagonal via diag(a, b) = (a+b)/2 I + s (a-b)/2 I per block.
Operator coseparability_witness(int blocks);

struct CartanReport {
  bool masa = false;
  int normalizer_dim = 0;
  bool expectation_faithful = false;
  bool witness_ok = false;
};

// Full finite-scale Cartan check of the exotic pair: masa inside the full
// matrix algebra, normalizer sample generating all of it, faithfulness of the
// expectation, and the coseparability witness identities.
CartanReport verify_cartan(int blocks);

}  // namespace roecart
