#include "roecart/cartan.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <stdexcept>

namespace roecart {

namespace {

using Eigen::Index;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Index n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

// Incrementally maintained orthonormal basis of a subspace of C^(ambient).
// Insertion is batched: one projection pass against the held basis costs a
// single matrix product instead of one pass per candidate.
class SpanBuilder {
 public:
  explicit SpanBuilder(Index ambient) : store_(ambient, 0) {}

  Index dim() const { return used_; }

  Eigen::MatrixXcd basis() const { return store_.leftCols(used_); }

  double residual_norm(Eigen::VectorXcd v) const {
    project(v);
    project(v);
    return v.norm();
  }

  // Adds the columns of c that open new directions; returns their positions
  // within c.  The acceptance cutoff is kRankTol relative to each candidate's
  // own norm (floored at 1), matching the library-wide rank policy.
  std::vector<Index> add_batch(Eigen::MatrixXcd c) {
    std::vector<Index> added;
    const Index b = c.cols();
    if (b == 0) return added;
    Eigen::VectorXd scale(b);
    for (Index j = 0; j < b; ++j) scale(j) = std::max(1.0, c.col(j).norm());
    if (used_ > 0) {
      auto q = store_.leftCols(used_);
      c -= q * (q.adjoint() * c).eval();
      c -= q * (q.adjoint() * c).eval();
    }
    ensure(b);
    const Index before = used_;
    for (Index j = 0; j < b; ++j) {
      Eigen::VectorXcd v = c.col(j);
      if (used_ > before) {
        auto fresh = store_.middleCols(before, used_ - before);
        v -= fresh * (fresh.adjoint() * v).eval();
        v -= fresh * (fresh.adjoint() * v).eval();
      }
      const double norm = v.norm();
      if (norm > kRankTol * scale(j)) {
        store_.col(used_++) = v / norm;
        added.push_back(j);
      }
    }
    return added;
  }

  bool add(const Eigen::VectorXcd& v) {
    Eigen::MatrixXcd c(v.size(), 1);
    c.col(0) = v;
    return !add_batch(std::move(c)).empty();
  }

 private:
  void project(Eigen::VectorXcd& v) const {
    if (used_ > 0) {
      auto q = store_.leftCols(used_);
      v -= q * (q.adjoint() * v).eval();
    }
  }

  void ensure(Index extra) {
    if (used_ + extra > store_.cols()) {
      const Index cap = std::max<Index>({2 * store_.cols(), used_ + extra, 16});
      store_.conservativeResize(Eigen::NoChange, cap);
    }
  }

  Eigen::MatrixXcd store_;
  Index used_ = 0;
};

void require_on_space(const Operator& a, const FiniteSpace& space, const char* who) {
  if (!a.is_square() || !same_space(*a.codomain(), space))
    throw std::invalid_argument(std::string(who) + " needs square operators on the given space");
}

}  // namespace

MasaFrame::MasaFrame(SpacePtr space, Eigen::MatrixXcd v)
    : space_(std::move(space)), v_(std::move(v)) {
  require(space_ != nullptr, "frame needs a space");
  require(v_.rows() == space_->size() && v_.cols() == space_->size(),
          "frame matrix shape does not match the space");
  const double defect =
      (v_.adjoint() * v_ - Eigen::MatrixXcd::Identity(v_.rows(), v_.cols())).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTol) throw std::invalid_argument("frame matrix is not unitary");
}

MasaFrame MasaFrame::standard(SpacePtr space) {
  require(space != nullptr, "frame needs a space");
  const int n = space->size();
  return MasaFrame(std::move(space), Eigen::MatrixXcd::Identity(n, n));
}

Operator MasaFrame::conjugate_in(const Operator& a) const {
  require_on_space(a, *space_, "frame conjugation");
  return Operator(a.codomain(), a.domain(), v_.adjoint() * a.entries() * v_);
}

Operator MasaFrame::conjugate_out(const Operator& a) const {
  require_on_space(a, *space_, "frame conjugation");
  return Operator(a.codomain(), a.domain(), v_ * a.entries() * v_.adjoint());
}

Operator MasaFrame::projection(int x) const {
  require(x >= 0 && x < space_->size(), "frame projection index out of range");
  return Operator(space_, space_, v_.col(x) * v_.col(x).adjoint());
}

AlgebraSpan AlgebraSpan::full_matrix_algebra(SpacePtr space) {
  require(space != nullptr, "span needs a space");
  AlgebraSpan s;
  s.space_ = std::move(space);
  s.dim_ = s.space_->size() * s.space_->size();
  s.full_ = true;
  s.star_closed_ = true;
  return s;
}

AlgebraSpan AlgebraSpan::from_basis(SpacePtr space, const std::vector<Operator>& basis) {
  require(space != nullptr, "span needs a space");
  const int n = space->size();
  SpanBuilder builder(static_cast<Index>(n) * n);
  Eigen::MatrixXcd c(static_cast<Index>(n) * n, static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_on_space(basis[i], *space, "algebra span");
    c.col(static_cast<Index>(i)) = vectorize(basis[i].entries());
  }
  builder.add_batch(std::move(c));

  AlgebraSpan s;
  s.space_ = std::move(space);
  s.dim_ = static_cast<int>(builder.dim());
  s.full_ = s.dim_ == n * n;
  s.star_closed_ = true;
  s.q_ = builder.basis();
  for (const auto& b : basis)
    if (builder.residual_norm(vectorize(b.entries().adjoint().eval())) >
        kRankTol * std::max(1.0, b.entries().norm())) {
      s.star_closed_ = false;
      break;
    }
  return s;
}

bool AlgebraSpan::contains(const Operator& a) const {
  require_on_space(a, *space_, "span membership");
  if (full_) return true;
  const Eigen::VectorXcd v = vectorize(a.entries());
  Eigen::VectorXcd r = v;
  if (dim_ > 0) {
    r -= q_ * (q_.adjoint() * r).eval();
    r -= q_ * (q_.adjoint() * r).eval();
  }
  return r.norm() <= kRankTol * std::max(1.0, v.norm());
}

Eigen::VectorXcd AlgebraSpan::coordinates(const Operator& a) const {
  if (!contains(a)) throw std::invalid_argument("operator lies outside the span");
  const Eigen::VectorXcd v = vectorize(a.entries());
  if (full_) return v;
  return q_.adjoint() * v;
}

Eigen::MatrixXcd AlgebraSpan::orthonormal_basis() const {
  if (full_) {
    const Index d = static_cast<Index>(space_->size()) * space_->size();
    return Eigen::MatrixXcd::Identity(d, d);
  }
  return q_;
}

std::vector<Entourage> greedy_decompose(const Entourage& e) {
  const int n = e.space_size();
  std::vector<std::pair<int, int>> remaining = e.pairs();
  std::vector<Entourage> parts;
  while (!remaining.empty()) {
    std::vector<char> row(static_cast<std::size_t>(n), 0), col(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> part, rest;
    for (const auto& [x, y] : remaining) {
      if (!row[x] && !col[y]) {
        part.emplace_back(x, y);
        row[x] = col[y] = 1;
      } else {
        rest.emplace_back(x, y);
      }
    }
    parts.emplace_back(n, std::move(part));
    remaining = std::move(rest);
  }
  return parts;
}

FactoredNormalizer factor_normalizer(const Operator& a, double eps) {
  require(eps > 0, "factorization threshold must be positive");
  if (!normalizes_diag(a))
    throw std::invalid_argument("factor_normalizer needs a diagonal-normalizing operator");

  const Entourage kept = support(eps_truncate(a, eps));
  Operator v = partial_isometry(a.codomain(), kept);

  // f carries the full row entry of a; rows whose entry fell below eps meet a
  // zero row of v, so only the dropped entries survive in a - f v.
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(a.rows());
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y)
      if (std::abs(a.entry(x, y)) > kStructuralZero) f(x) = a.entry(x, y);

  FactoredNormalizer out{DiagonalFunction(a.codomain(), std::move(f)), std::move(v), 0.0};
  out.error = single_diagonal_norm(a - out.f.to_operator() * out.v);
  return out;
}

AlgebraSpan generated_algebra(const SpacePtr& space, const std::vector<Operator>& gens,
                              bool include_diag) {
  require(space != nullptr, "span closure needs a space");
  const int n = space->size();
  const Index full = static_cast<Index>(n) * n;

  std::vector<Eigen::MatrixXcd> alphabet;
  for (const auto& g : gens) {
    require_on_space(g, *space, "span closure");
    alphabet.push_back(g.entries());
  }
  for (const auto& g : gens) alphabet.push_back(g.entries().adjoint());
  if (include_diag)
    for (int x = 0; x < n; ++x) {
      Eigen::MatrixXcd unit = Eigen::MatrixXcd::Zero(n, n);
      unit(x, x) = 1.0;
      alphabet.push_back(std::move(unit));
    }
  // Exact duplicates (self-adjoint generators, repeated inputs) only cost
  // products; drop them.
  std::vector<Eigen::MatrixXcd> letters;
  for (auto& a : alphabet) {
    bool dup = false;
    for (const auto& b : letters)
      if ((a - b).cwiseAbs().maxCoeff() == 0.0) {
        dup = true;
        break;
      }
    if (!dup) letters.push_back(std::move(a));
  }

  SpanBuilder builder(full);
  std::vector<Eigen::MatrixXcd> basis_mats;
  std::deque<std::size_t> queue;

  auto ingest = [&](std::vector<Eigen::MatrixXcd> candidates) {
    if (candidates.empty()) return;
    Eigen::MatrixXcd c(full, static_cast<Index>(candidates.size()));
    for (std::size_t j = 0; j < candidates.size(); ++j)
      c.col(static_cast<Index>(j)) = vectorize(candidates[j]);
    const Index before = builder.dim();
    const auto added = builder.add_batch(std::move(c));
    for (std::size_t k = 0; k < added.size(); ++k) {
      basis_mats.push_back(unvectorize(builder.basis().col(before + static_cast<Index>(k)), n));
      queue.push_back(basis_mats.size() - 1);
    }
  };

  ingest(letters);

  // Right multiplication by the letters reaches every word, and the letter
  // set is adjoint-closed, so the stabilized span is the full *-algebra span.
  // dim == n^2 is a hard ceiling: stop early once everything is reached.
  while (!queue.empty() && builder.dim() < full) {
    const std::size_t k = queue.front();
    queue.pop_front();
    std::vector<Eigen::MatrixXcd> products;
    products.reserve(letters.size());
    for (const auto& letter : letters) {
      Eigen::MatrixXcd p = basis_mats[k] * letter;
      if (p.cwiseAbs().maxCoeff() > kStructuralZero) products.push_back(std::move(p));
      // Whole batches get cut short once the span saturates.
      if (builder.dim() >= full) break;
    }
    ingest(std::move(products));
  }

  AlgebraSpan s;
  s.space_ = space;
  s.dim_ = static_cast<int>(builder.dim());
  s.full_ = builder.dim() == full;
  s.star_closed_ = true;
  if (!s.full_) s.q_ = builder.basis();
  return s;
}

int generated_dimension(const SpacePtr& space, const std::vector<Operator>& gens,
                        bool include_diag) {
  return generated_algebra(space, gens, include_diag).dimension();
}

bool is_masa(const MasaFrame& frame, const AlgebraSpan& ambient) {
  if (frame.space()->size() != ambient.space()->size())
    throw std::invalid_argument("frame and ambient dimensions differ");
  require(ambient.closed_under_adjoint(), "ambient span must be closed under adjoints");
  // Commuting with every frame projection preserves each frame line, so the
  // commutant of B inside the ambient is ambient ∩ B and maximality reduces
  // to membership of the frame projections.
  for (int x = 0; x < frame.space()->size(); ++x)
    if (!ambient.contains(frame.projection(x))) return false;
  return true;
}

bool is_masa(const std::vector<Operator>& abelian_basis, const AlgebraSpan& ambient) {
  require(!abelian_basis.empty(), "empty family cannot be a masa");
  require(ambient.closed_under_adjoint(), "ambient span must be closed under adjoints");
  const int n = ambient.space()->size();
  const Index nn = static_cast<Index>(n) * n;
  const Index d = ambient.dimension();

  SpanBuilder family(nn);
  for (const auto& b : abelian_basis) {
    if (b.rows() != n || b.cols() != n)
      throw std::invalid_argument("family and ambient dimensions differ");
    if (!ambient.contains(b)) return false;
    family.add(vectorize(b.entries()));
  }
  // The family must commute with itself to sit inside its own commutant.
  for (const auto& a : abelian_basis)
    for (const auto& b : abelian_basis) {
      const Eigen::MatrixXcd comm = a.entries() * b.entries() - b.entries() * a.entries();
      const double scale = std::max(1.0, a.entries().norm() * b.entries().norm());
      if (comm.norm() > kRankTol * scale) return false;
    }

  // Commutant inside the ambient span, as the null space of the stacked
  // commutator constraints over the ambient's orthonormal coordinates.
  const Eigen::MatrixXcd q = ambient.orthonormal_basis();
  Eigen::MatrixXcd k(nn * static_cast<Index>(abelian_basis.size()), d);
  for (Index j = 0; j < d; ++j) {
    const Eigen::MatrixXcd qj = unvectorize(q.col(j), n);
    for (std::size_t i = 0; i < abelian_basis.size(); ++i) {
      const auto& b = abelian_basis[i].entries();
      k.block(static_cast<Index>(i) * nn, j, nn, 1) = vectorize((qj * b - b * qj).eval());
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k);
  svd.setThreshold(kRankTol);
  const Index commutant_dim = d - svd.rank();
  return commutant_dim == family.dim();
}

Operator masa_expectation(const Operator& a, const MasaFrame& frame) {
  require_on_space(a, *frame.space(), "masa expectation");
  return frame.conjugate_out(diag_expectation(frame.conjugate_in(a)).to_operator());
}

MasaFrame exotic_frame(int blocks) {
  require(blocks >= 1, "exotic frame needs at least one block");
  const int n = 2 * blocks;
  SpacePtr space = make_squares_space(n);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
  // sqrt(0.5) squares to >= 0.5 in double arithmetic, so the blocks keep
  // their half mass under the closed threshold conditions; 1/sqrt(2) squares
  // to just below 0.5 and would drop them.
  const double h = std::sqrt(0.5);
  for (int b = 0; b < blocks; ++b) {
    v(2 * b, 2 * b) = h;
    v(2 * b, 2 * b + 1) = h;
    v(2 * b + 1, 2 * b) = h;
    v(2 * b + 1, 2 * b + 1) = -h;
  }
  return MasaFrame(std::move(space), std::move(v));
}

Operator coseparability_witness(int blocks) {
  require(blocks >= 1, "witness needs at least one block");
  const int n = 2 * blocks;
  SpacePtr space = make_squares_space(n);
  Eigen::VectorXcd sign(n);
  for (int x = 0; x < n; ++x) sign(x) = (x % 2 == 0) ? 1.0 : -1.0;
  return DiagonalFunction(std::move(space), std::move(sign)).to_operator();
}

CartanReport verify_cartan(int blocks) {
  CartanReport report;
  const MasaFrame frame = exotic_frame(blocks);
  const SpacePtr& space = frame.space();
  const int n = space->size();

  // The matrix algebra itself: on a connected bounded space every operator
  // has finite propagation, so the ambient algebra is all of M_n.
  const AlgebraSpan ambient = AlgebraSpan::full_matrix_algebra(space);
  report.masa = is_masa(frame, ambient);

  // Normalizer sample: the frame projections (inside B) plus the frame
  // conjugates of the partial translations decomposing the full square.
  std::vector<Operator> sample;
  for (int x = 0; x < n; ++x) sample.push_back(frame.projection(x));
  for (const auto& part : greedy_decompose(metric_entourage(*space, space->diameter())))
    sample.push_back(frame.conjugate_out(partial_isometry(space, part)));
  for (const auto& a : sample)
    if (!normalizes_diag(frame.conjugate_in(a)))
      throw std::logic_error("normalizer sample member fails to normalize the masa");
  report.normalizer_dim = generated_dimension(space, sample, false);

  // Faithfulness through the trace identity: the expectation preserves the
  // normalized trace, and the trace is faithful, so tr E(a*a) = ||a||_HS^2
  // certifies E(a*a) = 0 => a = 0.  Checked on fixed test patterns.
  std::vector<Eigen::MatrixXcd> patterns;
  patterns.push_back(Eigen::MatrixXcd::Identity(n, n));
  {
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) shift((x + 1) % n, x) = 1.0;
    patterns.push_back(std::move(shift));
    Eigen::MatrixXcd ramp(n, n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        ramp(x, y) = std::complex<double>(x + 1, y - x) / static_cast<double>(n);
    patterns.push_back(std::move(ramp));
  }
  report.expectation_faithful = true;
  for (const auto& m : patterns) {
    const Operator a(space, space, m);
    const Operator gram = a.adjoint() * a;
    const Operator expect = masa_expectation(gram, frame);
    const double scale = std::max(1.0, gram.entries().norm());
    if (std::abs(expect.entries().trace().real() - gram.entries().trace().real()) >
        kRankTol * scale) {
      report.expectation_faithful = false;
      break;
    }
    const Eigen::VectorXcd frame_diag = frame.conjugate_in(gram).entries().diagonal();
    if (frame_diag.real().minCoeff() < -kRankTol ||
        frame_diag.imag().cwiseAbs().maxCoeff() > kRankTol) {
      report.expectation_faithful = false;
      break;
    }
  }

  // Witness checks: s self-adjoint unitary, normalizes B, splits every block
  // diagonal into masa parts, and span(B + sB) covers the standard diagonal.
  const Operator s = coseparability_witness(blocks);
  bool witness = (s.entries() - s.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0;
  witness = witness &&
            ((s * s).entries() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0;
  witness = witness && normalizes_diag(frame.conjugate_in(s));

  // diag(a, b) = (a+b)/2 I + s (a-b)/2 I per block, exact for integer data
  // (halves of integers are dyadic).
  {
    Eigen::VectorXcd d(n), sym(n), anti(n);
    for (int b = 0; b < blocks; ++b) {
      const double a_val = 2 * b + 1, b_val = 2 * b + 2;
      d(2 * b) = a_val;
      d(2 * b + 1) = b_val;
      sym(2 * b) = sym(2 * b + 1) = (a_val + b_val) / 2;
      anti(2 * b) = anti(2 * b + 1) = (a_val - b_val) / 2;
    }
    const Operator dop = DiagonalFunction(space, d).to_operator();
    const Operator b1 = DiagonalFunction(space, sym).to_operator();
    const Operator b2 = DiagonalFunction(space, anti).to_operator();
    witness = witness && ((b1 + s * b2).entries() - dop.entries()).cwiseAbs().maxCoeff() == 0.0;
    // Both halves belong to B: diagonal in frame coordinates.
    for (const Operator* part : {&b1, &b2}) {
      const Eigen::MatrixXcd inside = frame.conjugate_in(*part).entries();
      witness = witness && (inside - Eigen::MatrixXcd(inside.diagonal().asDiagonal()))
                                   .cwiseAbs()
                                   .maxCoeff() <= kStructuralZero;
    }
    // And the expectation reproduces the symmetric half within 1e-12.
    witness = witness &&
              (masa_expectation(dop, frame).entries() - b1.entries()).cwiseAbs().maxCoeff() <=
                  1e-12;
  }

  // span(B + sB) contains the standard diagonal.
  {
    SpanBuilder span(static_cast<Index>(n) * n);
    for (int x = 0; x < n; ++x) {
      span.add(vectorize(frame.projection(x).entries()));
      span.add(vectorize((s * frame.projection(x)).entries()));
    }
    for (int x = 0; x < n && witness; ++x) {
      Eigen::MatrixXcd unit = Eigen::MatrixXcd::Zero(n, n);
      unit(x, x) = 1.0;
      witness = witness && span.residual_norm(vectorize(unit)) <= kRankTol;
    }
  }
  report.witness_ok = witness;
  return report;
}

}  // namespace roecart
