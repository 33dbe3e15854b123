#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsdlink/scalar.hpp"

namespace tsdlink {

/// Basis multi-index of X^{⊗m}, X = k ⊕ L with basis b_0 = (1,0), b_i = (0,e_i).
/// Encoded in base d+1 with the first tensor factor as the most significant digit.
using MultiIndex = std::uint64_t;

struct Term {
  MultiIndex index;
  Scalar coeff;
};
using Terms = std::vector<Term>;

/// base^exponent; throws Error(dimension_cap) if it leaves 63 bits.
std::uint64_t checked_power(unsigned base, unsigned exponent);

/// Number of factors that are not b_0.
unsigned index_degree(MultiIndex index, unsigned base) noexcept;
std::vector<unsigned> decode_index(MultiIndex index, unsigned base, unsigned rank);
MultiIndex encode_index(std::span<const unsigned> digits, unsigned base);

/// Sorts by index, merges duplicates and drops zeros.
void canonicalize(Terms& terms);

/// Element of X^{⊗rank}; terms sorted by index, no explicit zeros.
class SparseTensor {
 public:
  SparseTensor(Field field, unsigned base, unsigned rank);

  static SparseTensor basis(Field field, unsigned base, std::span<const unsigned> digits);
  static SparseTensor basis(Field field, unsigned base, std::initializer_list<unsigned> digits) {
    return basis(field, base, std::span<const unsigned>(digits.begin(), digits.size()));
  }
  static SparseTensor basis_index(Field field, unsigned base, unsigned rank, MultiIndex index);
  static SparseTensor from_terms(Field field, unsigned base, unsigned rank, Terms terms);
  /// Caller guarantees `terms` is already canonical (sorted, merged, nonzero).
  static SparseTensor from_canonical_terms(Field field, unsigned base, unsigned rank, Terms terms);

  Field field() const noexcept { return field_; }
  unsigned base() const noexcept { return base_; }
  unsigned rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  /// Releases the term storage (used by the streaming evaluators).
  Terms take_terms() && { return std::move(terms_); }

  Scalar coefficient(MultiIndex index) const;
  Scalar coefficient(std::initializer_list<unsigned> digits) const;

  SparseTensor& operator+=(const SparseTensor& rhs);
  SparseTensor& operator-=(const SparseTensor& rhs);
  SparseTensor scaled(const Scalar& factor) const;

  friend SparseTensor operator+(SparseTensor a, const SparseTensor& b) { return a += b; }
  friend SparseTensor operator-(SparseTensor a, const SparseTensor& b) { return a -= b; }
  friend bool operator==(const SparseTensor& a, const SparseTensor& b);

  /// `2*[1,0] + -1*[0,3]` style rendering; "0" for the zero tensor.
  std::string to_string() const;

 private:
  void check_compatible(const SparseTensor& rhs) const;

  Field field_;
  unsigned base_;
  unsigned rank_;
  Terms terms_;
};

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);

/// (a, x) as a rank-1 tensor; x has d = base - 1 coordinates.
SparseTensor make_augmented(const Scalar& a, std::span<const Scalar> x);

/// Linear map X^{⊗in_rank} -> X^{⊗out_rank}, stored column by column.
class SparseOperator {
 public:
  SparseOperator(Field field, unsigned base, unsigned in_rank, unsigned out_rank);

  static SparseOperator identity(Field field, unsigned base, unsigned rank);
  static SparseOperator zero(Field field, unsigned base, unsigned in_rank, unsigned out_rank) {
    return SparseOperator(field, base, in_rank, out_rank);
  }

  /// Builds every column by calling fn(column_index) -> SparseTensor.
  template <typename ColumnFn>
  static SparseOperator tabulate(Field field, unsigned base, unsigned in_rank, unsigned out_rank, ColumnFn&& fn) {
    SparseOperator op(field, base, in_rank, out_rank);
    for (MultiIndex col = 0; col < op.column_count(); ++col) op.set_column(col, fn(col));
    return op;
  }

  Field field() const noexcept { return field_; }
  unsigned base() const noexcept { return base_; }
  unsigned in_rank() const noexcept { return in_rank_; }
  unsigned out_rank() const noexcept { return out_rank_; }
  std::uint64_t column_count() const noexcept { return columns_.size(); }
  std::size_t nonzeros() const noexcept;

  void set_column(MultiIndex column, SparseTensor value);
  const Terms& column_terms(MultiIndex column) const { return columns_.at(column); }
  SparseTensor column(MultiIndex column) const;

  SparseTensor apply(const SparseTensor& t) const;
  /// Applies 1^{⊗position} ⊗ this ⊗ 1^{⊗rest} to t.
  SparseTensor apply_at(const SparseTensor& t, unsigned position) const;

  /// First column on which the two operators differ.
  std::optional<MultiIndex> first_difference(const SparseOperator& other) const;
  friend bool operator==(const SparseOperator& a, const SparseOperator& b) { return !a.first_difference(b); }

 private:
  Field field_;
  unsigned base_;
  unsigned in_rank_;
  unsigned out_rank_;
  std::vector<Terms> columns_;
};

/// a ∘ b.
SparseOperator compose(const SparseOperator& a, const SparseOperator& b);
/// a ⊗ b; ranks add.
SparseOperator tensor_product(const SparseOperator& a, const SparseOperator& b);
/// Σ_I <I|A|I>, one column at a time.
Scalar trace(const SparseOperator& a);

/// Permutation of tensor factors in push convention: input factor i lands
/// in output slot image(i).
class Permutation {
 public:
  static Permutation identity(unsigned size);
  /// 0-based images; throws unless a bijection.
  static Permutation from_images(std::vector<unsigned> images);
  /// Bottom row of a 1-based two-row array (top row 1..n).
  static Permutation from_two_row(std::initializer_list<unsigned> bottom_row);

  unsigned size() const noexcept { return static_cast<unsigned>(images_.size()); }
  unsigned operator()(unsigned factor) const { return images_.at(factor); }
  const std::vector<unsigned>& images() const noexcept { return images_; }
  Permutation inverse() const;
  /// `next` after this.
  Permutation then(const Permutation& next) const;
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<unsigned> images) : images_(std::move(images)) {}
  std::vector<unsigned> images_;
};

/// Every permutation of {0..n-1}, in lexicographic order of images.
std::vector<Permutation> all_permutations(unsigned n);

SparseTensor permute(const SparseTensor& t, const Permutation& perm);
SparseOperator permutation_operator(Field field, unsigned base, const Permutation& perm);

/// Δ_n: X -> X^{⊗n}, Δ(b_0) = b_0⊗b_0, Δ(b_i) = b_i⊗b_0 + b_0⊗b_i, iterated on the right.
SparseOperator comultiplication(Field field, unsigned base, unsigned n);
SparseTensor delta_n(const SparseTensor& x, unsigned n);
/// ε(a, x) = a.
Scalar counit(const SparseTensor& x);
/// ε as an operator X -> X^{⊗0} = k.
SparseOperator counit_operator(Field field, unsigned base);

}  // namespace tsdlink
