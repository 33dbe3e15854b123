#include "tsdlink/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tsdlink {

std::uint64_t checked_power(unsigned base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(out, static_cast<std::uint64_t>(base), &out) || out > (1ull << 62)) {
      throw Error(ErrorCode::dimension_cap, "tensor power " + std::to_string(base) + "^" + std::to_string(exponent) +
                                                " does not fit a 63-bit multi-index");
    }
  }
  return out;
}

unsigned index_degree(MultiIndex index, unsigned base) noexcept {
  unsigned degree = 0;
  while (index) {
    degree += (index % base) != 0;
    index /= base;
  }
  return degree;
}

std::vector<unsigned> decode_index(MultiIndex index, unsigned base, unsigned rank) {
  std::vector<unsigned> digits(rank);
  for (unsigned k = rank; k-- > 0;) {
    digits[k] = static_cast<unsigned>(index % base);
    index /= base;
  }
  return digits;
}

MultiIndex encode_index(std::span<const unsigned> digits, unsigned base) {
  MultiIndex index = 0;
  for (unsigned d : digits) {
    if (d >= base) throw Error(ErrorCode::invalid_argument, "basis digit out of range");
    index = index * base + d;
  }
  return index;
}

void canonicalize(Terms& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Scalar sum = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].index == terms[i].index) {
      sum += terms[j].coeff;
      ++j;
    }
    if (!sum.is_zero()) {
      terms[out].index = terms[i].index;
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// --- SparseTensor ---------------------------------------------------------

SparseTensor::SparseTensor(Field field, unsigned base, unsigned rank) : field_(field), base_(base), rank_(rank) {
  if (base < 1) throw Error(ErrorCode::invalid_argument, "tensor base must be positive");
  checked_power(base, rank);
}

SparseTensor SparseTensor::basis(Field field, unsigned base, std::span<const unsigned> digits) {
  SparseTensor t(field, base, static_cast<unsigned>(digits.size()));
  t.terms_.push_back({encode_index(digits, base), Scalar::one(field)});
  return t;
}

SparseTensor SparseTensor::basis_index(Field field, unsigned base, unsigned rank, MultiIndex index) {
  SparseTensor t(field, base, rank);
  if (index >= checked_power(base, rank)) throw Error(ErrorCode::invalid_argument, "multi-index out of range");
  t.terms_.push_back({index, Scalar::one(field)});
  return t;
}

SparseTensor SparseTensor::from_canonical_terms(Field field, unsigned base, unsigned rank, Terms terms) {
  SparseTensor t(field, base, rank);
  t.terms_ = std::move(terms);
  return t;
}

SparseTensor SparseTensor::from_terms(Field field, unsigned base, unsigned rank, Terms terms) {
  SparseTensor t(field, base, rank);
  const std::uint64_t limit = checked_power(base, rank);
  for (const auto& term : terms) {
    if (term.index >= limit) throw Error(ErrorCode::invalid_argument, "multi-index out of range");
    if (term.coeff.field() != field) throw Error(ErrorCode::field_mismatch, "term in a different field");
  }
  canonicalize(terms);
  t.terms_ = std::move(terms);
  return t;
}

Scalar SparseTensor::coefficient(MultiIndex index) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                             [](const Term& t, MultiIndex i) { return t.index < i; });
  if (it != terms_.end() && it->index == index) return it->coeff;
  return Scalar::zero(field_);
}

Scalar SparseTensor::coefficient(std::initializer_list<unsigned> digits) const {
  if (digits.size() != rank_) throw Error(ErrorCode::rank_mismatch, "digit count differs from tensor rank");
  return coefficient(encode_index(std::span<const unsigned>(digits.begin(), digits.size()), base_));
}

void SparseTensor::check_compatible(const SparseTensor& rhs) const {
  if (field_ != rhs.field_) throw Error(ErrorCode::field_mismatch, "tensors over different fields");
  if (base_ != rhs.base_ || rank_ != rhs.rank_) {
    throw Error(ErrorCode::rank_mismatch, "tensors of different shape");
  }
}

SparseTensor& SparseTensor::operator+=(const SparseTensor& rhs) {
  check_compatible(rhs);
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  canonicalize(terms_);
  return *this;
}

SparseTensor& SparseTensor::operator-=(const SparseTensor& rhs) {
  return *this += rhs.scaled(-Scalar::one(field_));
}

SparseTensor SparseTensor::scaled(const Scalar& factor) const {
  SparseTensor out(field_, base_, rank_);
  if (factor.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.index, t.coeff * factor});
  return out;
}

bool operator==(const SparseTensor& a, const SparseTensor& b) {
  if (a.field_ != b.field_ || a.base_ != b.base_ || a.rank_ != b.rank_ || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].index != b.terms_[i].index || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

std::string SparseTensor::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    out << t.coeff.to_string() << "*[";
    const auto digits = decode_index(t.index, base_, rank_);
    for (std::size_t i = 0; i < digits.size(); ++i) out << (i ? "," : "") << digits[i];
    out << ']';
  }
  return out.str();
}

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
  if (a.field() != b.field() || a.base() != b.base()) {
    throw Error(ErrorCode::rank_mismatch, "tensor product of incompatible tensors");
  }
  const std::uint64_t shift = checked_power(b.base(), b.rank());
  Terms terms;
  terms.reserve(a.size() * b.size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) terms.push_back({x.index * shift + y.index, x.coeff * y.coeff});
  }
  return SparseTensor::from_terms(a.field(), a.base(), a.rank() + b.rank(), std::move(terms));
}

SparseTensor make_augmented(const Scalar& a, std::span<const Scalar> x) {
  const Field field = a.field();
  const unsigned base = static_cast<unsigned>(x.size()) + 1;
  Terms terms;
  if (!a.is_zero()) terms.push_back({0, a});
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) terms.push_back({i + 1, x[i]});
  }
  return SparseTensor::from_terms(field, base, 1, std::move(terms));
}

// --- SparseOperator -------------------------------------------------------

SparseOperator::SparseOperator(Field field, unsigned base, unsigned in_rank, unsigned out_rank)
    : field_(field), base_(base), in_rank_(in_rank), out_rank_(out_rank) {
  checked_power(base, out_rank);
  columns_.resize(checked_power(base, in_rank));
}

SparseOperator SparseOperator::identity(Field field, unsigned base, unsigned rank) {
  SparseOperator op(field, base, rank, rank);
  for (MultiIndex i = 0; i < op.columns_.size(); ++i) op.columns_[i].push_back({i, Scalar::one(field)});
  return op;
}

std::size_t SparseOperator::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseOperator::set_column(MultiIndex column, SparseTensor value) {
  if (value.field() != field_ || value.base() != base_ || value.rank() != out_rank_) {
    throw Error(ErrorCode::rank_mismatch, "column does not match the operator's output space");
  }
  columns_.at(column) = std::move(value).take_terms();
}

SparseTensor SparseOperator::column(MultiIndex column) const {
  return SparseTensor::from_canonical_terms(field_, base_, out_rank_, columns_.at(column));
}

SparseTensor SparseOperator::apply(const SparseTensor& t) const {
  if (t.rank() != in_rank_) {
    throw Error(ErrorCode::rank_mismatch, "operator expects rank " + std::to_string(in_rank_) + ", got " +
                                              std::to_string(t.rank()));
  }
  return apply_at(t, 0);
}

SparseTensor SparseOperator::apply_at(const SparseTensor& t, unsigned position) const {
  if (t.field() != field_) throw Error(ErrorCode::field_mismatch, "operator and tensor over different fields");
  if (t.base() != base_ || position + in_rank_ > t.rank()) {
    throw Error(ErrorCode::rank_mismatch, "operator of rank " + std::to_string(in_rank_) + " does not fit at slot " +
                                              std::to_string(position) + " of a rank-" + std::to_string(t.rank()) +
                                              " tensor");
  }
  const unsigned tail = t.rank() - position - in_rank_;
  const unsigned out_rank = t.rank() - in_rank_ + out_rank_;
  const std::uint64_t tail_size = checked_power(base_, tail);
  const std::uint64_t in_size = columns_.size();
  const std::uint64_t out_size = checked_power(base_, out_rank_);
  checked_power(base_, out_rank);

  Terms out;
  out.reserve(t.size() * 2);
  for (const auto& term : t.terms()) {
    const MultiIndex suffix = term.index % tail_size;
    const MultiIndex rest = term.index / tail_size;
    const MultiIndex sub = rest % in_size;
    const MultiIndex prefix = rest / in_size;
    const MultiIndex head = prefix * out_size;
    for (const auto& c : columns_[sub]) {
      Scalar coeff = term.coeff.is_one() ? c.coeff : (c.coeff.is_one() ? term.coeff : term.coeff * c.coeff);
      out.push_back({(head + c.index) * tail_size + suffix, std::move(coeff)});
    }
  }
  canonicalize(out);
  return SparseTensor::from_canonical_terms(field_, base_, out_rank, std::move(out));
}

std::optional<MultiIndex> SparseOperator::first_difference(const SparseOperator& other) const {
  if (field_ != other.field_ || base_ != other.base_ || in_rank_ != other.in_rank_ ||
      out_rank_ != other.out_rank_) {
    throw Error(ErrorCode::rank_mismatch, "comparing operators of different shape");
  }
  for (MultiIndex c = 0; c < columns_.size(); ++c) {
    const Terms& a = columns_[c];
    const Terms& b = other.columns_[c];
    if (a.size() != b.size()) return c;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].index != b[i].index || !(a[i].coeff == b[i].coeff)) return c;
    }
  }
  return std::nullopt;
}

SparseOperator compose(const SparseOperator& a, const SparseOperator& b) {
  if (b.out_rank() != a.in_rank() || a.base() != b.base() || a.field() != b.field()) {
    throw Error(ErrorCode::rank_mismatch, "compose: output of the right operand must match input of the left");
  }
  return SparseOperator::tabulate(a.field(), a.base(), b.in_rank(), a.out_rank(),
                                  [&](MultiIndex col) { return a.apply(b.column(col)); });
}

SparseOperator tensor_product(const SparseOperator& a, const SparseOperator& b) {
  if (a.base() != b.base() || a.field() != b.field()) {
    throw Error(ErrorCode::rank_mismatch, "tensor product of incompatible operators");
  }
  const std::uint64_t b_cols = b.column_count();
  return SparseOperator::tabulate(a.field(), a.base(), a.in_rank() + b.in_rank(), a.out_rank() + b.out_rank(),
                                  [&](MultiIndex col) { return tensor_product(a.column(col / b_cols), b.column(col % b_cols)); });
}

Scalar trace(const SparseOperator& a) {
  if (a.in_rank() != a.out_rank()) throw Error(ErrorCode::rank_mismatch, "trace of a non-square operator");
  Scalar sum = Scalar::zero(a.field());
  for (MultiIndex c = 0; c < a.column_count(); ++c) {
    const Terms& col = a.column_terms(c);
    auto it = std::lower_bound(col.begin(), col.end(), c, [](const Term& t, MultiIndex i) { return t.index < i; });
    if (it != col.end() && it->index == c) sum += it->coeff;
  }
  return sum;
}

// --- Permutation ----------------------------------------------------------

Permutation Permutation::identity(unsigned size) {
  std::vector<unsigned> images(size);
  std::iota(images.begin(), images.end(), 0u);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<unsigned> images) {
  std::vector<bool> hit(images.size(), false);
  for (unsigned i : images) {
    if (i >= images.size() || hit[i]) throw Error(ErrorCode::invalid_argument, "not a permutation");
    hit[i] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_two_row(std::initializer_list<unsigned> bottom_row) {
  std::vector<unsigned> images;
  for (unsigned v : bottom_row) {
    if (v == 0) throw Error(ErrorCode::invalid_argument, "two-row permutation entries are 1-based");
    images.push_back(v - 1);
  }
  return from_images(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<unsigned> inv(images_.size());
  for (unsigned i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw Error(ErrorCode::invalid_argument, "permutation sizes differ");
  std::vector<unsigned> images(images_.size());
  for (unsigned i = 0; i < images_.size(); ++i) images[i] = next.images_[images_[i]];
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (unsigned i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::vector<Permutation> all_permutations(unsigned n) {
  std::vector<unsigned> images(n);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

SparseTensor permute(const SparseTensor& t, const Permutation& perm) {
  if (perm.size() != t.rank()) throw Error(ErrorCode::rank_mismatch, "permutation size differs from tensor rank");
  const unsigned rank = t.rank();
  const unsigned base = t.base();
  std::vector<std::uint64_t> slot_weight(rank);
  for (unsigned k = 0; k < rank; ++k) slot_weight[k] = checked_power(base, rank - 1 - k);
  std::vector<std::uint64_t> factor_weight(rank);
  for (unsigned i = 0; i < rank; ++i) factor_weight[i] = slot_weight[perm(i)];

  Terms out;
  out.reserve(t.size());
  for (const auto& term : t.terms()) {
    MultiIndex in = term.index;
    MultiIndex moved = 0;
    for (unsigned i = rank; i-- > 0;) {
      moved += (in % base) * factor_weight[i];
      in /= base;
    }
    out.push_back({moved, term.coeff});
  }
  return SparseTensor::from_terms(t.field(), base, rank, std::move(out));
}

SparseOperator permutation_operator(Field field, unsigned base, const Permutation& perm) {
  return SparseOperator::tabulate(field, base, perm.size(), perm.size(), [&](MultiIndex col) {
    return permute(SparseTensor::basis_index(field, base, perm.size(), col), perm);
  });
}

// --- coalgebra ------------------------------------------------------------

SparseOperator comultiplication(Field field, unsigned base, unsigned n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "Δ_n needs n >= 1");
  return SparseOperator::tabulate(field, base, 1, n, [&](MultiIndex col) {
    Terms terms;
    if (col == 0) {
      terms.push_back({0, Scalar::one(field)});
    } else {
      for (unsigned slot = 0; slot < n; ++slot) {
        terms.push_back({col * checked_power(base, n - 1 - slot), Scalar::one(field)});
      }
    }
    return SparseTensor::from_terms(field, base, n, std::move(terms));
  });
}

SparseTensor delta_n(const SparseTensor& x, unsigned n) {
  if (x.rank() != 1) throw Error(ErrorCode::rank_mismatch, "Δ_n acts on rank-1 tensors");
  return comultiplication(x.field(), x.base(), n).apply(x);
}

Scalar counit(const SparseTensor& x) {
  if (x.rank() != 1) throw Error(ErrorCode::rank_mismatch, "ε acts on rank-1 tensors");
  return x.coefficient(MultiIndex{0});
}

SparseOperator counit_operator(Field field, unsigned base) {
  return SparseOperator::tabulate(field, base, 1, 0, [&](MultiIndex col) {
    SparseTensor out(field, base, 0);
    if (col == 0) out = SparseTensor::basis_index(field, base, 0, 0);
    return out;
  });
}

}  // namespace tsdlink
