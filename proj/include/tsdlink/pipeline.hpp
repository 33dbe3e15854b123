#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "tsdlink/tensor.hpp"

namespace tsdlink {

/// A linear map written as a chain of local operator applications and
/// factor permutations. Evaluated column by column, so the composite is
/// never materialized unless asked for.
class LinearPipeline {
 public:
  LinearPipeline(Field field, unsigned base, unsigned input_rank);

  /// Appends 1^{⊗position} ⊗ op ⊗ 1^{⊗rest}.
  LinearPipeline& then_at(std::shared_ptr<const SparseOperator> op, unsigned position);
  LinearPipeline& then_at(const SparseOperator& op, unsigned position) {
    return then_at(std::make_shared<const SparseOperator>(op), position);
  }
  LinearPipeline& then_permute(Permutation perm);
  LinearPipeline& then(const LinearPipeline& next);

  Field field() const noexcept { return field_; }
  unsigned base() const noexcept { return base_; }
  unsigned input_rank() const noexcept { return input_rank_; }
  unsigned output_rank() const noexcept { return output_rank_; }

  SparseTensor apply(SparseTensor t) const;
  SparseTensor apply_to_basis(MultiIndex column) const {
    return apply(SparseTensor::basis_index(field_, base_, input_rank_, column));
  }
  SparseOperator materialize() const;

 private:
  struct Local {
    std::shared_ptr<const SparseOperator> op;
    unsigned position;
  };
  using Stage = std::variant<Local, Permutation>;

  Field field_;
  unsigned base_;
  unsigned input_rank_;
  unsigned output_rank_;
  std::vector<Stage> stages_;
};

}  // namespace tsdlink
