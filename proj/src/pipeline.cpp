#include "tsdlink/pipeline.hpp"

namespace tsdlink {

LinearPipeline::LinearPipeline(Field field, unsigned base, unsigned input_rank)
    : field_(field), base_(base), input_rank_(input_rank), output_rank_(input_rank) {}

LinearPipeline& LinearPipeline::then_at(std::shared_ptr<const SparseOperator> op, unsigned position) {
  if (op->base() != base_ || op->field() != field_) {
    throw Error(ErrorCode::rank_mismatch, "pipeline stage acts on a different space");
  }
  if (position + op->in_rank() > output_rank_) {
    throw Error(ErrorCode::rank_mismatch, "pipeline stage does not fit the current rank");
  }
  output_rank_ = output_rank_ - op->in_rank() + op->out_rank();
  checked_power(base_, output_rank_);
  stages_.push_back(Local{std::move(op), position});
  return *this;
}

LinearPipeline& LinearPipeline::then_permute(Permutation perm) {
  if (perm.size() != output_rank_) throw Error(ErrorCode::rank_mismatch, "pipeline permutation has the wrong size");
  stages_.push_back(std::move(perm));
  return *this;
}

LinearPipeline& LinearPipeline::then(const LinearPipeline& next) {
  if (next.input_rank_ != output_rank_ || next.base_ != base_ || next.field_ != field_) {
    throw Error(ErrorCode::rank_mismatch, "pipelines do not chain");
  }
  stages_.insert(stages_.end(), next.stages_.begin(), next.stages_.end());
  output_rank_ = next.output_rank_;
  return *this;
}

SparseTensor LinearPipeline::apply(SparseTensor t) const {
  if (t.rank() != input_rank_) throw Error(ErrorCode::rank_mismatch, "pipeline input has the wrong rank");
  for (const auto& stage : stages_) {
    if (const auto* local = std::get_if<Local>(&stage)) {
      t = local->op->apply_at(t, local->position);
    } else {
      t = permute(t, std::get<Permutation>(stage));
    }
    if (t.empty()) break;
  }
  if (t.rank() != output_rank_) return SparseTensor(field_, base_, output_rank_);
  return t;
}

SparseOperator LinearPipeline::materialize() const {
  return SparseOperator::tabulate(field_, base_, input_rank_, output_rank_,
                                  [&](MultiIndex col) { return apply_to_basis(col); });
}

}  // namespace tsdlink
