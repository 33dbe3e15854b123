#include "tsdlink/braiding.hpp"

namespace tsdlink {

namespace shuffles {
Permutation braiding() { return Permutation::from_two_row({3, 6, 1, 4, 7, 2, 5, 8}); }
Permutation braiding_inverse() { return Permutation::from_two_row({7, 3, 6, 8, 2, 5, 1, 4}); }
Permutation twist() { return Permutation::from_two_row({1, 2, 5, 4, 3, 6}); }
Permutation twist_inverse() { return Permutation::from_two_row({1, 3, 6, 4, 2, 5}); }
}  // namespace shuffles

namespace {

using OpPtr = std::shared_ptr<const SparseOperator>;

OpPtr delta3_of(const TsdPair& pair) {
  return std::make_shared<const SparseOperator>(comultiplication(pair.field(), pair.base(), 3));
}

/// Δ3 on the factors at `first` and `second` (second > first, positions
/// before expansion), then `shuffle`, then `op` on slots 0 and 1.
SparseOperator two_leg_operator(const TsdPair& pair, unsigned rank, unsigned first, unsigned second,
                                const Permutation& shuffle, const OpPtr& op) {
  const OpPtr delta3 = delta3_of(pair);
  LinearPipeline p(pair.field(), pair.base(), rank);
  p.then_at(delta3, first).then_at(delta3, second + 2).then_permute(shuffle).then_at(op, first).then_at(op, first + 1);
  return p.materialize();
}

bool degree_non_increasing(const SparseOperator& op) {
  for (MultiIndex col = 0; col < op.column_count(); ++col) {
    const unsigned in = index_degree(col, op.base());
    for (const auto& t : op.column_terms(col)) {
      if (index_degree(t.index, op.base()) > in) return false;
    }
  }
  return true;
}

}  // namespace

SparseOperator build_R(const TsdPair& pair) {
  // Output slots 0,1 carry the (1)-legs; T acts on slots 2..4 then 3..5.
  const OpPtr delta3 = delta3_of(pair);
  LinearPipeline p(pair.field(), pair.base(), 4);
  p.then_at(delta3, 2).then_at(delta3, 5).then_permute(shuffles::braiding());
  p.then_at(pair.T, 2).then_at(pair.T, 3);
  return p.materialize();
}

SparseOperator build_R_inverse(const TsdPair& pair) {
  return two_leg_operator(pair, 4, 0, 1, shuffles::braiding_inverse(), pair.T_tilde);
}

SparseOperator build_twist(const TsdPair& pair) {
  return two_leg_operator(pair, 2, 0, 1, shuffles::twist(), pair.T);
}

SparseOperator build_twist_inverse(const TsdPair& pair) {
  return two_leg_operator(pair, 2, 0, 1, shuffles::twist_inverse(), pair.T_tilde);
}

BraidingKit make_braiding_kit(const TsdPair& pair) {
  BraidingKit kit;
  kit.pair = pair;
  kit.R = std::make_shared<const SparseOperator>(build_R(pair));
  kit.R_inv = std::make_shared<const SparseOperator>(build_R_inverse(pair));
  kit.theta = std::make_shared<const SparseOperator>(build_twist(pair));
  kit.theta_inv = std::make_shared<const SparseOperator>(build_twist_inverse(pair));

  const auto id4 = SparseOperator::identity(pair.field(), pair.base(), 4);
  const auto id2 = SparseOperator::identity(pair.field(), pair.base(), 2);
  if (!(compose(*kit.R, *kit.R_inv) == id4) || !(compose(*kit.R_inv, *kit.R) == id4)) {
    throw Error(ErrorCode::internal, "R^{-1} is not inverse to R for algebra '" + pair.spec.name + "'");
  }
  if (!(compose(*kit.theta, *kit.theta_inv) == id2) || !(compose(*kit.theta_inv, *kit.theta) == id2)) {
    throw Error(ErrorCode::internal, "θ^{-1} is not inverse to θ for algebra '" + pair.spec.name + "'");
  }
  kit.degree_non_increasing = degree_non_increasing(*kit.R) && degree_non_increasing(*kit.R_inv) &&
                              degree_non_increasing(*kit.theta) && degree_non_increasing(*kit.theta_inv);
  return kit;
}

BraidingKit make_braiding_kit(const AlgebraSpec& spec) { return make_braiding_kit(make_tsd_pair(spec)); }

std::vector<BraidingProperty> all_braiding_properties() {
  return {BraidingProperty::ybe, BraidingProperty::inverses, BraidingProperty::slide,
          BraidingProperty::far_commutation};
}

std::string_view to_string(BraidingProperty property) {
  switch (property) {
    case BraidingProperty::ybe: return "ybe";
    case BraidingProperty::inverses: return "inverses";
    case BraidingProperty::slide: return "slide";
    case BraidingProperty::far_commutation: return "far-commutation";
  }
  return "?";
}

ValidationReport check_braiding(const BraidingKit& kit, std::span<const BraidingProperty> which) {
  const Field field = kit.field();
  const unsigned base = kit.base();
  const auto pipe = [&](unsigned rank) { return LinearPipeline(field, base, rank); };
  const auto identity = [&](unsigned rank) { return pipe(rank); };

  ValidationReport report;
  for (BraidingProperty property : which) {
    switch (property) {
      case BraidingProperty::ybe: {
        LinearPipeline lhs = pipe(6);
        lhs.then_at(kit.R, 0).then_at(kit.R, 2).then_at(kit.R, 0);
        LinearPipeline rhs = pipe(6);
        rhs.then_at(kit.R, 2).then_at(kit.R, 0).then_at(kit.R, 2);
        compare_on_basis(lhs, rhs, "YBE (R⊗1)(1⊗R)(R⊗1) = (1⊗R)(R⊗1)(1⊗R)", report);
        break;
      }
      case BraidingProperty::inverses: {
        LinearPipeline rr = pipe(4);
        rr.then_at(kit.R, 0).then_at(kit.R_inv, 0);
        compare_on_basis(rr, identity(4), "R^{-1}∘R = id", report);
        LinearPipeline rr2 = pipe(4);
        rr2.then_at(kit.R_inv, 0).then_at(kit.R, 0);
        compare_on_basis(rr2, identity(4), "R∘R^{-1} = id", report);
        LinearPipeline tt = pipe(2);
        tt.then_at(kit.theta, 0).then_at(kit.theta_inv, 0);
        compare_on_basis(tt, identity(2), "θ^{-1}∘θ = id", report);
        LinearPipeline tt2 = pipe(2);
        tt2.then_at(kit.theta_inv, 0).then_at(kit.theta, 0);
        compare_on_basis(tt2, identity(2), "θ∘θ^{-1} = id", report);
        break;
      }
      case BraidingProperty::slide: {
        LinearPipeline lhs1 = pipe(4);
        lhs1.then_at(kit.theta, 0).then_at(kit.R, 0);
        LinearPipeline rhs1 = pipe(4);
        rhs1.then_at(kit.R, 0).then_at(kit.theta, 2);
        compare_on_basis(lhs1, rhs1, "slide R(θ⊗1) = (1⊗θ)R", report);
        LinearPipeline lhs2 = pipe(4);
        lhs2.then_at(kit.theta, 2).then_at(kit.R, 0);
        LinearPipeline rhs2 = pipe(4);
        rhs2.then_at(kit.R, 0).then_at(kit.theta, 0);
        compare_on_basis(lhs2, rhs2, "slide R(1⊗θ) = (θ⊗1)R", report);
        break;
      }
      case BraidingProperty::far_commutation: {
        if (base > 3) {
          report.add_check({"far commutation (R⊗1)(1⊗R) on X^{⊗8}", true, 0, "columns", "skipped: d > 2"});
          break;
        }
        LinearPipeline lhs = pipe(8);
        lhs.then_at(kit.R, 4).then_at(kit.R, 0);
        LinearPipeline rhs = pipe(8);
        rhs.then_at(kit.R, 0).then_at(kit.R, 4);
        compare_on_basis(lhs, rhs, "far commutation (R⊗1)(1⊗R) = (1⊗R)(R⊗1)", report);
        break;
      }
    }
  }
  return report;
}

}  // namespace tsdlink
