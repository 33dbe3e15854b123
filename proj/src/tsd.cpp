#include "tsdlink/tsd.hpp"

#include <algorithm>

namespace tsdlink {

namespace shuffles {
Permutation interleave9() { return Permutation::from_two_row({1, 4, 7, 2, 5, 8, 3, 6, 9}); }
Permutation reversibility_inner_second() { return Permutation::from_two_row({1, 5, 2, 4, 3}); }
Permutation reversibility_inner_first() { return Permutation::from_two_row({1, 2, 5, 3, 4}); }
Permutation q_distributivity() { return Permutation::from_two_row({1, 3, 2, 4}); }
}  // namespace shuffles

namespace {

SparseTensor vector_column(const AlgebraSpec& spec, const Vector& v, const Scalar& sign) {
  Terms terms;
  for (unsigned l = 0; l < v.size(); ++l) {
    if (!v[l].is_zero()) terms.push_back({l + 1, v[l] * sign});
  }
  return SparseTensor::from_terms(spec.field, spec.dim + 1, 1, std::move(terms));
}

SparseTensor basis_column(const AlgebraSpec& spec, unsigned index) {
  return SparseTensor::basis_index(spec.field, spec.dim + 1, 1, index);
}

/// Arity-2 T (sign = +1) or T~ (sign = -1) from the closed formula.
SparseOperator build_composed(const AlgebraSpec& spec, int sign_value) {
  const Field field = spec.field;
  const unsigned base = spec.dim + 1;
  const Scalar sign(field, sign_value);
  const Scalar one = Scalar::one(field);
  return SparseOperator::tabulate(field, base, 3, 1, [&](MultiIndex col) {
    const auto digits = decode_index(col, base, 3);
    const unsigned i = digits[0], j = digits[1], k = digits[2];
    if (i == 0) {
      return (j == 0 && k == 0) ? basis_column(spec, 0) : SparseTensor(field, base, 1);
    }
    if (j == 0 && k == 0) return basis_column(spec, i);
    if (k == 0) {
      const unsigned args[] = {i, j};
      return vector_column(spec, spec.basis_bracket(args), sign);
    }
    if (j == 0) {
      const unsigned args[] = {i, k};
      return vector_column(spec, spec.basis_bracket(args), sign);
    }
    const unsigned inner[] = {i, j};
    return vector_column(spec, bracket2(spec, spec.basis_bracket(inner), spec.unit_vector(k)), one);
  });
}

SparseOperator build_ternary(const AlgebraSpec& spec, int sign_value) {
  const Field field = spec.field;
  const unsigned base = spec.dim + 1;
  const Scalar sign(field, sign_value);
  return SparseOperator::tabulate(field, base, 3, 1, [&](MultiIndex col) {
    const auto digits = decode_index(col, base, 3);
    const unsigned i = digits[0], j = digits[1], k = digits[2];
    if (j == 0 && k == 0) return basis_column(spec, i);
    if (i == 0 || j == 0 || k == 0) return SparseTensor(field, base, 1);
    const unsigned args[] = {i, j, k};
    return vector_column(spec, spec.basis_bracket(args), sign);
  });
}

SparseOperator build_binary_q(const AlgebraSpec& spec, int sign_value) {
  if (spec.arity != 2) throw Error(ErrorCode::invalid_argument, "q is defined for binary Lie algebras only");
  const Field field = spec.field;
  const unsigned base = spec.dim + 1;
  const Scalar sign(field, sign_value);
  return SparseOperator::tabulate(field, base, 2, 1, [&](MultiIndex col) {
    const unsigned i = static_cast<unsigned>(col / base), j = static_cast<unsigned>(col % base);
    if (i == 0) return j == 0 ? basis_column(spec, 0) : SparseTensor(field, base, 1);
    if (j == 0) return basis_column(spec, i);
    const unsigned args[] = {i, j};
    return vector_column(spec, spec.basis_bracket(args), sign);
  });
}

}  // namespace

SparseOperator build_T(const AlgebraSpec& spec) {
  require_valid(spec);
  return spec.arity == 2 ? build_composed(spec, 1) : build_ternary(spec, 1);
}

SparseOperator build_T_tilde(const AlgebraSpec& spec) {
  require_valid(spec);
  return spec.arity == 2 ? build_composed(spec, -1) : build_ternary(spec, 1);
}

SparseOperator build_T_swapped(const AlgebraSpec& spec) {
  const SparseOperator t = build_T(spec);
  const unsigned base = spec.dim + 1;
  const SparseOperator swap_last =
      tensor_product(SparseOperator::identity(spec.field, base, 1),
                     permutation_operator(spec.field, base, Permutation::from_two_row({2, 1})));
  return compose(t, swap_last);
}

SparseOperator build_q(const AlgebraSpec& spec) { return build_binary_q(spec, 1); }
SparseOperator build_q_tilde(const AlgebraSpec& spec) { return build_binary_q(spec, -1); }

TsdPair make_tsd_pair(const AlgebraSpec& spec) {
  TsdPair pair;
  pair.spec = spec;
  pair.T = std::make_shared<const SparseOperator>(build_T(spec));
  pair.T_tilde = std::make_shared<const SparseOperator>(build_T_tilde(spec));
  pair.path = spec.arity == 2 ? TsdPath::binary_composed : TsdPath::ternary;
  return pair;
}

std::vector<TsdProperty> all_tsd_properties(int arity) {
  std::vector<TsdProperty> out = {TsdProperty::tsd, TsdProperty::tsd_tilde, TsdProperty::coalgebra_morphism,
                                  TsdProperty::reversibility, TsdProperty::mixed};
  if (arity == 2) out.push_back(TsdProperty::q_self_distributive);
  return out;
}

std::string_view to_string(TsdProperty property) {
  switch (property) {
    case TsdProperty::tsd: return "tsd";
    case TsdProperty::tsd_tilde: return "tsd-tilde";
    case TsdProperty::coalgebra_morphism: return "coalgebra-morphism";
    case TsdProperty::reversibility: return "reversibility";
    case TsdProperty::mixed: return "mixed";
    case TsdProperty::q_self_distributive: return "q-self-distributive";
  }
  return "?";
}

bool compare_on_basis(const LinearPipeline& lhs, const LinearPipeline& rhs, std::string_view identity,
                      ValidationReport& report, std::size_t max_failures) {
  if (lhs.input_rank() != rhs.input_rank() || lhs.output_rank() != rhs.output_rank()) {
    throw Error(ErrorCode::rank_mismatch, "identity '" + std::string(identity) + "' compares maps of different shape");
  }
  const std::uint64_t columns = checked_power(lhs.base(), lhs.input_rank());
  std::size_t failures = 0;
  for (MultiIndex col = 0; col < columns; ++col) {
    const SparseTensor left = lhs.apply_to_basis(col);
    const SparseTensor right = rhs.apply_to_basis(col);
    if (left == right) continue;
    if (failures++ < max_failures) {
      report.add_failure({std::string(identity), decode_index(col, lhs.base(), lhs.input_rank()), {},
                          "lhs - rhs = " + (left - right).to_string()});
    }
  }
  report.add_check({std::string(identity), failures == 0, columns, "columns",
                    failures ? std::to_string(failures) + " failing" : ""});
  return failures == 0;
}

namespace {

using OpPtr = std::shared_ptr<const SparseOperator>;

struct Kit {
  Field field;
  unsigned base;
  OpPtr delta2, delta3, counit;

  LinearPipeline start(unsigned rank) const { return LinearPipeline(field, base, rank); }

  // S(S(x⊗y⊗z)⊗u⊗v)
  LinearPipeline nested(const OpPtr& inner, const OpPtr& outer) const {
    LinearPipeline p = start(5);
    p.then_at(inner, 0).then_at(outer, 0);
    return p;
  }
  // outer(A(x⊗u1⊗v1)⊗A(y⊗u2⊗v2)⊗A(z⊗u3⊗v3))
  LinearPipeline distributed(const OpPtr& a, const OpPtr& outer) const {
    LinearPipeline p = start(5);
    p.then_at(delta3, 3).then_at(delta3, 6).then_permute(shuffles::interleave9());
    p.then_at(a, 0).then_at(a, 1).then_at(a, 2).then_at(outer, 0);
    return p;
  }
};

void check_coalgebra(const Kit& kit, const OpPtr& op, std::string_view name, ValidationReport& report) {
  LinearPipeline lhs = kit.start(3);
  lhs.then_at(op, 0).then_at(kit.delta3, 0);
  LinearPipeline rhs = kit.start(3);
  rhs.then_at(kit.delta3, 0).then_at(kit.delta3, 3).then_at(kit.delta3, 6).then_permute(shuffles::interleave9());
  rhs.then_at(op, 0).then_at(op, 1).then_at(op, 2);
  const std::string n(name);
  compare_on_basis(lhs, rhs, n + " coalgebra morphism Δ3∘" + n + " = " + n + "^{⊗3}∘shuffle∘Δ3^{⊗3}", report);

  LinearPipeline eps_lhs = kit.start(3);
  eps_lhs.then_at(op, 0).then_at(kit.counit, 0);
  LinearPipeline eps_rhs = kit.start(3);
  eps_rhs.then_at(kit.counit, 0).then_at(kit.counit, 0).then_at(kit.counit, 0);
  compare_on_basis(eps_lhs, eps_rhs, n + " counit ε∘" + n + " = ε⊗ε⊗ε", report);
}

void check_reversibility(const Kit& kit, const OpPtr& inner, const OpPtr& outer, std::string_view name,
                         ValidationReport& report) {
  LinearPipeline target = kit.start(3);
  target.then_at(kit.counit, 1).then_at(kit.counit, 1);
  for (bool inner_first : {false, true}) {
    LinearPipeline lhs = kit.start(3);
    lhs.then_at(kit.delta2, 1).then_at(kit.delta2, 3);
    lhs.then_permute(inner_first ? shuffles::reversibility_inner_first() : shuffles::reversibility_inner_second());
    lhs.then_at(inner, 0).then_at(outer, 0);
    compare_on_basis(lhs, target,
                     std::string(name) + (inner_first ? " reversibility, (1)-legs inside"
                                                      : " reversibility, (2)-legs inside"),
                     report);
  }
}

/// The (x,y,x) reading of mixed distributivity; informational only.
void probe_literal_mixed(const Kit& kit, const OpPtr& a, const OpPtr& b, std::string_view name,
                         ValidationReport& report) {
  const LinearPipeline lhs = kit.nested(b, a);
  const LinearPipeline rhs = kit.distributed(a, b);
  const std::uint64_t columns = checked_power(kit.base, 5);
  std::size_t mismatches = 0;
  for (MultiIndex col = 0; col < columns; ++col) {
    auto digits = decode_index(col, kit.base, 5);
    digits[2] = digits[0];
    const MultiIndex repeated = encode_index(digits, kit.base);
    if (!(lhs.apply_to_basis(col) == rhs.apply_to_basis(repeated))) ++mismatches;
  }
  report.add_check({std::string(name) + " mixed distributivity, literal (x,y,x) reading", mismatches == 0, columns,
                    "columns", "informational, not asserted" + (mismatches ? "; " + std::to_string(mismatches) +
                                                                                   " mismatching"
                                                                             : std::string()),
                    false});
}

}  // namespace

ValidationReport check_tsd_properties(const TsdPair& pair, std::span<const TsdProperty> which) {
  const Field field = pair.field();
  const unsigned base = pair.base();
  const bool has_q = std::find(which.begin(), which.end(), TsdProperty::q_self_distributive) != which.end();
  if (has_q && pair.spec.arity != 2) {
    throw Error(ErrorCode::invalid_argument, "q-self-distributivity is only defined for binary Lie algebras");
  }
  const Kit kit{field, base, std::make_shared<const SparseOperator>(comultiplication(field, base, 2)),
                std::make_shared<const SparseOperator>(comultiplication(field, base, 3)),
                std::make_shared<const SparseOperator>(counit_operator(field, base))};
  const OpPtr& t = pair.T;
  const OpPtr& tt = pair.T_tilde;

  ValidationReport report;
  for (TsdProperty property : which) {
    switch (property) {
      case TsdProperty::tsd:
        compare_on_basis(kit.nested(t, t), kit.distributed(t, t), "T ternary self-distributivity", report);
        break;
      case TsdProperty::tsd_tilde:
        compare_on_basis(kit.nested(tt, tt), kit.distributed(tt, tt), "T~ ternary self-distributivity", report);
        break;
      case TsdProperty::coalgebra_morphism:
        check_coalgebra(kit, t, "T", report);
        check_coalgebra(kit, tt, "T~", report);
        break;
      case TsdProperty::reversibility:
        check_reversibility(kit, t, tt, "T~∘T", report);
        check_reversibility(kit, tt, t, "T∘T~", report);
        break;
      case TsdProperty::mixed:
        compare_on_basis(kit.nested(tt, t), kit.distributed(t, tt), "mixed T(T~⊗1⊗1) = T~(T⊗T⊗T)∘shuffle", report);
        compare_on_basis(kit.nested(t, tt), kit.distributed(tt, t), "mixed T~(T⊗1⊗1) = T(T~⊗T~⊗T~)∘shuffle", report);
        probe_literal_mixed(kit, t, tt, "T/T~", report);
        break;
      case TsdProperty::q_self_distributive: {
        for (int sign : {1, -1}) {
          const OpPtr q = std::make_shared<const SparseOperator>(sign > 0 ? build_q(pair.spec) : build_q_tilde(pair.spec));
          const std::string name = sign > 0 ? "q" : "q~";
          LinearPipeline lhs = kit.start(3);
          lhs.then_at(q, 0).then_at(q, 0);
          LinearPipeline rhs = kit.start(3);
          rhs.then_at(kit.delta2, 2).then_permute(shuffles::q_distributivity());
          rhs.then_at(q, 0).then_at(q, 1).then_at(q, 0);
          compare_on_basis(lhs, rhs, name + " self-distributivity", report);
          LinearPipeline t_rhs = kit.start(3);
          t_rhs.then_at(sign > 0 ? t : tt, 0);
          compare_on_basis(lhs, t_rhs, (sign > 0 ? "T = q∘(q⊗1)" : "T~ = q~∘(q~⊗1)"), report);
        }
        break;
      }
    }
  }
  return report;
}

}  // namespace tsdlink
