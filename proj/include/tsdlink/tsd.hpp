#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "tsdlink/algebra.hpp"
#include "tsdlink/pipeline.hpp"
#include "tsdlink/report.hpp"
#include "tsdlink/tensor.hpp"

namespace tsdlink {

/// Factor shuffles used by the TSD and braiding identities, in push
/// convention (two-row bottom rows, 1-based).
namespace shuffles {
/// (x,y,z,u1,u2,u3,v1,v2,v3) -> (x,u1,v1,y,u2,v2,z,u3,v3); also the
/// tensor-coalgebra shuffle of Δ3^{⊗3}.
Permutation interleave9();
/// (x,y1,y2,z1,z2) -> (x,y2,z2,z1,y1): inner T sees the (2)-legs.
Permutation reversibility_inner_second();
/// (x,y1,y2,z1,z2) -> (x,y1,z1,z2,y2): inner T sees the (1)-legs.
Permutation reversibility_inner_first();
/// (x,y,z1,z2) -> (x,z1,y,z2).
Permutation q_distributivity();
}  // namespace shuffles

enum class TsdPath { binary_composed, ternary };

/// Ternary self-distributive map T on X = k ⊕ L and its reversing partner.
struct TsdPair {
  AlgebraSpec spec;
  std::shared_ptr<const SparseOperator> T;
  std::shared_ptr<const SparseOperator> T_tilde;
  TsdPath path = TsdPath::binary_composed;

  Field field() const noexcept { return spec.field; }
  unsigned base() const noexcept { return spec.dim + 1; }
};

/// Arity 2: (a,x)(b,y)(c,z) -> (abc, bcx + c[x,y] + b[x,z] + [[x,y],z]).
/// Arity 3: (a,x)(b,y)(c,z) -> (abc, bcx + [x,y,z]).
/// Validates the algebra first.
SparseOperator build_T(const AlgebraSpec& spec);
/// Partner satisfying T~(T(x⊗y(2)⊗z(2))⊗z(1)⊗y(1)) = ε(y)ε(z)x.
/// Arity 2: (abc, bcx - c[x,y] - b[x,z] + [[x,y],z]). Arity 3: T itself,
/// because the (z,y) argument order already absorbs the swap.
SparseOperator build_T_tilde(const AlgebraSpec& spec);
/// T∘(1⊗τ): the ternary inverse when the outer arguments are taken in (y,z) order.
SparseOperator build_T_swapped(const AlgebraSpec& spec);
/// q(a,x)(b,y) = (ab, bx + [x,y]); arity 2 only.
SparseOperator build_q(const AlgebraSpec& spec);
/// q~(a,x)(b,y) = (ab, bx - [x,y]); arity 2 only.
SparseOperator build_q_tilde(const AlgebraSpec& spec);

TsdPair make_tsd_pair(const AlgebraSpec& spec);

enum class TsdProperty { tsd, tsd_tilde, coalgebra_morphism, reversibility, mixed, q_self_distributive };

std::vector<TsdProperty> all_tsd_properties(int arity);
std::string_view to_string(TsdProperty property);

/// Exact operator identities, one column at a time. Throws
/// Error(invalid_argument) when q checks are requested for arity 3.
ValidationReport check_tsd_properties(const TsdPair& pair, std::span<const TsdProperty> which);

/// Compares two maps on every basis column of their common input; appends a
/// summary and (up to `max_failures`) witnesses.
bool compare_on_basis(const LinearPipeline& lhs, const LinearPipeline& rhs, std::string_view identity,
                      ValidationReport& report, std::size_t max_failures = 8);

}  // namespace tsdlink
