#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "tsdlink/tsd.hpp"

namespace tsdlink {

namespace shuffles {
/// (x,y,z1,z2,z3,w1,w2,w3) -> (z1,w1,x,z2,w2,y,z3,w3).
Permutation braiding();
/// (x1,x2,x3,y1,y2,y3,z,w) -> (z,y2,x2,w,y3,x3,x1,y1).
Permutation braiding_inverse();
/// (x1,x2,x3,y1,y2,y3) -> (x1,x2,y2,y1,x3,y3).
Permutation twist();
/// (x1,x2,x3,y1,y2,y3) -> (x1,y2,x2,y1,y3,x3).
Permutation twist_inverse();
}  // namespace shuffles

/// R on X^{⊗2}⊗X^{⊗2}: x⊗y⊗z⊗w -> z(1)⊗w(1)⊗T(x⊗z(2)⊗w(2))⊗T(y⊗z(3)⊗w(3)).
SparseOperator build_R(const TsdPair& pair);
/// x⊗y⊗z⊗w -> T~(z⊗y(2)⊗x(2))⊗T~(w⊗y(3)⊗x(3))⊗x(1)⊗y(1).
SparseOperator build_R_inverse(const TsdPair& pair);
/// θ(x⊗y) = T(x(1)⊗x(2)⊗y(2))⊗T(y(1)⊗x(3)⊗y(3)).
SparseOperator build_twist(const TsdPair& pair);
/// θ^{-1}(x⊗y) = T~(x(1)⊗y(2)⊗x(2))⊗T~(y(1)⊗y(3)⊗x(3)).
SparseOperator build_twist_inverse(const TsdPair& pair);

struct BraidingKit {
  TsdPair pair;
  std::shared_ptr<const SparseOperator> R;
  std::shared_ptr<const SparseOperator> R_inv;
  std::shared_ptr<const SparseOperator> theta;
  std::shared_ptr<const SparseOperator> theta_inv;
  /// Every column of R, R^{-1}, θ, θ^{-1} has output degree <= input degree
  /// (degree = number of non-b_0 factors). Checked at build time.
  bool degree_non_increasing = false;

  Field field() const noexcept { return pair.field(); }
  unsigned base() const noexcept { return pair.base(); }
  const AlgebraSpec& spec() const noexcept { return pair.spec; }
};

/// Builds all four operators and asserts R∘R^{-1} = R^{-1}∘R = id and
/// θ∘θ^{-1} = θ^{-1}∘θ = id; a failure throws Error(internal).
BraidingKit make_braiding_kit(const TsdPair& pair);
BraidingKit make_braiding_kit(const AlgebraSpec& spec);

enum class BraidingProperty { ybe, inverses, slide, far_commutation };

std::vector<BraidingProperty> all_braiding_properties();
std::string_view to_string(BraidingProperty property);

/// YBE on X^{⊗6}, inverse identities on X^{⊗4}/X^{⊗2}, both slide
/// identities on X^{⊗4}, far commutation on X^{⊗8} (skipped with a note
/// when d > 2).
ValidationReport check_braiding(const BraidingKit& kit, std::span<const BraidingProperty> which);

}  // namespace tsdlink
