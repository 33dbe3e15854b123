#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsdlink/report.hpp"
#include "tsdlink/scalar.hpp"

namespace tsdlink {

/// Dense coordinate vector in L = k^d.
using Vector = std::vector<Scalar>;

/// Structure constants of a binary Lie or ternary (3-Lie) bracket.
///
/// Only strictly increasing 1-based index tuples are stored; the bracket on
/// any other ordering is recovered from the sign of the sorting permutation,
/// so skew-symmetry holds by construction. Absent tuples are zero brackets.
struct AlgebraSpec {
  std::string name;
  Field field;
  int arity = 2;
  unsigned dim = 0;
  std::vector<std::string> basis_labels;
  std::map<std::vector<unsigned>, Vector> structure;

  /// Bracket of basis vectors e_{i_1}, ..., e_{i_arity} (1-based, any order).
  Vector basis_bracket(std::span<const unsigned> indices) const;
  Vector zero_vector() const { return Vector(dim, Scalar::zero(field)); }
  Vector unit_vector(unsigned index) const;
};

/// Parses the algebra JSON document. Structural checks only; the axioms are
/// not validated here.
AlgebraSpec load_algebra(std::string_view json_text);
AlgebraSpec load_algebra_file(const std::filesystem::path& path);
std::string dump_algebra(const AlgebraSpec& spec);

/// abelian(d, arity), heisenberg3, so3, sl2, nambu4.
AlgebraSpec builtin_algebra(std::string_view name, std::span<const int> params = {},
                            Field field = Field::rational());
std::vector<std::string> builtin_algebra_names();

Vector bracket2(const AlgebraSpec& spec, const Vector& x, const Vector& y);
Vector bracket3(const AlgebraSpec& spec, const Vector& x, const Vector& y, const Vector& z);

/// Jacobi over all d^3 basis triples (arity 2), or the Filippov identity
/// [[x1,x2,x3],x4,x5] = [[x1,x4,x5],x2,x3] + [x1,[x2,x4,x5],x3] + [x1,x2,[x3,x4,x5]]
/// over all d^5 basis 5-tuples (arity 3).
ValidationReport validate_algebra(const AlgebraSpec& spec);

/// Throws Error(invalid_argument) naming the first failing identity.
void require_valid(const AlgebraSpec& spec);

std::string render_vector(const AlgebraSpec& spec, const Vector& v);

}  // namespace tsdlink
