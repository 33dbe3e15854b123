#include <doctest.h>

#include <array>
#include <string>
#include <vector>

#include "tsdlink/algebra.hpp"
#include "tsdlink/error.hpp"
#include "tsdlink/selftest.hpp"

using namespace tsdlink;

namespace {

const Field Q = Field::rational();

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(Q, x);
  return v;
}

std::string algebra_path(const char* name) { return std::string(TSDLINK_ALGEBRA_DIR) + "/" + name + ".json"; }

// Dense integer oracle, independent of the library's bracket code.
// table[i][j][k] = coefficient of e_k in [e_i, e_j] (0-based).
using Table2 = std::array<std::array<std::array<long, 3>, 3>, 3>;

Table2 sl2_table() {
  Table2 t{};
  auto set = [&](int i, int j, int k, long c) {
    t[i][j][k] = c;
    t[j][i][k] = -c;
  };
  set(0, 1, 1, 2);   // [h,e] = 2e
  set(0, 2, 2, -2);  // [h,f] = -2f
  set(1, 2, 0, 1);   // [e,f] = h
  return t;
}

bool jacobi_holds(const Table2& t) {
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z)
        for (int out = 0; out < 3; ++out) {
          long s = 0;
          for (int m = 0; m < 3; ++m) {
            s += t[y][z][m] * t[x][m][out] + t[z][x][m] * t[y][m][out] + t[x][y][m] * t[z][m][out];
          }
          if (s != 0) return false;
        }
  return true;
}

int levi_civita(std::array<int, 4> p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

// c[a][b][c][d]: coefficient of e_d in [e_a,e_b,e_c].
using Table3 = std::vector<long>;
long& at3(Table3& t, int a, int b, int c, int d) { return t[((a * 4 + b) * 4 + c) * 4 + d]; }

Table3 nambu_table(int a0 = -1, int b0 = -1, int c0 = -1, int d0 = -1) {
  Table3 t(256, 0);
  std::array<int, 3> perm;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) at3(t, a, b, c, d) = levi_civita({a, b, c, d});
  if (a0 >= 0) {
    // +1 on the stored entry of the sorted tuple, propagated with signs.
    perm = {a0, b0, c0};
    std::array<int, 3> idx = {0, 1, 2};
    do {
      const int s = levi_civita({idx[0], idx[1], idx[2], 3});
      at3(t, perm[idx[0]], perm[idx[1]], perm[idx[2]], d0) += s;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return t;
}

std::vector<long> br3(Table3& t, const std::vector<long>& x, const std::vector<long>& y, const std::vector<long>& z) {
  std::vector<long> out(4, 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const long k = x[a] * y[b] * z[c];
        if (!k) continue;
        for (int d = 0; d < 4; ++d) out[d] += k * at3(t, a, b, c, d);
      }
  return out;
}

std::vector<long> unit(int i) {
  std::vector<long> v(4, 0);
  v[i] = 1;
  return v;
}

std::vector<long> plus(std::vector<long> a, const std::vector<long>& b) {
  for (int i = 0; i < 4; ++i) a[i] += b[i];
  return a;
}

/// Derivation form (three terms on the right) or the two-term printed form.
bool filippov_holds(Table3& t, bool derivation_form) {
  for (int i = 0; i < 1024; ++i) {
    const int x1 = i & 3, x2 = (i >> 2) & 3, x3 = (i >> 4) & 3, x4 = (i >> 6) & 3, x5 = (i >> 8) & 3;
    const auto e = unit;
    const auto lhs = br3(t, br3(t, e(x1), e(x2), e(x3)), e(x4), e(x5));
    auto rhs = plus(br3(t, e(x1), br3(t, e(x2), e(x4), e(x5)), e(x3)), br3(t, e(x1), e(x2), br3(t, e(x3), e(x4), e(x5))));
    if (derivation_form) rhs = plus(rhs, br3(t, br3(t, e(x1), e(x4), e(x5)), e(x2), e(x3)));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bundled documents load") {
  const auto sl2 = load_algebra_file(algebra_path("sl2"));
  CHECK(sl2.arity == 2);
  CHECK(sl2.dim == 3);
  CHECK(sl2.basis_labels == std::vector<std::string>{"h", "e", "f"});
  const auto nambu = load_algebra_file(algebra_path("nambu4"));
  CHECK(nambu.arity == 3);
  CHECK(nambu.dim == 4);
  for (const auto& name : {"sl2", "so3", "heisenberg3", "nambu4"}) {
    const auto file = load_algebra_file(algebra_path(name));
    CHECK(file.structure == builtin_algebra(name).structure);
  }
  const auto f7 = load_algebra_file(algebra_path("sl2_mod7"));
  CHECK(f7.field == Field::prime(7));
  CHECK(f7.structure.at({1, 3})[2].residue() == 5);
}

TEST_CASE("schema violations") {
  const std::string head = R"({"name":"x","field":{"kind":"rational"},"arity":3,"dim":4,"basis":["a","b","c","d"],)";
  auto code = [](const std::string& doc) {
    try {
      load_algebra(doc);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  CHECK(code(head + R"("brackets":[{"args":[1,1,2],"value":[{"idx":3,"coeff":1}]}]})") == ErrorCode::schema);
  CHECK(code(head + R"("brackets":[{"args":[1,2,5],"value":[]}]})") == ErrorCode::schema);
  CHECK(code(head + R"("brackets":[{"args":[1,2],"value":[]}]})") == ErrorCode::schema);
  CHECK(code(head + R"("brackets":[{"args":[1,2,3],"value":[{"idx":4,"coeff":"1/0"}]}]})") ==
        ErrorCode::division_by_zero);
  CHECK(code(head + R"("brackets":[{"args":[1,2,3],"value":[]},{"args":[1,2,3],"value":[]}]})") == ErrorCode::schema);
  CHECK(code(head + "}") == ErrorCode::parse);
  CHECK(code(R"({"name":"x"})") == ErrorCode::schema);
  CHECK_THROWS_AS(load_algebra_file(algebra_path("missing")), Error);
}

TEST_CASE("dump and load round trip") {
  const int three[] = {3};
  for (const auto& name : builtin_algebra_names()) {
    const auto spec = name == "abelian" ? builtin_algebra(name, three) : builtin_algebra(name);
    const auto back = load_algebra(dump_algebra(spec));
    CHECK(back.name == spec.name);
    CHECK(back.structure == spec.structure);
  }
  const auto f7 = load_algebra_file(algebra_path("sl2_mod7"));
  CHECK(load_algebra(dump_algebra(f7)).structure == f7.structure);
}

TEST_CASE("builtin structure constants") {
  const auto so3 = builtin_algebra("so3");
  const unsigned e12[] = {1, 2}, e23[] = {2, 3}, e31[] = {3, 1};
  CHECK(so3.basis_bracket(e12) == so3.unit_vector(3));
  CHECK(so3.basis_bracket(e23) == so3.unit_vector(1));
  CHECK(so3.basis_bracket(e31) == so3.unit_vector(2));

  const auto nambu = builtin_algebra("nambu4");
  const unsigned t123[] = {1, 2, 3}, t124[] = {1, 2, 4}, t134[] = {1, 3, 4}, t234[] = {2, 3, 4};
  CHECK(nambu.basis_bracket(t123) == vec({0, 0, 0, 1}));
  CHECK(nambu.basis_bracket(t124) == vec({0, 0, -1, 0}));
  CHECK(nambu.basis_bracket(t134) == vec({0, 1, 0, 0}));
  CHECK(nambu.basis_bracket(t234) == vec({-1, 0, 0, 0}));

  const int two[] = {2};
  CHECK(builtin_algebra("abelian", two).structure.empty());
  CHECK_THROWS_AS(builtin_algebra("e8"), Error);
}

TEST_CASE("bracket evaluation") {
  const auto sl2 = builtin_algebra("sl2");
  CHECK(bracket2(sl2, vec({1, 0, 0}), vec({0, 1, 0})) == vec({0, 2, 0}));
  CHECK(bracket2(sl2, vec({0, 1, 0}), vec({1, 0, 0})) == vec({0, -2, 0}));
  const auto so3 = builtin_algebra("so3");
  CHECK(bracket2(so3, vec({1, 1, 0}), vec({0, 1, 0})) == vec({0, 0, 1}));

  const auto nambu = builtin_algebra("nambu4");
  CHECK(bracket3(nambu, vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0})) == vec({0, 0, 0, 1}));
  CHECK(bracket3(nambu, vec({0, 1, 0, 0}), vec({1, 0, 0, 0}), vec({0, 0, 1, 0})) == vec({0, 0, 0, -1}));
  CHECK(bracket3(nambu, vec({1, 0, 0, 0}), vec({1, 0, 0, 0}), vec({0, 0, 1, 0})) == vec({0, 0, 0, 0}));
  CHECK_THROWS_AS(bracket3(sl2, vec({1, 0, 0}), vec({1, 0, 0}), vec({1, 0, 0})), Error);
}

TEST_CASE("validators accept the bundled algebras") {
  for (const auto& name : {"sl2", "so3", "heisenberg3", "nambu4"}) {
    CHECK_MESSAGE(validate_algebra(builtin_algebra(name)).passed(), name);
  }
  for (int d = 1; d <= 4; ++d) {
    const int p[] = {d};
    CHECK(validate_algebra(builtin_algebra("abelian", p)).passed());
  }
  const auto report = validate_algebra(builtin_algebra("nambu4"));
  bool counted = false;
  for (const auto& c : report.checks()) counted = counted || (c.identity == "Filippov" && c.instances == 1024);
  CHECK(counted);
}

TEST_CASE("mutated sl2 gives the Jacobi witness (h,e,f) with residual -h") {
  auto spec = builtin_algebra("sl2");
  spec.structure[{1, 2}] = vec({0, 3, 0});
  const auto report = validate_algebra(spec);
  REQUIRE_FALSE(report.passed());
  bool found = false;
  for (const auto& f : report.failures()) {
    if (f.witness == std::vector<unsigned>{1, 2, 3}) {
      CHECK(f.residual == vec({-1, 0, 0}));
      found = true;
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(require_valid(spec), Error);
}

TEST_CASE("the two-term Filippov form fails on nambu4, the derivation form holds") {
  Table3 t = nambu_table();
  CHECK_FALSE(filippov_holds(t, false));
  CHECK(filippov_holds(t, true));
}

TEST_CASE("+1 mutants: the validator agrees with an independent oracle") {
  // sl2: mutants that stay Lie algebras are exactly the ones the oracle accepts.
  std::vector<std::string> expected;
  const int stored[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pair : stored) {
    for (int k = 0; k < 3; ++k) {
      Table2 t = sl2_table();
      t[pair[0]][pair[1]][k] += 1;
      t[pair[1]][pair[0]][k] -= 1;
      if (jacobi_holds(t)) {
        expected.push_back("sl2[" + std::to_string(pair[0] + 1) + "," + std::to_string(pair[1] + 1) + "->e" +
                           std::to_string(k + 1) + " +1]");
      }
    }
  }
  CHECK(accepted_mutants("sl2") == expected);
  CHECK(expected.size() == 3);

  expected.clear();
  const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& tr : triples) {
    for (int d = 0; d < 4; ++d) {
      Table3 t = nambu_table(tr[0], tr[1], tr[2], d);
      if (filippov_holds(t, true)) {
        expected.push_back("nambu4[" + std::to_string(tr[0] + 1) + "," + std::to_string(tr[1] + 1) + "," +
                           std::to_string(tr[2] + 1) + "->e" + std::to_string(d + 1) + " +1]");
      }
    }
  }
  CHECK(accepted_mutants("nambu4") == expected);
  CHECK(expected.size() == 4);
}

TEST_CASE("rejected mutants carry a witness") {
  const auto base = builtin_algebra("sl2");
  auto spec = base;
  spec.structure[{1, 2}][0] += Scalar::one(Q);  // [h,e] = h + 2e
  const auto report = validate_algebra(spec);
  REQUIRE_FALSE(report.passed());
  CHECK(report.failures().front().witness.size() == 3);
  CHECK_FALSE(report.failures().front().detail.empty());
}
