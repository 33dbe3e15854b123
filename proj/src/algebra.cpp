#include "tsdlink/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace tsdlink {

namespace {

/// Sign of the permutation sorting `indices`, or 0 if an index repeats.
int sort_sign(std::vector<unsigned>& indices) {
  int sign = 1;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) return 0;
      if (indices[i] > indices[j]) sign = -sign;
    }
  }
  std::sort(indices.begin(), indices.end());
  return sign;
}

void axpy(Vector& acc, const Scalar& a, const Vector& x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (!x[i].is_zero()) acc[i] += a * x[i];
  }
}

bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

void check_arity(const AlgebraSpec& spec, int arity) {
  if (spec.arity != arity) {
    throw Error(ErrorCode::invalid_argument, "bracket" + std::to_string(arity) + " called on arity-" +
                                                 std::to_string(spec.arity) + " algebra '" + spec.name + "'");
  }
}

void check_dim(const AlgebraSpec& spec, const Vector& v) {
  if (v.size() != spec.dim) {
    throw Error(ErrorCode::invalid_argument, "vector of length " + std::to_string(v.size()) +
                                                 " in algebra of dimension " + std::to_string(spec.dim));
  }
}

/// Dense cache of basis brackets, indexed by the row-major 0-based tuple.
class BracketTable {
 public:
  explicit BracketTable(const AlgebraSpec& spec) : spec_(spec) {
    std::size_t count = 1;
    for (int k = 0; k < spec.arity; ++k) count *= spec.dim;
    table_.reserve(count);
    std::vector<unsigned> idx(static_cast<std::size_t>(spec.arity), 1);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rest = flat;
      for (int k = spec.arity - 1; k >= 0; --k) {
        idx[static_cast<std::size_t>(k)] = static_cast<unsigned>(rest % spec.dim) + 1;
        rest /= spec.dim;
      }
      table_.push_back(spec.basis_bracket(idx));
    }
  }

  const Vector& at(unsigned i, unsigned j) const { return table_[(i - 1) * spec_.dim + (j - 1)]; }
  const Vector& at(unsigned i, unsigned j, unsigned k) const {
    return table_[((i - 1) * spec_.dim + (j - 1)) * spec_.dim + (k - 1)];
  }

  /// Multilinear bracket where some arguments are vectors and the rest basis indices.
  Vector bracket(const std::vector<const Vector*>& args) const {
    Vector out = spec_.zero_vector();
    std::vector<unsigned> idx(args.size(), 1);
    recurse(args, 0, Scalar::one(spec_.field), idx, out);
    return out;
  }

 private:
  void recurse(const std::vector<const Vector*>& args, std::size_t pos, const Scalar& coeff,
               std::vector<unsigned>& idx, Vector& out) const {
    if (pos == args.size()) {
      axpy(out, coeff, args.size() == 2 ? at(idx[0], idx[1]) : at(idx[0], idx[1], idx[2]));
      return;
    }
    const Vector& v = *args[pos];
    for (unsigned i = 0; i < spec_.dim; ++i) {
      if (v[i].is_zero()) continue;
      idx[pos] = i + 1;
      recurse(args, pos + 1, coeff * v[i], idx, out);
    }
  }

  const AlgebraSpec& spec_;
  std::vector<Vector> table_;
};

}  // namespace

Vector AlgebraSpec::basis_bracket(std::span<const unsigned> indices) const {
  if (indices.size() != static_cast<std::size_t>(arity)) {
    throw Error(ErrorCode::invalid_argument, "bracket needs " + std::to_string(arity) + " arguments");
  }
  std::vector<unsigned> sorted(indices.begin(), indices.end());
  for (unsigned i : sorted) {
    if (i < 1 || i > dim) throw Error(ErrorCode::invalid_argument, "basis index out of range");
  }
  const int sign = sort_sign(sorted);
  Vector out = zero_vector();
  if (sign == 0) return out;
  auto it = structure.find(sorted);
  if (it == structure.end()) return out;
  out = it->second;
  if (sign < 0) {
    for (auto& s : out) s = -s;
  }
  return out;
}

Vector AlgebraSpec::unit_vector(unsigned index) const {
  Vector v = zero_vector();
  v.at(index - 1) = Scalar::one(field);
  return v;
}

Vector bracket2(const AlgebraSpec& spec, const Vector& x, const Vector& y) {
  check_arity(spec, 2);
  check_dim(spec, x);
  check_dim(spec, y);
  Vector out = spec.zero_vector();
  for (unsigned i = 0; i < spec.dim; ++i) {
    if (x[i].is_zero()) continue;
    for (unsigned j = 0; j < spec.dim; ++j) {
      if (y[j].is_zero() || i == j) continue;
      const unsigned idx[] = {i + 1, j + 1};
      axpy(out, x[i] * y[j], spec.basis_bracket(idx));
    }
  }
  return out;
}

Vector bracket3(const AlgebraSpec& spec, const Vector& x, const Vector& y, const Vector& z) {
  check_arity(spec, 3);
  check_dim(spec, x);
  check_dim(spec, y);
  check_dim(spec, z);
  Vector out = spec.zero_vector();
  for (unsigned i = 0; i < spec.dim; ++i) {
    if (x[i].is_zero()) continue;
    for (unsigned j = 0; j < spec.dim; ++j) {
      if (y[j].is_zero() || j == i) continue;
      const Scalar xy = x[i] * y[j];
      for (unsigned k = 0; k < spec.dim; ++k) {
        if (z[k].is_zero() || k == i || k == j) continue;
        const unsigned idx[] = {i + 1, j + 1, k + 1};
        axpy(out, xy * z[k], spec.basis_bracket(idx));
      }
    }
  }
  return out;
}

std::string render_vector(const AlgebraSpec& spec, const Vector& v) {
  std::ostringstream out;
  bool first = true;
  for (unsigned i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    const std::string label = i < spec.basis_labels.size() ? spec.basis_labels[i] : "e" + std::to_string(i + 1);
    if (v[i].is_one()) {
      out << label;
    } else {
      out << '(' << v[i].to_string() << ")*" << label;
    }
  }
  return first ? "0" : out.str();
}

ValidationReport validate_algebra(const AlgebraSpec& spec) {
  ValidationReport report;
  const BracketTable table(spec);
  const unsigned d = spec.dim;
  report.add_check({spec.arity == 2 ? "Antisymmetry" : "Skew-symmetry", true, spec.structure.size(),
                    "stored tuples", "holds by construction"});
  if (spec.arity == 2) {
    std::size_t count = 0;
    bool ok = true;
    for (unsigned x = 1; x <= d; ++x) {
      for (unsigned y = 1; y <= d; ++y) {
        for (unsigned z = 1; z <= d; ++z) {
          ++count;
          const Vector ex = spec.unit_vector(x), ey = spec.unit_vector(y), ez = spec.unit_vector(z);
          Vector residual = table.bracket({&table.at(x, y), &ez});
          const Vector yz = table.bracket({&table.at(y, z), &ex});
          const Vector zx = table.bracket({&table.at(z, x), &ey});
          // [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = -([[x,y],z] + [[y,z],x] + [[z,x],y])
          for (unsigned i = 0; i < d; ++i) residual[i] = -(residual[i] + yz[i] + zx[i]);
          if (!is_zero_vector(residual)) {
            ok = false;
            report.add_failure({"Jacobi", {x, y, z}, residual, render_vector(spec, residual)});
          }
        }
      }
    }
    report.add_check({"Jacobi", ok, count, "triples", ""});
  } else {
    std::size_t count = 0;
    bool ok = true;
    std::vector<Vector> units;
    for (unsigned i = 1; i <= d; ++i) units.push_back(spec.unit_vector(i));
    for (unsigned x1 = 1; x1 <= d; ++x1)
      for (unsigned x2 = 1; x2 <= d; ++x2)
        for (unsigned x3 = 1; x3 <= d; ++x3)
          for (unsigned x4 = 1; x4 <= d; ++x4)
            for (unsigned x5 = 1; x5 <= d; ++x5) {
              ++count;
              const Vector* e1 = &units[x1 - 1];
              const Vector* e2 = &units[x2 - 1];
              const Vector* e3 = &units[x3 - 1];
              const Vector* e4 = &units[x4 - 1];
              const Vector* e5 = &units[x5 - 1];
              Vector residual = table.bracket({&table.at(x1, x2, x3), e4, e5});
              const Vector t1 = table.bracket({&table.at(x1, x4, x5), e2, e3});
              const Vector t2 = table.bracket({e1, &table.at(x2, x4, x5), e3});
              const Vector t3 = table.bracket({e1, e2, &table.at(x3, x4, x5)});
              for (unsigned i = 0; i < d; ++i) residual[i] -= t1[i] + t2[i] + t3[i];
              if (!is_zero_vector(residual)) {
                ok = false;
                report.add_failure({"Filippov", {x1, x2, x3, x4, x5}, residual, render_vector(spec, residual)});
              }
            }
    report.add_check({"Filippov", ok, count, "5-tuples", ""});
  }
  return report;
}

void require_valid(const AlgebraSpec& spec) {
  const ValidationReport report = validate_algebra(spec);
  if (!report.passed()) {
    const Failure& f = report.failures().front();
    throw Error(ErrorCode::invalid_argument,
                "algebra '" + spec.name + "' fails the " + f.identity + " identity (residual " + f.detail + ")");
  }
}

namespace {

AlgebraSpec make_spec(std::string name, Field field, int arity, std::vector<std::string> labels) {
  AlgebraSpec spec;
  spec.name = std::move(name);
  spec.field = field;
  spec.arity = arity;
  spec.dim = static_cast<unsigned>(labels.size());
  spec.basis_labels = std::move(labels);
  return spec;
}

void set_bracket(AlgebraSpec& spec, std::vector<unsigned> args, std::vector<std::pair<unsigned, int>> value) {
  Vector v = spec.zero_vector();
  for (auto [idx, coeff] : value) v[idx - 1] = Scalar(spec.field, coeff);
  spec.structure[std::move(args)] = std::move(v);
}

}  // namespace

std::vector<std::string> builtin_algebra_names() { return {"abelian", "heisenberg3", "so3", "sl2", "nambu4"}; }

AlgebraSpec builtin_algebra(std::string_view name, std::span<const int> params, Field field) {
  const auto bad_params = [&] {
    return Error(ErrorCode::invalid_argument, "bad parameters for builtin algebra '" + std::string(name) + "'");
  };
  if (name == "abelian") {
    if (params.empty() || params.size() > 2 || params[0] < 1) throw bad_params();
    const int arity = params.size() == 2 ? params[1] : 2;
    if (arity != 2 && arity != 3) throw bad_params();
    std::vector<std::string> labels;
    for (int i = 1; i <= params[0]; ++i) labels.push_back("e" + std::to_string(i));
    std::string full = "abelian" + std::to_string(params[0]);
    if (arity == 3) full += "_ternary";
    return make_spec(std::move(full), field, arity, std::move(labels));
  }
  if (!params.empty()) throw bad_params();
  if (name == "heisenberg3") {
    AlgebraSpec spec = make_spec("heisenberg3", field, 2, {"x", "y", "z"});
    set_bracket(spec, {1, 2}, {{3, 1}});
    return spec;
  }
  if (name == "so3") {
    AlgebraSpec spec = make_spec("so3", field, 2, {"e1", "e2", "e3"});
    set_bracket(spec, {1, 2}, {{3, 1}});
    set_bracket(spec, {2, 3}, {{1, 1}});
    set_bracket(spec, {1, 3}, {{2, -1}});
    return spec;
  }
  if (name == "sl2") {
    AlgebraSpec spec = make_spec("sl2", field, 2, {"h", "e", "f"});
    set_bracket(spec, {1, 2}, {{2, 2}});
    set_bracket(spec, {1, 3}, {{3, -2}});
    set_bracket(spec, {2, 3}, {{1, 1}});
    return spec;
  }
  if (name == "nambu4") {
    // [e_a, e_b, e_c] = eps_{abcd} e_d
    AlgebraSpec spec = make_spec("nambu4", field, 3, {"e1", "e2", "e3", "e4"});
    set_bracket(spec, {1, 2, 3}, {{4, 1}});
    set_bracket(spec, {1, 2, 4}, {{3, -1}});
    set_bracket(spec, {1, 3, 4}, {{2, 1}});
    set_bracket(spec, {2, 3, 4}, {{1, -1}});
    return spec;
  }
  throw Error(ErrorCode::invalid_argument, "unknown builtin algebra '" + std::string(name) + "'");
}

}  // namespace tsdlink
