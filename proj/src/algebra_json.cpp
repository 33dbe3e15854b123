#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsdlink/algebra.hpp"

namespace tsdlink {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::schema, "algebra document: " + what);
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(std::string("missing key '") + key + "'");
  return *it;
}

Field parse_field(const json& j) {
  if (!j.is_object()) schema_error("'field' must be an object");
  const json& kind = require(j, "kind");
  if (kind == "rational") return Field::rational();
  if (kind == "prime") {
    const json& p = require(j, "p");
    if (!p.is_number_unsigned()) schema_error("'field.p' must be a positive integer");
    return Field::prime(p.get<std::uint64_t>());
  }
  schema_error("'field.kind' must be \"rational\" or \"prime\"");
}

}  // namespace

AlgebraSpec load_algebra(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("algebra document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");

  AlgebraSpec spec;
  const json& name = require(doc, "name");
  if (!name.is_string()) schema_error("'name' must be a string");
  spec.name = name.get<std::string>();
  spec.field = parse_field(require(doc, "field"));

  const json& arity = require(doc, "arity");
  if (!arity.is_number_integer() || (arity != 2 && arity != 3)) schema_error("'arity' must be 2 or 3");
  spec.arity = arity.get<int>();

  const json& dim = require(doc, "dim");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) schema_error("'dim' must be a positive integer");
  spec.dim = dim.get<unsigned>();

  const json& basis = require(doc, "basis");
  if (!basis.is_array() || basis.size() != spec.dim) schema_error("'basis' must list exactly dim labels");
  for (const auto& label : basis) {
    if (!label.is_string()) schema_error("basis labels must be strings");
    spec.basis_labels.push_back(label.get<std::string>());
  }

  const json& brackets = require(doc, "brackets");
  if (!brackets.is_array()) schema_error("'brackets' must be an array");
  for (const auto& entry : brackets) {
    if (!entry.is_object()) schema_error("bracket entries must be objects");
    const json& args = require(entry, "args");
    if (!args.is_array() || args.size() != static_cast<std::size_t>(spec.arity)) {
      schema_error("bracket 'args' must have exactly " + std::to_string(spec.arity) + " indices");
    }
    std::vector<unsigned> tuple;
    for (const auto& a : args) {
      if (!a.is_number_integer()) schema_error("bracket indices must be integers");
      const long long i = a.get<long long>();
      if (i < 1 || i > static_cast<long long>(spec.dim)) {
        throw Error(ErrorCode::schema, "algebra document: bracket index " + std::to_string(i) + " out of range 1.." +
                                           std::to_string(spec.dim));
      }
      if (!tuple.empty() && static_cast<unsigned>(i) <= tuple.back()) {
        schema_error("bracket 'args' must be strictly increasing (repeated indices give a zero bracket)");
      }
      tuple.push_back(static_cast<unsigned>(i));
    }
    if (spec.structure.count(tuple)) schema_error("duplicate bracket tuple");

    Vector value = spec.zero_vector();
    const json& terms = require(entry, "value");
    if (!terms.is_array()) schema_error("bracket 'value' must be an array");
    std::set<long long> seen;
    for (const auto& term : terms) {
      if (!term.is_object()) schema_error("bracket value terms must be objects");
      const json& idx = require(term, "idx");
      const json& coeff = require(term, "coeff");
      if (!idx.is_number_integer()) schema_error("'idx' must be an integer");
      const long long l = idx.get<long long>();
      if (l < 1 || l > static_cast<long long>(spec.dim)) schema_error("value index out of range");
      if (!seen.insert(l).second) schema_error("repeated value index in one bracket");
      std::string text;
      if (coeff.is_string()) {
        text = coeff.get<std::string>();
      } else if (coeff.is_number_integer()) {
        text = coeff.dump();
      } else {
        schema_error("'coeff' must be a string \"p/q\" or an integer");
      }
      value[static_cast<std::size_t>(l - 1)] = parse_scalar(text, spec.field);
    }
    spec.structure.emplace(std::move(tuple), std::move(value));
  }
  return spec;
}

AlgebraSpec load_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read algebra file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_algebra(buf.str());
}

std::string dump_algebra(const AlgebraSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  if (spec.field.is_rational()) {
    doc["field"] = {{"kind", "rational"}};
  } else {
    doc["field"] = {{"kind", "prime"}, {"p", spec.field.modulus()}};
  }
  doc["arity"] = spec.arity;
  doc["dim"] = spec.dim;
  doc["basis"] = spec.basis_labels;
  json brackets = json::array();
  for (const auto& [args, value] : spec.structure) {
    json terms = json::array();
    for (std::size_t l = 0; l < value.size(); ++l) {
      if (value[l].is_zero()) continue;
      std::string coeff = value[l].to_string();
      if (!spec.field.is_rational()) coeff = std::to_string(value[l].residue());
      terms.push_back({{"idx", l + 1}, {"coeff", coeff}});
    }
    if (terms.empty()) continue;
    brackets.push_back({{"args", args}, {"value", terms}});
  }
  doc["brackets"] = brackets;
  return doc.dump(2) + "\n";
}

}  // namespace tsdlink
