#include "tsdlink/tsdlink.h"

#include <chrono>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "tsdlink/invariant.hpp"
#include "tsdlink/selftest.hpp"

struct tsdlink_algebra {
  tsdlink::AlgebraSpec spec;
};

struct tsdlink_report {
  std::string command;
  bool passed = false;
  std::optional<std::string> value;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  long long timing_ms = 0;
  std::string text;
  std::string json;
};

namespace {

using namespace tsdlink;
using Clock = std::chrono::steady_clock;

thread_local std::string last_error;

tsdlink_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return TSDLINK_ERR_INVALID_ARGUMENT;
    case ErrorCode::parse: return TSDLINK_ERR_PARSE;
    case ErrorCode::schema: return TSDLINK_ERR_SCHEMA;
    case ErrorCode::division_by_zero: return TSDLINK_ERR_DIVISION_BY_ZERO;
    case ErrorCode::field_mismatch: return TSDLINK_ERR_FIELD_MISMATCH;
    case ErrorCode::rank_mismatch: return TSDLINK_ERR_RANK_MISMATCH;
    case ErrorCode::dimension_cap: return TSDLINK_ERR_DIMENSION_CAP;
    case ErrorCode::io: return TSDLINK_ERR_IO;
    case ErrorCode::internal: return TSDLINK_ERR_INTERNAL;
  }
  return TSDLINK_ERR_INTERNAL;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
tsdlink_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return TSDLINK_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TSDLINK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TSDLINK_ERR_INTERNAL;
  }
}

void require_out(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

void append_failures(tsdlink_report& r, const ValidationReport& report) {
  for (const auto& f : report.failures()) {
    r.failures.push_back({{"identity", f.identity}, {"witness", f.witness}, {"detail", f.detail}});
  }
}

tsdlink_report* finish(tsdlink_report r, Clock::time_point start) {
  r.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  nlohmann::ordered_json doc = {{"command", r.command}, {"passed", r.passed}};
  if (r.value) doc["value"] = *r.value;
  doc["failures"] = r.failures;
  doc["timing_ms"] = r.timing_ms;
  r.json = doc.dump();
  return new tsdlink_report(std::move(r));
}

tsdlink_report from_validation(std::string command, const ValidationReport& report) {
  tsdlink_report r;
  r.command = std::move(command);
  r.passed = report.passed();
  r.text = report.to_text();
  append_failures(r, report);
  return r;
}

FramedBraidWord build_word(unsigned strands, const char* text, const long* framings) {
  require_out(text, "word");
  FramedBraidWord word = parse_braid_word(text, strands);
  if (framings) {
    for (unsigned i = 0; i < strands; ++i) word.framings[i] += framings[i];
  }
  return normalize(word);
}

ValidationReport run_property(const AlgebraSpec& spec, std::string_view property) {
  ValidationReport out;
  const bool all = property == "all";
  const bool axiom = property == "jacobi" || property == "filippov";
  if (property == "jacobi" && spec.arity != 2) {
    throw Error(ErrorCode::invalid_argument, "jacobi applies to binary brackets; use filippov");
  }
  if (property == "filippov" && spec.arity != 3) {
    throw Error(ErrorCode::invalid_argument, "filippov applies to ternary brackets; use jacobi");
  }
  out.merge(validate_algebra(spec));
  if (axiom || !out.passed()) return out;

  std::vector<TsdProperty> tsd;
  if (all || property == "tsd") {
    tsd = {TsdProperty::tsd, TsdProperty::tsd_tilde};
    if (spec.arity == 2) tsd.push_back(TsdProperty::q_self_distributive);
  }
  if (all || property == "coalgebra") tsd.push_back(TsdProperty::coalgebra_morphism);
  if (all || property == "reversibility") tsd.push_back(TsdProperty::reversibility);
  if (all || property == "mixed") tsd.push_back(TsdProperty::mixed);

  std::vector<BraidingProperty> braiding;
  if (all || property == "ybe") braiding = {BraidingProperty::ybe, BraidingProperty::inverses};
  if (all || property == "slide") braiding.push_back(BraidingProperty::slide);
  const bool fb = all || property == "fb-relations";

  if (tsd.empty() && braiding.empty() && !fb) {
    throw Error(ErrorCode::invalid_argument, "unknown property '" + std::string(property) + "'");
  }
  ValidationReport rest;
  const auto pair = make_tsd_pair(spec);
  if (!tsd.empty()) rest.merge(check_tsd_properties(pair, tsd));
  if (!braiding.empty() || fb) {
    const auto kit = make_braiding_kit(pair);
    if (!braiding.empty()) rest.merge(check_braiding(kit, braiding));
    if (fb) rest.merge(check_framed_braid_relations(kit, 3));
  }
  // The axiom line is only shown for `all`.
  if (!all) return rest;
  out.merge(rest);
  return out;
}

}  // namespace

extern "C" {

const char* tsdlink_version(void) { return "0.1.0"; }

const char* tsdlink_last_error(void) { return last_error.c_str(); }

const char* tsdlink_status_name(tsdlink_status status) {
  switch (status) {
    case TSDLINK_OK: return "ok";
    case TSDLINK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TSDLINK_ERR_PARSE: return "parse error";
    case TSDLINK_ERR_SCHEMA: return "schema error";
    case TSDLINK_ERR_DIVISION_BY_ZERO: return "division by zero";
    case TSDLINK_ERR_FIELD_MISMATCH: return "field mismatch";
    case TSDLINK_ERR_RANK_MISMATCH: return "rank mismatch";
    case TSDLINK_ERR_DIMENSION_CAP: return "dimension cap exceeded";
    case TSDLINK_ERR_IO: return "i/o error";
    case TSDLINK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tsdlink_status tsdlink_algebra_load_file(const char* path, tsdlink_algebra** out) {
  return guarded([&] {
    require_out(path, "path");
    require_out(out, "out");
    *out = new tsdlink_algebra{load_algebra_file(path)};
  });
}

tsdlink_status tsdlink_algebra_load_json(const char* json_text, tsdlink_algebra** out) {
  return guarded([&] {
    require_out(json_text, "json_text");
    require_out(out, "out");
    *out = new tsdlink_algebra{load_algebra(json_text)};
  });
}

tsdlink_status tsdlink_algebra_builtin(const char* name, tsdlink_algebra** out) {
  return guarded([&] {
    require_out(name, "name");
    require_out(out, "out");
    std::string_view n(name);
    if (n.starts_with("abelian") && n.size() > 7) {
      const int params[] = {std::stoi(std::string(n.substr(7)))};
      *out = new tsdlink_algebra{builtin_algebra("abelian", params)};
    } else {
      *out = new tsdlink_algebra{builtin_algebra(n)};
    }
  });
}

void tsdlink_algebra_free(tsdlink_algebra* algebra) { delete algebra; }

const char* tsdlink_algebra_name(const tsdlink_algebra* algebra) { return algebra ? algebra->spec.name.c_str() : ""; }
unsigned tsdlink_algebra_dim(const tsdlink_algebra* algebra) { return algebra ? algebra->spec.dim : 0; }
int tsdlink_algebra_arity(const tsdlink_algebra* algebra) { return algebra ? algebra->spec.arity : 0; }

tsdlink_status tsdlink_validate(const tsdlink_algebra* algebra, tsdlink_report** out) {
  return guarded([&] {
    require_out(algebra, "algebra");
    require_out(out, "out");
    const auto start = Clock::now();
    *out = finish(from_validation("validate", validate_algebra(algebra->spec)), start);
  });
}

tsdlink_status tsdlink_check(const tsdlink_algebra* algebra, const char* property, tsdlink_report** out) {
  return guarded([&] {
    require_out(algebra, "algebra");
    require_out(property, "property");
    require_out(out, "out");
    const auto start = Clock::now();
    *out = finish(from_validation("check", run_property(algebra->spec, property)), start);
  });
}

tsdlink_status tsdlink_invariant(const tsdlink_algebra* algebra, unsigned strands, const char* word,
                                 const long* framings, uint64_t cap, tsdlink_report** out) {
  return guarded([&] {
    require_out(algebra, "algebra");
    require_out(out, "out");
    const auto start = Clock::now();
    const FramedBraidWord w = build_word(strands, word, framings);
    const auto kit = make_braiding_kit(algebra->spec);
    const auto result = trace_invariant(kit, w, cap ? cap : default_dimension_cap);
    tsdlink_report r;
    r.command = "invariant";
    r.passed = true;
    r.value = result.value.to_string();
    FramedBraidWord braid = result.word;
    braid.framings.assign(braid.strands, 0);
    r.text = "algebra: " + result.algebra + " (" + algebra->spec.field.to_string() + ")\n" +
             "word: " + (braid.letters.empty() ? std::string("(empty)") : to_string(braid)) +
             "\nstrands: " + std::to_string(result.strands) + "\nframings: " + framings_to_string(result.word.framings) +
             "\ncomponents: " + std::to_string(closure_components(result.word)) +
             "\ndimension: " + std::to_string(result.dimension) + "\nvalue: " + *r.value + "\n";
    *out = finish(std::move(r), start);
  });
}

tsdlink_status tsdlink_markov(const tsdlink_algebra* algebra, unsigned strands, const char* word,
                              const tsdlink_markov_options* options, tsdlink_report** out) {
  return guarded([&] {
    require_out(algebra, "algebra");
    require_out(options, "options");
    require_out(out, "out");
    const auto start = Clock::now();
    MarkovOptions o;
    o.trials = options->trials;
    o.seed = options->seed;
    if (options->moves_per_trial) o.moves_per_trial = options->moves_per_trial;
    if (options->cap) o.cap = options->cap;
    switch (options->stabilize) {
      case TSDLINK_STABILIZE_OFF: o.stabilize = StabilizationMode::off; break;
      case TSDLINK_STABILIZE_PLAIN: o.stabilize = StabilizationMode::plain; break;
      case TSDLINK_STABILIZE_COMPENSATED: o.stabilize = StabilizationMode::compensated; break;
      default: throw Error(ErrorCode::invalid_argument, "unknown stabilization mode");
    }
    const auto kit = make_braiding_kit(algebra->spec);
    const auto report = markov_report(kit, build_word(strands, word, nullptr), o);
    tsdlink_report r = from_validation("markov", report.checks);
    r.value = report.reference.value.to_string();
    r.text = report.to_text();
    *out = finish(std::move(r), start);
  });
}

tsdlink_status tsdlink_selftest(unsigned criterion, tsdlink_report** out) {
  return guarded([&] {
    require_out(out, "out");
    const auto start = Clock::now();
    tsdlink_report r;
    r.command = "selftest";
    r.passed = true;
    std::string details;
    for (unsigned c = 1; c <= acceptance_criterion_count; ++c) {
      if (criterion != 0 && c != criterion) continue;
      const auto result = run_criterion(c);
      r.text += summary_line(result) + "\n";
      details += summary_line(result) + "\n" + result.detail;
      if (!result.passed) {
        r.passed = false;
        r.failures.push_back({{"identity", "criterion " + std::to_string(c) + ": " + result.title},
                              {"witness", nlohmann::ordered_json::array()},
                              {"detail", result.detail}});
      }
    }
    if (criterion != 0 && r.text.empty()) throw Error(ErrorCode::invalid_argument, "no such acceptance criterion");
    r.text += "\n" + details;
    *out = finish(std::move(r), start);
  });
}

int tsdlink_report_passed(const tsdlink_report* report) { return report && report->passed ? 1 : 0; }
const char* tsdlink_report_text(const tsdlink_report* report) { return report ? report->text.c_str() : ""; }
const char* tsdlink_report_json(const tsdlink_report* report) { return report ? report->json.c_str() : ""; }
const char* tsdlink_report_value(const tsdlink_report* report) {
  return report && report->value ? report->value->c_str() : nullptr;
}
void tsdlink_report_free(tsdlink_report* report) { delete report; }

}  // extern "C"
