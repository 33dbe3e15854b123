#include "tsdlink/invariant.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

namespace tsdlink {

namespace {

using OpPtr = std::shared_ptr<const SparseOperator>;

/// One local step of Ψ_b in application order (rightmost factor first).
struct Step {
  OpPtr op;
  unsigned position;
};

void check_word(const BraidingKit& kit, const FramedBraidWord& word) {
  (void)kit;
  if (!word.is_normal()) throw Error(ErrorCode::invalid_argument, "representation needs a normalized word");
  if (word.framings.size() != word.strands) {
    throw Error(ErrorCode::invalid_argument, "framings vector does not match the strand count");
  }
  for (const auto& l : word.letters) {
    if (l.index < 1 || l.index >= word.strands) throw Error(ErrorCode::invalid_argument, "σ index out of range");
  }
}

std::vector<Step> steps_of(const BraidingKit& kit, const FramedBraidWord& word) {
  check_word(kit, word);
  std::vector<Step> steps;
  for (unsigned i = 0; i < word.strands; ++i) {
    const long f = word.framings[i];
    for (long k = 0; k < std::labs(f); ++k) steps.push_back({f > 0 ? kit.theta : kit.theta_inv, 2 * i});
  }
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    for (long k = 0; k < std::labs(it->exponent); ++k) {
      steps.push_back({it->exponent > 0 ? kit.R : kit.R_inv, 2 * (it->index - 1)});
    }
  }
  return steps;
}

std::uint64_t guarded_dimension(const BraidingKit& kit, unsigned strands, std::uint64_t cap) {
  const std::uint64_t dim = checked_power(kit.base(), 2 * strands);
  if (dim > cap) {
    throw Error(ErrorCode::dimension_cap,
                "operator dimension " + std::to_string(dim) + " exceeds the cap " + std::to_string(cap) +
                    "; use fewer strands, a prime field, or raise --cap");
  }
  return dim;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

LinearPipeline representation_pipeline(const BraidingKit& kit, const FramedBraidWord& word) {
  LinearPipeline p(kit.field(), kit.base(), 2 * word.strands);
  for (const auto& s : steps_of(kit, word)) p.then_at(s.op, s.position);
  return p;
}

SparseOperator representation(const BraidingKit& kit, const FramedBraidWord& word, std::uint64_t cap) {
  guarded_dimension(kit, word.strands, cap);
  return representation_pipeline(kit, word).materialize();
}

InvariantResult trace_invariant(const BraidingKit& kit, const FramedBraidWord& word, std::uint64_t cap) {
  const auto start = std::chrono::steady_clock::now();
  InvariantResult result;
  result.word = normalize(word);
  result.strands = word.strands;
  result.algebra = kit.spec().name;
  result.dimension = guarded_dimension(kit, word.strands, cap);

  const auto steps = steps_of(kit, result.word);
  const unsigned rank = 2 * word.strands;
  const unsigned base = kit.base();
  Scalar total = Scalar::zero(kit.field());
  for (MultiIndex col = 0; col < result.dimension; ++col) {
    // No map in Ψ_b raises the degree, so once a term drops below deg(col)
    // it can never contribute to the diagonal entry.
    const unsigned degree = index_degree(col, base);
    SparseTensor t = SparseTensor::basis_index(kit.field(), base, rank, col);
    for (const auto& s : steps) {
      t = s.op->apply_at(t, s.position);
      if (kit.degree_non_increasing && degree > 0) {
        Terms terms = std::move(t).take_terms();
        std::erase_if(terms, [&](const Term& term) { return index_degree(term.index, base) < degree; });
        t = SparseTensor::from_canonical_terms(kit.field(), base, rank, std::move(terms));
      }
      if (t.empty()) break;
    }
    if (!t.empty()) total += t.coefficient(col);
  }
  result.value = std::move(total);
  result.elapsed_ms = ms_since(start);
  return result;
}

ValidationReport check_framed_braid_relations(const BraidingKit& kit, unsigned strands) {
  ValidationReport report;
  if (strands < 2) return report;
  const unsigned rank = 2 * strands;
  const auto word = [&](std::string_view text) { return parse_braid_word(text, strands); };
  const auto phi = [&](std::string_view text) { return representation_pipeline(kit, normalize(word(text))); };
  // Letters are read left to right as left-to-right composition factors,
  // so the pipeline of "a b" is Φ(a)∘Φ(b).
  (void)rank;
  for (unsigned i = 1; i + 1 < strands; ++i) {
    const std::string a = "s" + std::to_string(i), b = "s" + std::to_string(i + 1);
    compare_on_basis(phi(a + " " + b + " " + a), phi(b + " " + a + " " + b),
                     "FB" + std::to_string(strands) + " Φ(" + a + ")Φ(" + b + ")Φ(" + a + ") = Φ(" + b + ")Φ(" + a +
                         ")Φ(" + b + ")",
                     report);
  }
  for (unsigned i = 1; i <= strands; ++i) {
    for (unsigned j = i + 1; j <= strands; ++j) {
      const std::string ti = "t" + std::to_string(i), tj = "t" + std::to_string(j);
      // Unnormalized words: build each side from explicit twist steps.
      LinearPipeline lhs(kit.field(), kit.base(), rank), rhs(kit.field(), kit.base(), rank);
      lhs.then_at(kit.theta, 2 * (j - 1)).then_at(kit.theta, 2 * (i - 1));
      rhs.then_at(kit.theta, 2 * (i - 1)).then_at(kit.theta, 2 * (j - 1));
      compare_on_basis(lhs, rhs, "FB" + std::to_string(strands) + " Φ(" + ti + ")Φ(" + tj + ") = Φ(" + tj + ")Φ(" + ti + ")",
                       report);
    }
  }
  for (unsigned i = 1; i <= strands; ++i) {
    for (unsigned j = 1; j < strands; ++j) {
      const unsigned k = i == j ? j + 1 : i == j + 1 ? j : i;
      // Φ(t_i)Φ(σ_j): σ_j applied first.
      LinearPipeline lhs(kit.field(), kit.base(), rank), rhs(kit.field(), kit.base(), rank);
      lhs.then_at(kit.R, 2 * (j - 1)).then_at(kit.theta, 2 * (i - 1));
      rhs.then_at(kit.theta, 2 * (k - 1)).then_at(kit.R, 2 * (j - 1));
      compare_on_basis(lhs, rhs,
                       "FB" + std::to_string(strands) + " Φ(t" + std::to_string(i) + ")Φ(s" + std::to_string(j) +
                           ") = Φ(s" + std::to_string(j) + ")Φ(t" + std::to_string(k) + ")",
                       report);
    }
  }
  return report;
}

std::string MarkovReport::to_text() const {
  std::ostringstream out;
  out << "reference: " << to_string(reference.word) << " on " << reference.strands
      << " strands, trace = " << reference.value.to_string() << "\n";
  std::size_t equal = 0, compared = 0;
  for (const auto& t : trials) {
    if (t.stabilized) continue;
    ++compared;
    if (t.value == reference.value) ++equal;
  }
  out << "trials: " << equal << "/" << compared << " equal traces";
  const std::size_t stabilized = trials.size() - compared;
  if (stabilized) out << " (" << stabilized << " stabilized trials reported separately)";
  out << "\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    if (!trials[i].stabilized) continue;
    out << "  EXPERIMENTAL trial " << i << ": " << to_string(trials[i].word) << " on " << trials[i].word.strands
        << " strands, trace = " << trials[i].value.to_string()
        << (trials[i].value == reference.value ? " (equal)" : " (unequal)") << "\n";
  }
  for (const auto& v : stabilization) {
    out << "stabilization " << to_string(v.mode) << ": " << to_string(v.word) << " -> " << v.value.to_string()
        << (v.equal ? " equal" : " unequal") << "\n";
  }
  out << checks.to_text();
  return out.str();
}

MarkovReport markov_report(const BraidingKit& kit, const FramedBraidWord& word, const MarkovOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::invalid_argument, "markov needs at least one trial");
  MarkovReport report;
  report.reference = trace_invariant(kit, word, options.cap);

  std::size_t mismatches = 0;
  std::size_t compared = 0;
  for (unsigned trial = 0; trial < options.trials; ++trial) {
    auto walk = random_markov_equivalent(word, options.seed + trial, options.moves_per_trial, options.stabilize);
    MarkovTrial t;
    t.stabilized = walk.word.strands != word.strands;
    const std::uint64_t cap = t.stabilized ? options.cap * kit.base() * kit.base() : options.cap;
    t.value = trace_invariant(kit, walk.word, cap).value;
    t.word = std::move(walk.word);
    t.trace = std::move(walk.trace);
    if (!t.stabilized) {
      ++compared;
      if (!(t.value == report.reference.value)) {
        ++mismatches;
        std::string log;
        for (const auto& m : t.trace.moves) log += (log.empty() ? "" : "; ") + to_string(m);
        report.checks.add_failure({"Markov trace equality", {trial}, {},
                                   "seed " + std::to_string(t.trace.seed) + ": " + to_string(t.word) + " gives " +
                                       t.value.to_string() + " [" + log + "]"});
      }
    }
    report.trials.push_back(std::move(t));
  }
  report.checks.add_check({"Markov trace equality", mismatches == 0, compared, "trials", ""});

  if (options.stabilize != StabilizationMode::off) {
    for (StabilizationMode mode : {StabilizationMode::plain, StabilizationMode::compensated}) {
      for (long e : {1L, -1L}) {
        MarkovMove m{MarkovMove::Kind::stabilize, 0, {Letter::Kind::sigma, word.strands, e}, mode};
        StabilizationVerdict v;
        v.mode = mode;
        v.word = apply_move(normalize(word), m);
        v.value = trace_invariant(kit, v.word, options.cap * kit.base() * kit.base()).value;
        v.equal = v.value == report.reference.value;
        report.stabilization.push_back(std::move(v));
      }
    }
  }
  return report;
}

}  // namespace tsdlink
