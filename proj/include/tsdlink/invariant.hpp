#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsdlink/braid_word.hpp"
#include "tsdlink/braiding.hpp"

namespace tsdlink {

inline constexpr std::uint64_t default_dimension_cap = 1'000'000;

/// Ψ_b = Φ(l_1)∘⋯∘Φ(l_m)∘(θ^{t_1}⊗⋯⊗θ^{t_n}) on X^{⊗2n} as a pipeline:
/// Φ(σ_i^k) = R^k at factor 2(i−1) (R^{-1} for k < 0), framings through θ^{±1}.
/// Requires a normal word.
LinearPipeline representation_pipeline(const BraidingKit& kit, const FramedBraidWord& word);

/// Materialized Ψ_b; throws Error(dimension_cap) when (d+1)^{2n} > cap.
SparseOperator representation(const BraidingKit& kit, const FramedBraidWord& word,
                              std::uint64_t cap = default_dimension_cap);

struct InvariantResult {
  Scalar value;
  std::string algebra;
  FramedBraidWord word;  // normalized
  unsigned strands = 0;
  std::uint64_t dimension = 0;
  double elapsed_ms = 0;
};

/// tr Ψ_b, one basis column at a time without materializing Ψ_b. Accepts
/// any word (it is normalized first).
InvariantResult trace_invariant(const BraidingKit& kit, const FramedBraidWord& word,
                                std::uint64_t cap = default_dimension_cap);

/// Φ(σ1)Φ(σ2)Φ(σ1) = Φ(σ2)Φ(σ1)Φ(σ2), Φ(t_i)Φ(t_j) = Φ(t_j)Φ(t_i) and
/// Φ(t_i)Φ(σ_j) = Φ(σ_j)Φ(t_{τ_j(i)}) on X^{⊗2n}, checked column by column.
ValidationReport check_framed_braid_relations(const BraidingKit& kit, unsigned strands = 3);

struct MarkovOptions {
  unsigned trials = 50;
  std::uint64_t seed = 0;
  unsigned moves_per_trial = 12;
  StabilizationMode stabilize = StabilizationMode::off;
  std::uint64_t cap = default_dimension_cap;
};

struct MarkovTrial {
  FramedBraidWord word;
  MarkovTrace trace;
  Scalar value;
  bool stabilized = false;
};

struct StabilizationVerdict {
  StabilizationMode mode;
  FramedBraidWord word;  // stabilized by σ_n (or σ_n^{-1})
  Scalar value;
  bool equal = false;
};

struct MarkovReport {
  InvariantResult reference;
  std::vector<MarkovTrial> trials;
  /// Both conventions, for σ_n and σ_n^{-1}; empty when stabilization is off.
  std::vector<StabilizationVerdict> stabilization;
  /// Trace equality over every non-stabilized trial.
  ValidationReport checks;

  bool passed() const noexcept { return checks.passed(); }
  std::string to_text() const;
};

/// Random Markov-equivalent words (relations, commutations, free
/// cancellation, t-pushes, conjugation) must all give the reference trace.
/// Stabilized trials and verdicts are reported, never asserted.
MarkovReport markov_report(const BraidingKit& kit, const FramedBraidWord& word, const MarkovOptions& options);

}  // namespace tsdlink
