#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tsdlink {

struct Letter {
  enum class Kind { sigma, twist };
  Kind kind = Kind::sigma;
  /// 1-based: σ_i with 1 ≤ i ≤ n−1, t_i with 1 ≤ i ≤ n.
  unsigned index = 1;
  /// Never zero.
  long exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Element of the framed braid group ℤⁿ⋊B_n, read left to right as
/// letters[0]·letters[1]⋯ · t_1^{framings[0]}⋯t_n^{framings[n-1]}.
/// A word is normal when it contains no t-letters.
struct FramedBraidWord {
  unsigned strands = 1;
  std::vector<long> framings;
  std::vector<Letter> letters;

  bool is_normal() const noexcept;
  friend bool operator==(const FramedBraidWord&, const FramedBraidWord&) = default;
};

/// Grammar: whitespace-separated tokens ("s"|"t") index ["^" signed-int].
/// t-letters stay in the letter list; framings start at zero.
FramedBraidWord parse_braid_word(std::string_view text, unsigned strands);

/// Pushes every t-letter to the right end with t_i σ_j = σ_j t_{τ_j(i)} and
/// folds it (and the existing framings) into `framings`. σ-letters are kept
/// as they are.
FramedBraidWord normalize(const FramedBraidWord& word);

/// Merges adjacent letters of the same kind and index, dropping zero
/// exponents, until nothing changes.
FramedBraidWord free_reduce(const FramedBraidWord& word);

/// "s1 s2^-1 t1^2"; framings appended as t-letters when nonzero; "" for the
/// identity.
std::string to_string(const FramedBraidWord& word);
/// "(f1,f2,...)".
std::string framings_to_string(const std::vector<long>& framings);

/// images[i] = strand that position i ends at, 0-based.
std::vector<unsigned> underlying_permutation(const FramedBraidWord& word);
/// Number of components of the closure.
unsigned closure_components(const FramedBraidWord& word);

enum class StabilizationMode { off, plain, compensated };
std::string_view to_string(StabilizationMode mode);

/// One rewrite of a random Markov walk. `position` and `letter` carry
/// whatever the kind needs; see apply_move.
struct MarkovMove {
  enum class Kind {
    braid_relation,    // σ_i^e σ_{i+1}^e σ_i^e <-> σ_{i+1}^e σ_i^e σ_{i+1}^e at position
    commute,           // swap letters position, position+1 (far σ's, or two t's)
    free_insert,       // insert letter, letter^-1 before position
    free_delete,       // remove the inverse pair at position, position+1
    t_push,            // t_i σ_j^e <-> σ_j^e t_{τ_j(i)} at position
    unfold_framing,    // move one unit of framings[letter.index-1] into a trailing t-letter
    fold_framing,      // absorb a trailing t-letter into the framings
    conjugate,         // w -> g w g^-1 with g = letter, then free reduction
    stabilize,         // EXPERIMENTAL: B_n -> B_{n+1}, append σ_n^{letter.exponent}
  };
  Kind kind;
  std::size_t position = 0;
  Letter letter;
  StabilizationMode stabilization = StabilizationMode::off;

  friend bool operator==(const MarkovMove&, const MarkovMove&) = default;
};
std::string_view to_string(MarkovMove::Kind kind);
std::string to_string(const MarkovMove& move);

struct MarkovTrace {
  std::uint64_t seed = 0;
  std::vector<MarkovMove> moves;
};

/// Applies one logged move; throws Error(invalid_argument) if it does not
/// apply to `word`. Words in the walk keep unit exponents.
FramedBraidWord apply_move(const FramedBraidWord& word, const MarkovMove& move);

/// Splits every letter into unit letters (σ_i^3 -> σ_i σ_i σ_i).
FramedBraidWord expand_units(const FramedBraidWord& word);

/// Seeded random walk of `moves` trace-preserving rewrites. Stabilization
/// is drawn only when `stabilize` is not off, at most once per walk.
struct MarkovWalk {
  FramedBraidWord word;
  MarkovTrace trace;
};
MarkovWalk random_markov_equivalent(const FramedBraidWord& word, std::uint64_t seed, unsigned moves,
                                    StabilizationMode stabilize = StabilizationMode::off);

/// Re-applies the log to the input of the walk.
FramedBraidWord replay(const FramedBraidWord& word, const MarkovTrace& trace);

}  // namespace tsdlink
