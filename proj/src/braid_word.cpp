#include "tsdlink/braid_word.hpp"

#include <cctype>
#include <charconv>
#include <random>
#include <utility>

#include "tsdlink/error.hpp"

namespace tsdlink {

namespace {

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what) {
  throw Error(ErrorCode::parse, "braid word, column " + std::to_string(pos + 1) + ": " + what);
}

/// τ_j acting on a 1-based strand index.
unsigned transpose(unsigned j, unsigned i) {
  if (i == j) return j + 1;
  if (i == j + 1) return j;
  return i;
}

Letter inverse(Letter l) {
  l.exponent = -l.exponent;
  return l;
}

bool is_inverse_pair(const Letter& a, const Letter& b) {
  return a.kind == b.kind && a.index == b.index && a.exponent == -b.exponent;
}

/// Cancels adjacent inverse pairs (stack reduction).
void cancel_pairs(std::vector<Letter>& letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const auto& l : letters) {
    if (!out.empty() && is_inverse_pair(out.back(), l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  letters = std::move(out);
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, std::string("move does not apply: ") + what);
}

bool is_sigma(const Letter& l) { return l.kind == Letter::Kind::sigma; }
bool is_twist(const Letter& l) { return l.kind == Letter::Kind::twist; }

}  // namespace

bool FramedBraidWord::is_normal() const noexcept {
  for (const auto& l : letters) {
    if (l.kind != Letter::Kind::sigma) return false;
  }
  return true;
}

FramedBraidWord parse_braid_word(std::string_view text, unsigned strands) {
  if (strands < 1) throw Error(ErrorCode::invalid_argument, "a braid needs at least one strand");
  FramedBraidWord word;
  word.strands = strands;
  word.framings.assign(strands, 0);

  std::size_t i = 0;
  const auto at_space = [&] { return i < text.size() && std::isspace(static_cast<unsigned char>(text[i])); };
  while (true) {
    while (at_space()) ++i;
    if (i == text.size()) break;
    const std::size_t start = i;
    Letter letter;
    if (text[i] == 's') {
      letter.kind = Letter::Kind::sigma;
    } else if (text[i] == 't') {
      letter.kind = Letter::Kind::twist;
    } else {
      syntax_error(i, "expected 's' or 't'");
    }
    ++i;
    unsigned long index = 0;
    auto [p, ec] = std::from_chars(text.data() + i, text.data() + text.size(), index);
    if (ec != std::errc() || p == text.data() + i) syntax_error(i, "expected a generator index");
    i = static_cast<std::size_t>(p - text.data());
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t digits = i;
      if (digits < text.size() && text[digits] == '+') ++digits;  // from_chars rejects '+'
      long exponent = 0;
      auto [q, ec2] = std::from_chars(text.data() + digits, text.data() + text.size(), exponent);
      if (ec2 != std::errc() || q == text.data() + digits) syntax_error(i, "expected a signed exponent");
      if (exponent == 0) syntax_error(i, "exponent must be nonzero");
      letter.exponent = exponent;
      i = static_cast<std::size_t>(q - text.data());
    }
    if (i < text.size() && !at_space()) syntax_error(i, "unexpected character");

    const unsigned long limit = letter.kind == Letter::Kind::sigma ? strands - 1ul : strands;
    if (index < 1 || index > limit) {
      throw Error(ErrorCode::invalid_argument,
                  "braid word, column " + std::to_string(start + 1) + ": generator index " + std::to_string(index) +
                      " out of range for " + std::to_string(strands) + " strands");
    }
    letter.index = static_cast<unsigned>(index);
    word.letters.push_back(letter);
  }
  return word;
}

FramedBraidWord normalize(const FramedBraidWord& word) {
  // Keep the framing block F to the right of the σ-letters seen so far;
  // t^F σ_j^k = σ_j^k t^{τ_j^k F}.
  FramedBraidWord out;
  out.strands = word.strands;
  std::vector<long> block(word.strands, 0);
  for (const auto& l : word.letters) {
    if (l.kind == Letter::Kind::twist) {
      block[l.index - 1] += l.exponent;
    } else {
      if (l.exponent % 2 != 0) std::swap(block[l.index - 1], block[l.index]);
      out.letters.push_back(l);
    }
  }
  for (unsigned i = 0; i < word.strands && i < word.framings.size(); ++i) block[i] += word.framings[i];
  out.framings = std::move(block);
  return out;
}

FramedBraidWord free_reduce(const FramedBraidWord& word) {
  FramedBraidWord out = word;
  out.letters.clear();
  for (const auto& l : word.letters) {
    if (!out.letters.empty() && out.letters.back().kind == l.kind && out.letters.back().index == l.index) {
      out.letters.back().exponent += l.exponent;
      if (out.letters.back().exponent == 0) out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

std::string to_string(const FramedBraidWord& word) {
  std::string out;
  const auto emit = [&](char kind, unsigned index, long exponent) {
    if (!out.empty()) out += ' ';
    out += kind;
    out += std::to_string(index);
    if (exponent != 1) out += '^' + std::to_string(exponent);
  };
  for (const auto& l : word.letters) emit(is_sigma(l) ? 's' : 't', l.index, l.exponent);
  for (std::size_t i = 0; i < word.framings.size(); ++i) {
    if (word.framings[i] != 0) emit('t', static_cast<unsigned>(i + 1), word.framings[i]);
  }
  return out;
}

std::string framings_to_string(const std::vector<long>& framings) {
  std::string out = "(";
  for (std::size_t i = 0; i < framings.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(framings[i]);
  }
  return out + ")";
}

std::vector<unsigned> underlying_permutation(const FramedBraidWord& word) {
  std::vector<unsigned> at(word.strands);  // at[position] = strand currently there
  for (unsigned i = 0; i < word.strands; ++i) at[i] = i;
  for (const auto& l : word.letters) {
    if (is_sigma(l) && l.exponent % 2 != 0) std::swap(at[l.index - 1], at[l.index]);
  }
  std::vector<unsigned> images(word.strands);
  for (unsigned pos = 0; pos < word.strands; ++pos) images[at[pos]] = pos;
  return images;
}

unsigned closure_components(const FramedBraidWord& word) {
  const auto images = underlying_permutation(word);
  std::vector<bool> seen(images.size(), false);
  unsigned cycles = 0;
  for (unsigned i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (unsigned j = i; !seen[j]; j = images[j]) seen[j] = true;
  }
  return cycles;
}

std::string_view to_string(StabilizationMode mode) {
  switch (mode) {
    case StabilizationMode::off: return "off";
    case StabilizationMode::plain: return "plain";
    case StabilizationMode::compensated: return "compensated";
  }
  return "?";
}

std::string_view to_string(MarkovMove::Kind kind) {
  using K = MarkovMove::Kind;
  switch (kind) {
    case K::braid_relation: return "braid-relation";
    case K::commute: return "commute";
    case K::free_insert: return "free-insert";
    case K::free_delete: return "free-delete";
    case K::t_push: return "t-push";
    case K::unfold_framing: return "unfold-framing";
    case K::fold_framing: return "fold-framing";
    case K::conjugate: return "conjugate";
    case K::stabilize: return "stabilize";
  }
  return "?";
}

std::string to_string(const MarkovMove& move) {
  std::string out(to_string(move.kind));
  out += " @" + std::to_string(move.position);
  using K = MarkovMove::Kind;
  if (move.kind == K::free_insert || move.kind == K::conjugate || move.kind == K::stabilize ||
      move.kind == K::unfold_framing) {
    FramedBraidWord w;
    w.letters = {move.letter};
    out += " " + to_string(w);
  }
  if (move.kind == K::stabilize) out += " [EXPERIMENTAL " + std::string(to_string(move.stabilization)) + "]";
  return out;
}

FramedBraidWord expand_units(const FramedBraidWord& word) {
  FramedBraidWord out = word;
  out.letters.clear();
  for (const auto& l : word.letters) {
    const long sign = l.exponent > 0 ? 1 : -1;
    for (long k = 0; k < l.exponent * sign; ++k) out.letters.push_back({l.kind, l.index, sign});
  }
  return out;
}

FramedBraidWord apply_move(const FramedBraidWord& word, const MarkovMove& move) {
  using K = MarkovMove::Kind;
  FramedBraidWord w = word;
  auto& ls = w.letters;
  const std::size_t p = move.position;
  switch (move.kind) {
    case K::braid_relation: {
      require(p + 2 < ls.size(), "braid relation needs three letters");
      const Letter a = ls[p], b = ls[p + 1], c = ls[p + 2];
      require(is_sigma(a) && is_sigma(b) && a == c && a.exponent == b.exponent &&
                  (a.index + 1 == b.index || b.index + 1 == a.index),
              "not a braid relation pattern");
      ls[p] = b;
      ls[p + 1] = a;
      ls[p + 2] = b;
      break;
    }
    case K::commute: {
      require(p + 1 < ls.size(), "commute needs two letters");
      const Letter a = ls[p], b = ls[p + 1];
      const bool far = is_sigma(a) && is_sigma(b) && (a.index + 2 <= b.index || b.index + 2 <= a.index);
      require(far || (is_twist(a) && is_twist(b)), "letters do not commute");
      std::swap(ls[p], ls[p + 1]);
      break;
    }
    case K::free_insert: {
      require(p <= ls.size(), "insert position out of range");
      const Letter g = move.letter;
      ls.insert(ls.begin() + static_cast<std::ptrdiff_t>(p), {g, inverse(g)});
      break;
    }
    case K::free_delete: {
      require(p + 1 < ls.size() && is_inverse_pair(ls[p], ls[p + 1]), "no inverse pair");
      ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(p), ls.begin() + static_cast<std::ptrdiff_t>(p) + 2);
      break;
    }
    case K::t_push: {
      require(p + 1 < ls.size(), "t-push needs two letters");
      Letter a = ls[p], b = ls[p + 1];
      if (is_twist(a) && is_sigma(b)) {
        if (b.exponent % 2 != 0) a.index = transpose(b.index, a.index);
      } else if (is_sigma(a) && is_twist(b)) {
        if (a.exponent % 2 != 0) b.index = transpose(a.index, b.index);
      } else {
        require(false, "t-push needs a t-letter next to a σ-letter");
      }
      ls[p] = b;
      ls[p + 1] = a;
      break;
    }
    case K::unfold_framing: {
      const Letter t = move.letter;
      require(is_twist(t) && t.index >= 1 && t.index <= w.strands, "bad framing letter");
      long& f = w.framings[t.index - 1];
      require(f != 0 && (f > 0) == (t.exponent > 0), "framing has no unit of that sign");
      f -= t.exponent;
      ls.push_back(t);
      break;
    }
    case K::fold_framing: {
      require(!ls.empty() && is_twist(ls.back()), "no trailing t-letter");
      w.framings[ls.back().index - 1] += ls.back().exponent;
      ls.pop_back();
      break;
    }
    case K::conjugate: {
      // g (L t^F) g^-1 = g L g^-1 t^{g·F}: only a σ with odd exponent moves F.
      const Letter g = move.letter;
      if (is_sigma(g)) {
        require(g.index >= 1 && g.index < w.strands, "conjugator index out of range");
        if (g.exponent % 2 != 0) std::swap(w.framings[g.index - 1], w.framings[g.index]);
      } else {
        require(g.index >= 1 && g.index <= w.strands, "conjugator index out of range");
      }
      ls.insert(ls.begin(), g);
      ls.push_back(inverse(g));
      cancel_pairs(ls);
      break;
    }
    case K::stabilize: {
      require(move.stabilization != StabilizationMode::off, "stabilization mode is off");
      const long e = move.letter.exponent;
      ls.push_back({Letter::Kind::sigma, w.strands, e});
      ++w.strands;
      w.framings.push_back(move.stabilization == StabilizationMode::compensated ? -e : 0);
      break;
    }
  }
  return w;
}

namespace {

std::vector<MarkovMove> candidates(const FramedBraidWord& w, MarkovMove::Kind kind, std::mt19937_64& rng) {
  using K = MarkovMove::Kind;
  const auto& ls = w.letters;
  std::vector<MarkovMove> out;
  const auto draw = [&](std::uint64_t n) { return rng() % n; };
  const auto random_letter = [&]() {
    const unsigned sigmas = w.strands - 1;
    const std::uint64_t k = draw(sigmas + w.strands);
    Letter l;
    if (k < sigmas) {
      l = {Letter::Kind::sigma, static_cast<unsigned>(k + 1), 1};
    } else {
      l = {Letter::Kind::twist, static_cast<unsigned>(k - sigmas + 1), 1};
    }
    if (draw(2)) l.exponent = -1;
    return l;
  };
  switch (kind) {
    case K::braid_relation:
    case K::commute:
    case K::free_delete:
    case K::t_push: {
      const std::size_t span = kind == K::braid_relation ? 3 : 2;
      for (std::size_t p = 0; p + span <= ls.size(); ++p) {
        MarkovMove m{kind, p, {}, StabilizationMode::off};
        try {
          apply_move(w, m);
          out.push_back(m);
        } catch (const Error&) {
        }
      }
      break;
    }
    case K::free_insert:
      out.push_back({kind, static_cast<std::size_t>(draw(ls.size() + 1)), random_letter(), StabilizationMode::off});
      break;
    case K::unfold_framing:
      for (unsigned i = 0; i < w.strands; ++i) {
        if (w.framings[i] != 0) {
          out.push_back({kind, 0, {Letter::Kind::twist, i + 1, w.framings[i] > 0 ? 1 : -1}, StabilizationMode::off});
        }
      }
      break;
    case K::fold_framing:
      if (!ls.empty() && is_twist(ls.back())) out.push_back({kind, 0, {}, StabilizationMode::off});
      break;
    case K::conjugate:
      out.push_back({kind, 0, random_letter(), StabilizationMode::off});
      break;
    case K::stabilize:
      break;
  }
  return out;
}

}  // namespace

MarkovWalk random_markov_equivalent(const FramedBraidWord& word, std::uint64_t seed, unsigned moves,
                                    StabilizationMode stabilize) {
  using K = MarkovMove::Kind;
  MarkovWalk walk;
  walk.trace.seed = seed;
  walk.word = word;
  if (moves == 0) return walk;

  std::mt19937_64 rng(seed);
  walk.word = expand_units(word);
  walk.trace.moves.clear();
  static constexpr K kinds[] = {K::braid_relation, K::commute,      K::free_insert,  K::free_delete,
                                K::t_push,         K::unfold_framing, K::fold_framing, K::conjugate};
  bool stabilized = false;
  for (unsigned step = 0; step < moves; ++step) {
    // Occasional stabilization, at most once, when the caller opted in.
    if (stabilize != StabilizationMode::off && !stabilized && rng() % 8 == 0) {
      MarkovMove m{K::stabilize, 0, {Letter::Kind::sigma, walk.word.strands, rng() % 2 ? -1 : 1}, stabilize};
      walk.word = apply_move(walk.word, m);
      walk.trace.moves.push_back(m);
      stabilized = true;
      continue;
    }
    std::vector<MarkovMove> pool;
    std::vector<K> available;
    for (K k : kinds) {
      if (!candidates(walk.word, k, rng).empty()) available.push_back(k);
    }
    // free_insert and conjugate always apply, so `available` is never empty.
    const K kind = available[rng() % available.size()];
    pool = candidates(walk.word, kind, rng);
    const MarkovMove m = pool[rng() % pool.size()];
    walk.word = apply_move(walk.word, m);
    walk.trace.moves.push_back(m);
  }
  return walk;
}

FramedBraidWord replay(const FramedBraidWord& word, const MarkovTrace& trace) {
  if (trace.moves.empty()) return word;
  FramedBraidWord w = expand_units(word);
  for (const auto& m : trace.moves) w = apply_move(w, m);
  return w;
}

}  // namespace tsdlink
