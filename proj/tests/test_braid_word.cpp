#include <doctest.h>

#include <optional>

#include "tsdlink/braid_word.hpp"
#include "tsdlink/error.hpp"

using namespace tsdlink;

namespace {

using K = Letter::Kind;

Letter s(unsigned i, long e = 1) { return {K::sigma, i, e}; }
Letter t(unsigned i, long e = 1) { return {K::twist, i, e}; }

std::optional<ErrorCode> code_of(std::string_view text, unsigned strands) {
  try {
    parse_braid_word(text, strands);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

MarkovMove mv(MarkovMove::Kind kind, std::size_t position = 0) {
  return {kind, position, Letter{}, StabilizationMode::off};
}

}  // namespace

TEST_CASE("parsing") {
  const auto w = parse_braid_word("  s1 s2^-1\tt3^+2 s1^3 ", 3);
  CHECK(w.strands == 3);
  CHECK(w.framings == std::vector<long>{0, 0, 0});
  CHECK(w.letters == std::vector<Letter>{s(1), s(2, -1), t(3, 2), s(1, 3)});
  CHECK_FALSE(w.is_normal());
  CHECK(parse_braid_word("", 1).letters.empty());
  CHECK(parse_braid_word("t1", 1).letters == std::vector<Letter>{t(1)});
}

TEST_CASE("parse errors") {
  CHECK(code_of("x1", 2) == ErrorCode::parse);
  CHECK(code_of("s", 2) == ErrorCode::parse);
  CHECK(code_of("s1^", 2) == ErrorCode::parse);
  CHECK(code_of("s1^0", 2) == ErrorCode::parse);
  CHECK(code_of("s1s1", 2) == ErrorCode::parse);
  CHECK(code_of("s2", 2) == ErrorCode::invalid_argument);
  CHECK(code_of("s0", 3) == ErrorCode::invalid_argument);
  CHECK(code_of("t3", 2) == ErrorCode::invalid_argument);
  CHECK(code_of("", 0) == ErrorCode::invalid_argument);
  try {
    parse_braid_word("s1 s1 q", 2);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("column 7") != std::string::npos);
  }
}

TEST_CASE("normalization pushes t-letters to the right") {
  const auto a = normalize(parse_braid_word("t1 s1", 2));
  CHECK(a.letters == std::vector<Letter>{s(1)});
  CHECK(a.framings == std::vector<long>{0, 1});
  CHECK(a.is_normal());

  CHECK(normalize(parse_braid_word("t2 s1 t1", 2)).framings == std::vector<long>{2, 0});
  // Even powers do not permute the strands.
  CHECK(normalize(parse_braid_word("t1 s1^2", 2)).framings == std::vector<long>{1, 0});
  CHECK(normalize(parse_braid_word("t1^-3 s1^-1 t1", 3)).framings == std::vector<long>{1, -3, 0});

  auto w = parse_braid_word("t3 s2 s1 t1^2", 3);
  w.framings = {1, 0, 0};
  const auto n = normalize(w);
  CHECK(n.framings == std::vector<long>{4, 0, 0});
  CHECK(normalize(n) == n);
}

TEST_CASE("free reduction") {
  const auto w = free_reduce(parse_braid_word("s1 s2 s2^-1 s1^2 t1 t1^-1", 3));
  CHECK(w.letters == std::vector<Letter>{s(1, 3)});
  CHECK(free_reduce(parse_braid_word("s1 s1^-1", 2)).letters.empty());
}

TEST_CASE("rendering round-trips") {
  CHECK(to_string(parse_braid_word("", 2)).empty());
  auto w = parse_braid_word("s1 s2^-1 t1^2", 3);
  w.framings = {0, -1, 0};
  CHECK(to_string(w) == "s1 s2^-1 t1^2 t2^-1");
  CHECK(normalize(parse_braid_word(to_string(w), 3)) == normalize(w));
  CHECK(framings_to_string({1, -2, 0}) == "(1,-2,0)");
}

TEST_CASE("permutation and components") {
  CHECK(closure_components(parse_braid_word("", 3)) == 3);
  CHECK(closure_components(parse_braid_word("s1", 2)) == 1);
  CHECK(closure_components(parse_braid_word("s1 s1", 2)) == 2);
  CHECK(closure_components(parse_braid_word("s1 s2", 3)) == 1);
  CHECK(closure_components(parse_braid_word("s1^3 t1", 3)) == 2);
  const auto p = underlying_permutation(parse_braid_word("s1 s2", 3));
  CHECK(p.size() == 3);
  std::vector<unsigned> seen(3, 0);
  for (auto v : p) ++seen.at(v);
  CHECK(seen == std::vector<unsigned>{1, 1, 1});
}

TEST_CASE("moves") {
  using M = MarkovMove::Kind;
  const auto w = parse_braid_word("s1 s2 s1", 3);
  CHECK(apply_move(w, mv(M::braid_relation, 0)).letters == std::vector<Letter>{s(2), s(1), s(2)});
  CHECK_THROWS_AS(apply_move(parse_braid_word("s1 s1 s1", 3), mv(M::braid_relation, 0)), Error);

  CHECK(apply_move(parse_braid_word("s1 s3", 4), mv(M::commute, 0)).letters == std::vector<Letter>{s(3), s(1)});
  CHECK_THROWS_AS(apply_move(w, mv(M::commute, 0)), Error);

  const auto ins = apply_move(w, {M::free_insert, 1, s(2, -1)});
  CHECK(ins.letters == std::vector<Letter>{s(1), s(2, -1), s(2), s(2), s(1)});
  CHECK(apply_move(ins, mv(M::free_delete, 1)) == w);

  CHECK(apply_move(parse_braid_word("t1 s1", 2), mv(M::t_push, 0)).letters == std::vector<Letter>{s(1), t(2)});

  auto framed = parse_braid_word("s1", 2);
  framed.framings = {2, 0};
  const auto unfolded = apply_move(framed, {M::unfold_framing, 0, t(1)});
  CHECK(unfolded.framings == std::vector<long>{1, 0});
  CHECK(unfolded.letters.back() == t(1));
  CHECK(apply_move(unfolded, mv(M::fold_framing)) == framed);
  CHECK_THROWS_AS(apply_move(framed, {M::unfold_framing, 0, t(2)}), Error);

  framed.framings = {1, 0};
  const auto conj = apply_move(framed, {M::conjugate, 0, s(1)});
  CHECK(conj.letters == std::vector<Letter>{s(1)});
  CHECK(conj.framings == std::vector<long>{0, 1});

  const auto plain = apply_move(w, {M::stabilize, 0, s(3, -1), StabilizationMode::plain});
  CHECK(plain.strands == 4);
  CHECK(plain.letters.back() == s(3, -1));
  CHECK(plain.framings == std::vector<long>{0, 0, 0, 0});
  const auto comp = apply_move(w, {M::stabilize, 0, s(3, -1), StabilizationMode::compensated});
  CHECK(comp.framings == std::vector<long>{0, 0, 0, 1});
  CHECK_THROWS_AS(apply_move(w, {M::stabilize, 0, s(3)}), Error);
}

TEST_CASE("random walks replay deterministically") {
  const auto w = parse_braid_word("s1 s2^-1 s1 t3", 3);
  const auto a = random_markov_equivalent(w, 42, 30);
  const auto b = random_markov_equivalent(w, 42, 30);
  CHECK(a.word == b.word);
  CHECK(a.trace.moves == b.trace.moves);
  CHECK(a.trace.seed == 42);
  CHECK(a.trace.moves.size() == 30);
  CHECK(replay(w, a.trace) == a.word);
  CHECK(a.word.strands == 3);

  const auto none = random_markov_equivalent(w, 1, 0);
  CHECK(none.trace.moves.empty());
  CHECK(none.word == expand_units(w));

  bool any_stabilized = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto walk = random_markov_equivalent(w, seed, 20, StabilizationMode::compensated);
    int count = 0;
    for (const auto& m : walk.trace.moves) count += m.kind == MarkovMove::Kind::stabilize;
    CHECK(count <= 1);
    CHECK(walk.word.strands == 3u + static_cast<unsigned>(count));
    any_stabilized |= count == 1;
    CHECK(replay(w, walk.trace) == walk.word);
  }
  CHECK(any_stabilized);
}

TEST_CASE("expanding units") {
  CHECK(expand_units(parse_braid_word("s1^-2 t1^2", 2)).letters == std::vector<Letter>{s(1, -1), s(1, -1), t(1), t(1)});
}
