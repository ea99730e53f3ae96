#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "sbench/core/rng.hpp"
#include "sbench/slcs/evaluator.hpp"
#include "sbench/slcs/lexer.hpp"
#include "sbench/slcs/parser.hpp"
#include "sbench/slcs/sort_check.hpp"
#include "sbench/slcs/spatial_ops.hpp"

using namespace sbench;
using namespace sbench::slcs;
namespace fs = std::filesystem;

namespace {

BitMask random_mask(Rng& rng, int w, int h, double density) {
  BitMask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) m.set_at(i, rng.uniform() < density);
  return m;
}

BitMask mask_from(const std::vector<std::string>& rows) {
  BitMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) m.set(x, y, rows[y][x] == '#');
  return m;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kSource = SBENCH_SOURCE_DIR;

}  // namespace

// ---------------------------------------------------------------- lexer

TEST_CASE("tokenize: let binding") {
  const auto toks = tokenize("let a = !channel(0)");
  REQUIRE(toks.size() == 8);
  const TokenKind kinds[] = {TokenKind::kLet,   TokenKind::kIdent,  TokenKind::kEquals,
                             TokenKind::kOp,    TokenKind::kIdent,  TokenKind::kLParen,
                             TokenKind::kNumber, TokenKind::kRParen};
  const char* lexemes[] = {"let", "a", "=", "!", "channel", "(", "0", ")"};
  for (std::size_t i = 0; i < toks.size(); ++i) {
    CHECK(toks[i].kind == kinds[i]);
    CHECK(toks[i].lexeme == lexemes[i]);
    CHECK(toks[i].line == 1);
  }
  CHECK(toks[1].column == 5);
  CHECK(toks[6].column == 18);
}

TEST_CASE("tokenize: empty and comment-only input") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   # nothing here\n\t\n").empty());
}

TEST_CASE("tokenize: positions across lines") {
  const auto toks = tokenize("let a = 1\n  save \"x\" a <= 2.5");
  REQUIRE(toks.size() == 9);
  CHECK(toks[4].kind == TokenKind::kSave);
  CHECK(toks[4].line == 2);
  CHECK(toks[4].column == 3);
  CHECK(toks[5].lexeme == "\"x\"");
  CHECK(string_value(toks[5]) == "x");
  CHECK(toks[7].lexeme == "<=");
  CHECK(toks[8].lexeme == "2.5");
}

TEST_CASE("tokenize: unrecognized byte") {
  try {
    tokenize("let a = @");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(tokenize("save \"open"), LexError);
  CHECK_THROWS_AS(tokenize("1."), LexError);
  CHECK_THROWS_AS(tokenize("a \xC3\xA9"), LexError);
}

// ---------------------------------------------------------------- parser

TEST_CASE("parse: precedence of | over &") {
  const auto p = parse_source("save \"label\" a & b | c");
  REQUIRE(p.saves.size() == 1);
  const Expr expected =
      Expr::make_or(Expr::make_and(Expr::make_param("a"), Expr::make_param("b")),
                    Expr::make_param("c"));
  CHECK(p.saves[0].body == expected);
  CHECK(p.params == std::set<std::string>{"a", "b", "c"});
}

TEST_CASE("parse: arithmetic binds tighter than comparison") {
  const auto p = parse_source("save \"l\" dt(channel(0)) + 1 * 2 <= D - 3");
  const Expr& body = p.saves[0].body;
  REQUIRE(body.kind == ExprKind::kCmp);
  CHECK(body.args[0].kind == ExprKind::kArith);
  CHECK(body.args[0].arith == ArithOp::kAdd);
  CHECK(body.args[0].args[1].arith == ArithOp::kMul);
  CHECK(body.args[1].arith == ArithOp::kSub);
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse_source("let x = (a");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.expected() == "')'");
    CHECK(e.found() == "end of input");
    CHECK(e.line() == 1);
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(parse_source("save \"l\" a < b < c"), ParseError);
  CHECK_THROWS_AS(parse_source("let a = channel(0)"), ParseError);
  CHECK_THROWS_AS(parse_source("save \"l\" bogus(a)"), ParseError);
  CHECK_THROWS_AS(parse_source("save \"l\" a\nsave \"l\" b"), ParseError);
}

TEST_CASE("parse: reference dots spec") {
  const auto p = parse_source(read_file(kSource / "specs" / "dots.sls"));
  CHECK(p.lets.size() == 2);
  CHECK(p.saves.size() == 1);
  CHECK(p.params == std::set<std::string>{"D"});
  CHECK(p.lets[0].name == "dots");
  CHECK(p.lets[1].name == "ref");
  CHECK(p.saves[0].output == "label");
  const Expr expected = Expr::make_call(
      Builtin::kTouch,
      {Expr::make_var("dots"),
       Expr::make_cmp(CmpOp::kLe, Expr::make_call(Builtin::kDt, {Expr::make_var("ref")}),
                      Expr::make_param("D"))});
  CHECK(p.saves[0].body == expected);
}

TEST_CASE("parse: round trip through to_source over the shipped corpus") {
  std::vector<fs::path> files;
  for (const auto& dir : {kSource / "specs", kSource / "specs" / "corpus"})
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.path().extension() == ".sls") files.push_back(entry.path());
  REQUIRE(files.size() >= 20);
  for (const auto& f : files) {
    INFO(f.string());
    const SpecProgram p = parse_source(read_file(f));
    const std::string printed = to_source(p);
    const SpecProgram q = parse_source(printed);
    CHECK(p == q);
    CHECK(to_source(q) == printed);
    CHECK_NOTHROW(sort_check(p));
  }
}

TEST_CASE("malformed specs produce positioned errors") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(kSource / "tests" / "data" / "malformed")) {
    INFO(entry.path().string());
    ++count;
    try {
      sort_check(parse_source(read_file(entry.path())));
      FAIL("accepted a malformed spec");
    } catch (const PositionedError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  }
  CHECK(count >= 20);
}

// ---------------------------------------------------------------- sorts

TEST_CASE("sort_check rules") {
  CHECK_NOTHROW(sort_check(parse_source("save \"l\" dt(channel(0)) <= D")));
  try {
    sort_check(parse_source("save \"l\" dt(channel(0))"));
    FAIL("expected SortError");
  } catch (const SortError& e) {
    CHECK(e.expected() == "BoolField");
    CHECK(e.found() == "ScalarField");
  }
  try {
    sort_check(parse_source("let a = channel(0) + 1\nsave \"l\" a"));
    FAIL("expected SortError");
  } catch (const SortError& e) {
    CHECK(e.found() == "BoolField");
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(sort_check(parse_source("save \"l\" 1 < 2")), SortError);
  CHECK_THROWS_AS(sort_check(parse_source("save \"l\" minval(channel(0)) < 2")), SortError);
  CHECK_THROWS_AS(sort_check(parse_source("save \"l\" touch(channel(0))")), SortError);
  CHECK_THROWS_AS(sort_check(parse_source("save \"l\" !dt(channel(0))")), SortError);

  const auto info = sort_check(parse_source(
      "let f = dt(channel(0))\nlet m = minval(f) * 2\nlet b = f < m\nsave \"l\" b"));
  CHECK(info.lets.at("f") == Sort::kScalarField);
  CHECK(info.lets.at("m") == Sort::kNumber);
  CHECK(info.lets.at("b") == Sort::kBoolField);
}

// ---------------------------------------------------------------- spatial operators

TEST_CASE("near") {
  BitMask centre(3, 3);
  centre.set(1, 1, true);
  CHECK(op_near(centre, Adjacency::kFour) == mask_from({".#.", "###", ".#."}));
  CHECK(op_near(centre, Adjacency::kEight) == BitMask(3, 3, true));
  CHECK(op_near(BitMask(4, 4), Adjacency::kFour).empty());
  CHECK(op_near(BitMask(4, 4, true), Adjacency::kFour) == BitMask(4, 4, true));
}

TEST_CASE("near satisfies the closure axioms") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const BitMask a = random_mask(rng, 12, 9, rng.uniform() * 0.5);
    const BitMask b = random_mask(rng, 12, 9, rng.uniform() * 0.5);
    for (auto adj : {Adjacency::kFour, Adjacency::kEight}) {
      CHECK(a.subset_of(op_near(a, adj)));
      CHECK(op_near(a | b, adj) == (op_near(a, adj) | op_near(b, adj)));
    }
  }
}

TEST_CASE("interior") {
  CHECK(op_interior(BitMask(3, 3, true), Adjacency::kFour) == mask_from({"...", ".#.", "..."}));
  CHECK(op_interior(BitMask(3, 3), Adjacency::kFour).empty());
  CHECK(op_interior(BitMask(1, 1, true), Adjacency::kEight).empty());
}

TEST_CASE("interior is the dual of near") {
  // Pixels beyond the border count as outside `a`, so the complement lives on
  // a universe padded with one ring of off pixels; crop back afterwards.
  auto pad = [](const BitMask& m) {
    BitMask out(m.width() + 2, m.height() + 2);
    for (int y = 0; y < m.height(); ++y)
      for (int x = 0; x < m.width(); ++x) out.set(x + 1, y + 1, m.get(x, y));
    return out;
  };
  auto crop = [](const BitMask& m) {
    BitMask out(m.width() - 2, m.height() - 2);
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x) out.set(x, y, m.get(x + 1, y + 1));
    return out;
  };
  Rng rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const BitMask a = random_mask(rng, 10, 10, rng.uniform());
    for (auto adj : {Adjacency::kFour, Adjacency::kEight}) {
      CHECK(op_interior(a, adj) == crop(op_near(pad(a).complement(), adj).complement()));
      // Away from the border the plain in-image duality holds as well.
      const BitMask plain = op_near(a.complement(), adj).complement();
      const BitMask got = op_interior(a, adj);
      for (int y = 1; y < 9; ++y)
        for (int x = 1; x < 9; ++x) CHECK(got.get(x, y) == plain.get(x, y));
    }
  }
}

TEST_CASE("connected_components numbering") {
  const BitMask two = mask_from({"#..", "..#"});
  const auto lab = connected_components(two, Adjacency::kFour);
  CHECK(lab.count == 2);
  CHECK(lab.at(0, 0) == 1);
  CHECK(lab.at(2, 1) == 2);
  CHECK(lab.at(1, 0) == 0);

  const auto empty = connected_components(BitMask(5, 5), Adjacency::kFour);
  CHECK(empty.count == 0);
  for (auto id : empty.ids) CHECK(id == 0);

  const BitMask diag = mask_from({"#.", ".#"});
  CHECK(connected_components(diag, Adjacency::kFour).count == 2);
  CHECK(connected_components(diag, Adjacency::kEight).count == 1);
}

TEST_CASE("connected_components matches the union-find partition") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const BitMask a = random_mask(rng, 32, 32, 0.3 + 0.4 * rng.uniform());
    for (auto adj : {Adjacency::kFour, Adjacency::kEight}) {
      const auto lab = connected_components(a, adj);
      const auto rep = oracle::union_find_components(a, adj == Adjacency::kEight);
      std::map<std::size_t, std::uint32_t> rep_to_id;
      std::map<std::uint32_t, std::size_t> id_to_rep;
      std::uint32_t next_expected = 1;
      bool consistent = true;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.at(i)) {
          consistent &= lab.ids[i] == 0;
          continue;
        }
        auto [it, fresh] = rep_to_id.emplace(rep[i], lab.ids[i]);
        if (fresh) {
          // ids appear in scan order of first pixel
          consistent &= lab.ids[i] == next_expected++;
          consistent &= id_to_rep.emplace(lab.ids[i], rep[i]).second;
        } else {
          consistent &= it->second == lab.ids[i];
        }
      }
      CHECK(consistent);
      CHECK(lab.count == rep_to_id.size());
    }
  }
}

TEST_CASE("touch") {
  const BitMask a = mask_from({"##..#", "##..#", "....#"});
  const BitMask b = mask_from({".....", ".#...", "....."});
  CHECK(op_touch(a, b, Adjacency::kFour) == mask_from({"##...", "##...", "....."}));
  CHECK(op_touch(a, BitMask(5, 3), Adjacency::kFour).empty());
}

TEST_CASE("touch properties against the component oracle") {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const BitMask a = random_mask(rng, 16, 16, 0.55);
    const BitMask b = random_mask(rng, 16, 16, 0.02);
    const BitMask b2 = b | random_mask(rng, 16, 16, 0.02);
    const BitMask t = op_touch(a, b, Adjacency::kFour);

    const auto rep = oracle::union_find_components(a, false);
    std::set<std::size_t> hit;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.at(i) && b.at(i)) hit.insert(rep[i]);
    BitMask expected(16, 16);
    for (std::size_t i = 0; i < a.size(); ++i) expected.set_at(i, a.at(i) && hit.count(rep[i]));

    CHECK(t == expected);
    CHECK(t.subset_of(a));
    CHECK(op_touch(t, b, Adjacency::kFour) == t);
    CHECK(t.subset_of(op_touch(a, b2, Adjacency::kFour)));
  }
}

TEST_CASE("dt basics") {
  const auto empty = op_dt(BitMask(3, 3));
  for (double v : empty.values()) CHECK(v == kInfinity);

  BitMask corner(3, 3);
  corner.set(0, 0, true);
  const auto d = op_dt(corner);
  CHECK(d.get(0, 0) == 0.0);
  CHECK(d.get(2, 2) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(d.get(2, 2) == std::sqrt(8.0));
  CHECK(d.get(2, 0) == 2.0);
}

TEST_CASE("dt is exact against brute force") {
  Rng rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const double density = 0.01 + 0.98 * trial / 199.0;
    const int w = 1 + static_cast<int>(rng.below(40));
    const int h = 1 + static_cast<int>(rng.below(40));
    const BitMask a = random_mask(rng, w, h, density);
    const auto got = squared_dt(a);
    const auto want = oracle::brute_force_squared_dt(a);
    REQUIRE(got.size() == want.size());
    bool same = true;
    for (std::size_t i = 0; i < got.size(); ++i)
      same &= (want[i] == oracle::kNone) ? got[i] == kNoSite : got[i] == want[i];
    CHECK(same);
  }
}

TEST_CASE("gdt") {
  BitMask corridor(7, 1, true);
  BitMask src(7, 1);
  src.set(0, 0, true);
  const auto g = op_gdt(corridor, src, Adjacency::kFour);
  CHECK(g.get(6, 0) == 6.0);

  const auto none = op_gdt(corridor, BitMask(7, 1), Adjacency::kFour);
  for (double v : none.values()) CHECK(v == kInfinity);

  BitMask space = mask_from({"###", "..#", "###"});
  BitMask s(3, 3);
  s.set(0, 0, true);
  const auto gs = op_gdt(space, s, Adjacency::kFour);
  CHECK(gs.get(0, 2) == 6.0);
  CHECK(gs.get(0, 1) == kInfinity);
}

TEST_CASE("gdt matches BFS and dominates dt") {
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    const BitMask space = random_mask(rng, 24, 24, 0.7);
    const BitMask src = random_mask(rng, 24, 24, 0.01);
    const auto g = op_gdt(space, src, Adjacency::kFour);
    const auto want = oracle::bfs_distances(space, src);
    const auto d = op_dt(src & space);
    bool same = true;
    bool dominates = true;
    for (std::size_t i = 0; i < want.size(); ++i) {
      same &= want[i] < 0 ? g.at(i) == kInfinity : g.at(i) == static_cast<double>(want[i]);
      if (g.at(i) != kInfinity && d.at(i) != kInfinity) dominates &= g.at(i) >= d.at(i);
    }
    CHECK(same);
    CHECK(dominates);
  }
}

TEST_CASE("minval") {
  ScalarField f(3, 1);
  f.set(0, 0, 3.0);
  f.set(2, 0, 5.0);
  CHECK(op_minval(f) == 3.0);
  CHECK_THROWS_AS(op_minval(ScalarField(2, 2)), EvalError);
  BitMask a(4, 4);
  a.set(2, 1, true);
  CHECK(op_minval(op_dt(a)) == 0.0);
}

// ---------------------------------------------------------------- evaluator

TEST_CASE("evaluate: identity and params") {
  Rng rng(40);
  EvalContext ctx;
  ctx.channels.push_back(random_mask(rng, 8, 8, 0.5));
  const auto out = evaluate(parse_source("save \"l\" channel(0)"), ctx);
  CHECK(out.at("l") == ctx.channels[0]);

  const auto prog = parse_source("save \"l\" dt(channel(0)) <= D");
  CHECK_THROWS_AS(evaluate(prog, ctx), EvalError);
  ctx.params["D"] = 1.0;
  CHECK(evaluate(prog, ctx).at("l") == op_near(ctx.channels[0], Adjacency::kFour));

  CHECK_THROWS_AS(evaluate(parse_source("save \"l\" channel(1)"), ctx), EvalError);
  CHECK_THROWS_AS(evaluate(parse_source("save \"l\" channel(0.5)"), ctx), EvalError);
  CHECK_THROWS_AS(evaluate(parse_source("save \"l\" dt(channel(0)) <= minval(dt(!channel(0) & channel(0)))"), ctx),
                  EvalError);
}

TEST_CASE("evaluate: infinite distances compare false against finite bounds") {
  EvalContext ctx;
  ctx.channels.push_back(mask_from({"#.#", "#.#"}));  // walls
  ctx.channels.push_back(mask_from({".#.", "..."}));  // entry
  ctx.params["tol"] = 0;
  const auto prog = parse_source(
      "let fs = !channel(0)\nlet g = gdt(fs, channel(1)) - gdt(fs, channel(1))\nsave \"l\" g <= tol");
  CHECK(evaluate(prog, ctx).at("l") == mask_from({".#.", ".#."}));
}

TEST_CASE("evaluate: memoization evaluates each let once and changes nothing") {
  const auto prog = parse_source(
      "let fs = !channel(0)\n"
      "let a = gdt(fs, channel(1))\n"
      "let total = a + a + gdt(fs, channel(2))\n"
      "save \"x\" total <= minval(total) + tol\n"
      "save \"y\" touch(fs, channel(1)) & total > minval(total)\n");
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    EvalContext ctx;
    ctx.channels.push_back(random_mask(rng, 16, 16, 0.3));
    ctx.channels.push_back(random_mask(rng, 16, 16, 0.02));
    ctx.channels.push_back(random_mask(rng, 16, 16, 0.02));
    ctx.channels[1].set(0, 0, true);
    ctx.channels[2].set(0, 0, true);
    ctx.channels[0].set(0, 0, false);
    ctx.params["tol"] = static_cast<double>(rng.below(3));
    EvalStats memo_stats;
    EvalStats plain_stats;
    const auto memo = evaluate(prog, ctx, {.memoize = true}, &memo_stats);
    const auto plain = evaluate(prog, ctx, {.memoize = false}, &plain_stats);
    CHECK(memo == plain);
    CHECK(memo_stats.let_evaluations == 3);
    CHECK(plain_stats.let_evaluations > 3);
  }
}

TEST_CASE("evaluate: context validation") {
  EvalContext ctx;
  CHECK_THROWS_AS(evaluate(parse_source("save \"l\" channel(0)"), ctx), ValidationError);
  ctx.channels.push_back(BitMask(4, 4));
  ctx.channels.push_back(BitMask(5, 4));
  CHECK_THROWS_AS(evaluate(parse_source("save \"l\" channel(0)"), ctx), ValidationError);
}
