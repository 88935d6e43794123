#include <doctest.h>

#include <set>

#include "rplace/expr.hpp"
#include "rplace/probes.hpp"
#include "rplace/session.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

// Runs a script and returns the JSON records of the non-empty lines.
std::vector<Json> run_script(Session& s, const std::vector<std::string>& lines) {
  std::vector<Json> out;
  for (const auto& l : lines)
    if (auto r = s.run(l)) out.push_back(r->json);
  return out;
}

Json one(Session& s, const std::string& line) {
  auto r = s.run(line);
  REQUIRE(r.has_value());
  return r->json;
}

Json ok(Session& s, const std::string& line) {
  Json j = one(s, line);
  INFO(line << " -> " << j.dump());
  REQUIRE(j.contains("result"));
  return j["result"];
}

const std::vector<std::string> kSetup{
    "def-field F = hahn(Q; lex 2)",
    "def-field Rc = sub(F; Q; coords 1)",
    "def-field Rn = sub(F; Q; coords 0)",
    "def-elem s = t^((1,0)) in F",
    "def-elem u = t^((0,1)) in F",
};

// Every command of the table, each at least once.
const std::vector<std::string> kCoverage{
    "def-field H = hahn(Q; lex 1)",
    "def-field E = adjoin(H; +inf) as e",
    "def-field Q0 = hahn(Q(sqrt(2)); lex 0)",
    "def-field Qr = sub(Q0; Q; coords)",
    "use F",
    "def-ball B = ball(1; above (0,1))",
    "def-cut c1 = edge(ball(0; above (0,2)), upper)",
    "def-cut c2 = 0+",
    "def-cut r = edge(ball(0; above (1)), upper) in Rc",
    "show B",
    "parse 3*t^(1/2) + u^2",
    "cmp s u",
    "cmp group (1,0) (0,5)",
    "cmp c1 c2",
    "cmp B ball(1; above (0,0))",
    "member B 1+u^2",
    "member c1 s",
    "val s+u",
    "residue 1/(1+u)",
    "expand 1/(1-u) to (0,3)",
    "classify c1",
    "equiv c1 c2",
    "restrict c1 to Rc",
    "fiber r in F",
    "between c2 c1",
    "between around B at 1+u^2 in F",
    "embed exists Rc F",
    "embed cut r from Rc into F",
    "def-cut C = edge(ball(2; above (0)), upper) in H",
    "def-cut D = edge(ball(3; above (0)), lower) in H",
    "def-place P = from-cut C var y",
    "def-place P2 = from-cut D var y",
    "def-place Pr = from-cut r var y",
    "embed place Pr into F",
    "witness nonconvex Rn F",
    "witness principal Rc F",
    "witness distance B (0,0)",
    "witness full-ball B samples 20",
    "witness separate P P2",
    "def-place S = stacked x=0 y=0 order y,x in Qr",
    "def-place I = independent x=0:1 y=0:sqrt(2) in Qr",
    "witness three-case S x y",
    "eval P y^2",
    "eval I y^2/x",
    "eval (x+1)/y at x=1 y=2 in H",
    "harrison P y-2",
    "restrict S to x",
    "probe linear-separation",
};

}  // namespace

TEST_CASE("parse and print") {
  const ExprPtr e = parse_expr("3*t^(1/2) + u^2");
  REQUIRE(e->kind == Expr::Kind::Add);
  CHECK(e->lhs->kind == Expr::Kind::Mul);
  CHECK(e->rhs->kind == Expr::Kind::Pow);
  Session s;
  run_script(s, kSetup);
  const Json j = one(s, "parse 3*t^(1/2) + u^2");
  CHECK(j["result"] == "3*t^(1/2)+u^2");
  CHECK(j["certificates"]["round_trip"] == true);
}

TEST_CASE("cut grammar agrees with direct construction") {
  Towers w;
  Session s;
  run_script(s, kSetup);
  const Cut direct =
      Cut::edge(Ball::make(w.F, w.F.constant(Quad(0)), FinalSegment{GroupCut::above(ge({0, 2}))}), Side::Upper);
  CHECK(ok(s, "def-cut c = cut edge(ball(0; above (0,2)), upper) in F")["cut"] == to_string(direct));
  CHECK(ok(s, "def-cut p = 1/2- in F")["cut"] == to_string(Cut::principal(w.F, w.F.constant(Quad(q(1, 2))), Side::Lower)));
  CHECK(ok(s, "def-cut m = -inf in F")["cut"] == "-inf");
  run_script(s, {"def-field K = hahn(Q(sqrt(2)); lex 1)", "def-field Kq = sub(K; Q; coords 0)"});
  CHECK(ok(s, "def-cut g = filler(sqrt(2), lower, over Kq)")["cut"] == "filler(sqrt(2), lower, over Kq)");
  CHECK(ok(s, "classify g")["kind"] == "non-ball");
}

TEST_CASE("command examples") {
  Session s;
  run_script(s, kSetup);
  run_script(s, {"def-ball B = ball(0; above (0,2)) in F", "def-cut lo = edge(B, lower)", "def-cut hi = edge(B, upper)",
                 "def-cut other = edge(ball(0; above (0,1)), upper) in F"});
  CHECK(ok(s, "equiv lo hi") == true);
  CHECK(ok(s, "equiv hi other") == false);

  run_script(s, {"def-field H = hahn(Q; lex 1)", "def-cut C = edge(ball(2; above (0)), upper) in H",
                 "def-place P = from-cut C var y"});
  CHECK(ok(s, "eval P y^2")["value"] == "4");
  CHECK(ok(s, "eval P 1/(y-2)")["value"] == "inf");
  CHECK(ok(s, "harrison P y-2") == false);
  CHECK(ok(s, "harrison P 2-y+y^2") == true);

  const Json w = ok(s, "witness nonconvex Rn F");
  CHECK(w["ok"] == true);
  CHECK(w["comparison"] == "LT");
  CHECK(w["gamma"] == "(0,1)");
  for (const auto& [k, v] : w["checks"].items()) CHECK_MESSAGE(v == true, k);

  CHECK(ok(s, "cmp group (1,0) (0,5) in F") == "GT");
  CHECK(ok(s, "val 1/(u+s) in F") == "(0,-1)");
  CHECK(ok(s, "val 0 in F") == "inf");
  CHECK(ok(s, "residue 3+u in F") == "3");
  CHECK(ok(s, "residue 1/u in F") == "inf");
  CHECK(ok(s, "embed exists Rc F")["convex"] == true);
  CHECK(ok(s, "embed exists Rn F")["embedding_exists"] == false);
}

TEST_CASE("errors carry codes") {
  Session s;
  run_script(s, kSetup);
  auto code = [&](const std::string& line) { return one(s, line)["error"]["code"].get<std::string>(); };
  CHECK(code("frobnicate") == "unknown-command");
  CHECK(code("val 1/(t^((0,1)) in F") == "syntax");
  CHECK(one(s, "val 1/(t^((0,1)) in F")["error"]["position"] == 17);
  CHECK(code("val zz in F") == "unknown-name");
  CHECK(code("def-elem s = 2 in F") == "duplicate-name");
  CHECK(code("def-elem t = 2 in F") == "reserved-name");
  CHECK(code("val 1/0 in F") == "domain");
  CHECK(code("def-elem v = s in Rc") == "not-in-field");
  CHECK(code("equiv s u") == "syntax");
  CHECK(code("harrison s y") == "wrong-kind");
}

TEST_CASE("comments and blank lines") {
  Session s;
  CHECK_FALSE(s.run("").has_value());
  CHECK_FALSE(s.run("   # only a comment").has_value());
  CHECK(s.run("def-field F = hahn(Q; lex 1)  # trailing comment")->ok);
}

TEST_CASE("every command is reachable") {
  Session s;
  std::vector<std::string> script = kSetup;
  script.insert(script.end(), kCoverage.begin(), kCoverage.end());
  std::set<std::string> seen;
  for (const auto& line : script) {
    auto r = s.run(line);
    REQUIRE(r.has_value());
    CHECK_MESSAGE(r->ok, std::string(line + " -> " + r->json.dump()));
    if (r->ok) seen.insert(r->json["command"].get<std::string>());
  }
  for (const auto& c : Session::commands()) CHECK_MESSAGE(seen.count(c) == 1, c);
}

TEST_CASE("identical scripts give identical output") {
  std::vector<std::string> script = kSetup;
  script.insert(script.end(), kCoverage.begin(), kCoverage.end());
  script.push_back("probe three-case");
  auto dump = [&](std::uint64_t seed) {
    Session s(SessionOptions{seed, kDefaultMaxSteps});
    std::string out;
    for (const auto& j : run_script(s, script)) out += j.dump() + "\n";
    return out;
  };
  const std::string a = dump(7);
  CHECK(a == dump(7));
  CHECK(a != dump(8));  // full-ball samples and the probe depend on the seed
}

TEST_CASE("printed balls and cuts parse back") {
  Towers w;
  Session s;
  run_script(s, kSetup);
  run_script(s, {"def-field K = hahn(Q(sqrt(2)); lex 1)", "def-field Kq = sub(K; Q; coords 0)"});
  Gen g(71);
  int n = 0;
  for (int i = 0; i < 300; ++i) {
    const Ball B = random_ball(g, w.F);
    const std::string bs = to_string(B);
    CHECK(ok(s, "def-ball b" + std::to_string(i) + " = " + bs + " in F")["ball"] == bs);
    if (B.is_whole()) continue;
    const Cut C = Cut::edge(B, g.coin() ? Side::Lower : Side::Upper);
    const std::string cs = to_string(C);
    CHECK(ok(s, "def-cut c" + std::to_string(i) + " = " + cs + " in F")["cut"] == cs);
    ++n;
  }
  CHECK(n >= 200);
  for (int i = 0; i < 50; ++i) {
    const Quad c(g.rational(), g.nonzero_rational(), 2);
    const Cut C = Cut::filler(w.Kq, FieldElement(w.K, c), g.coin() ? Side::Lower : Side::Upper);
    const std::string cs = to_string(C);
    CHECK(ok(s, "def-cut f" + std::to_string(i) + " = " + cs)["cut"] == cs);
  }
}
