#include "fixtures.hpp"

#include "pcmk/commands.hpp"
#include "pcmk/io.hpp"

#include <gtest/gtest.h>

using namespace pcmk;
using namespace pcmk::testing;

namespace {

const char* kSingleAtom = R"({
  "version": "1",
  "cone": "Q2",
  "weight": {"kind": "height-power", "q": 1.5},
  "measure": [{"direction": [-1, -1], "mass": 1}]
})";

std::string parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidInput) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "parsed: " << text;
  return {};
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

RunOptions quiet() {
  RunOptions o;
  o.timing = false;
  return o;
}

}  // namespace

TEST(Parse, SingleAtom) {
  const Problem p = parse_problem(kSingleAtom);
  EXPECT_EQ(p.cone->dim(), 2);
  ASSERT_TRUE(p.weight.has_value());
  EXPECT_EQ(p.weight->q, 1.5);
  ASSERT_EQ(p.measure.size(), 1u);
  EXPECT_NEAR(p.measure[0].direction.norm(), 1.0, 1e-15);
  EXPECT_FALSE(p.body.has_value());
  EXPECT_EQ(p.solver.tolerance, SolverOptions::defaults_for(2).tolerance);
}

TEST(Parse, SyntaxErrorHasPosition) {
  const std::string msg = parse_error("{\n  \"version\": \"1\",\n  \"cone\": \"Q2\",,\n}");
  EXPECT_TRUE(contains(msg, "line 3")) << msg;
  EXPECT_TRUE(contains(msg, "column")) << msg;
}

TEST(Parse, FieldErrorsHavePaths) {
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "1.5", "\"x\"")), "$.weight.q")) ;
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "[-1, -1]", "[-1]")), "$.measure[0].direction"));
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "\"mass\"", "\"weight\"")), "$.measure[0]"));
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "\"version\": \"1\"", "\"version\": \"2\"")), "version"));
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "\"Q2\"", "\"Q7\"")), "$.cone"));
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "\"cone\"", "\"extra\": 1, \"cone\"")), "extra"));
  parse_error("[1, 2]");
}

TEST(Parse, InvalidMeasureIsInvalidInput) {
  const std::string dup = replace(kSingleAtom, "\"mass\": 1}", "\"mass\": 1}, {\"direction\": [-2, -2], \"mass\": 1}");
  EXPECT_TRUE(contains(parse_error(dup), "DuplicateDirection"));
  EXPECT_TRUE(contains(parse_error(replace(kSingleAtom, "[-1, -1]", "[-1, 0]")), "$.measure"));
}

TEST(Parse, ConeForms) {
  const Problem a = parse_problem(replace(kSingleAtom, "\"Q2\"", R"({"dim": 2, "rays": [[1, 0], [0, 1]]})"));
  const Problem b =
      parse_problem(replace(kSingleAtom, "\"Q2\"", R"({"dim": 2, "facet_normals": [[-1, 0], [0, -1]]})"));
  EXPECT_NEAR((a.cone->v_frak() - b.cone->v_frak()).norm(), 0.0, 1e-15);
  parse_error(replace(kSingleAtom, "\"Q2\"", R"({"dim": 2, "rays": [[1, 0], [0, 1]], "facet_normals": [[-1, 0], [0, -1]]})"));
}

TEST(Parse, ProblemRoundTrip) {
  const Problem p = parse_problem(kSingleAtom);
  const std::string once = dump_json(p.to_json());
  const std::string twice = dump_json(parse_problem(once).to_json());
  EXPECT_EQ(once, twice);
}

TEST(Parse, ReportIsAcceptedAsProblem) {
  const CommandResult r = cmd_solve(parse_problem(kSingleAtom), quiet());
  ASSERT_EQ(r.exit_code, kExitOk) << r.diagnostic;
  const std::string text = dump_json(r.report);
  const CommandResult again = cmd_solve(parse_problem(text), quiet());
  EXPECT_EQ(dump_json(again.report), text);
}

TEST(Dump, NumbersAndSpecialValues) {
  Json j = Json::object();
  j["third"] = 1.0 / 3.0;
  j["nan"] = std::nan("");
  j["negzero"] = -0.0;
  j["list"] = doubles_json({1.0, 2.5});
  const std::string s = dump_json(j);
  EXPECT_TRUE(contains(s, "0.33333333333333331")) << s;
  EXPECT_TRUE(contains(s, "\"nan\": null")) << s;
  EXPECT_FALSE(contains(s, "-0")) << s;
  EXPECT_DOUBLE_EQ(Json::parse(s)["third"].get<double>(), 1.0 / 3.0);
}

TEST(Svg, BoundaryChainOrder) {
  const TruncatedBody tb = truncate(q2_slab(1.0), 2.0);
  const auto chain = boundary_chain(quadrant_cone(), tb);
  ASSERT_EQ(chain.size(), 4u);
  // Slab line x + y = √2, cap x + y = 2√2.
  const double s = std::sqrt(2.0), c = 2.0 * s;
  EXPECT_NEAR((chain[0] - vec2(c, 0)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((chain[1] - vec2(s, 0)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((chain[2] - vec2(0, s)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((chain[3] - vec2(0, c)).norm(), 0.0, 1e-12);
}

TEST(Svg, OverlayHasOnePolylinePerBody) {
  const std::string svg =
      svg_overlay(quadrant_cone(), {truncate(q2_slab(1.0), 2.0), truncate(three_facet_q2(), 2.0)}, 2.0);
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  EXPECT_EQ(count, 2u);
  EXPECT_TRUE(contains(svg, "<svg"));
  EXPECT_TRUE(contains(svg, "</svg>"));
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code_for(Errc::InvalidExponent), kExitInvalidInput);
  EXPECT_EQ(exit_code_for(Errc::DuplicateDirection), kExitInvalidInput);
  EXPECT_EQ(exit_code_for(Errc::OutsideDualInterior), kExitInvalidInput);
  EXPECT_EQ(exit_code_for(Errc::NotConverged), kExitNotConverged);
  EXPECT_EQ(exit_code_for(Errc::BoundViolation), kExitVerification);
  EXPECT_EQ(exit_code_for(Errc::ToleranceNotMet), kExitVerification);
  EXPECT_EQ(exit_code_for(Errc::DegeneratePolygon), kExitInternal);
}

TEST(Commands, SolveRejectsExponentOutsideRange) {
  const Problem p = parse_problem(replace(kSingleAtom, "1.5", "2.5"));
  const CommandResult r = guarded([&] { return cmd_solve(p, quiet()); });
  EXPECT_EQ(r.exit_code, kExitInvalidInput);
  EXPECT_TRUE(contains(r.diagnostic, "InvalidExponent")) << r.diagnostic;
}

TEST(Commands, EvaluateSlackBody) {
  const Problem p = parse_problem(R"({
    "version": "1", "cone": "Q2",
    "weight": {"kind": "height-power", "q": 1.5},
    "body": {"directions": [[-1, -1], [-1, -2]], "support_numbers": [1, 0.1]}
  })");
  const CommandResult slack = cmd_evaluate(p, quiet());
  EXPECT_EQ(slack.exit_code, kExitOk);
  const Json& cov = slack.report["result"]["covolume"];
  EXPECT_TRUE(cov["euler"].is_null());
  EXPECT_NEAR(cov["radial"].get<double>(), 4.0, 1e-10);
  EXPECT_FALSE(slack.diagnostic.empty());

  RunOptions o = quiet();
  o.tighten = true;
  const CommandResult tight = cmd_evaluate(p, o);
  EXPECT_EQ(tight.exit_code, kExitOk);
  EXPECT_NEAR(tight.report["result"]["covolume"]["euler"].get<double>(), 4.0, 1e-12);
}

TEST(Commands, ReportsAreDeterministic) {
  const Problem p = parse_problem(kSingleAtom);
  RunOptions o = quiet();
  o.suite = "mc";
  o.samples = 20000;
  o.seed = 3;
  const Problem body = parse_problem(R"({
    "version": "1", "cone": "Q2",
    "weight": {"kind": "radial-power", "q": 1.5},
    "body": {"directions": [[-1, -1]], "support_numbers": [1]}
  })");
  EXPECT_EQ(dump_json(cmd_verify(body, o).report), dump_json(cmd_verify(body, o).report));
  EXPECT_EQ(dump_json(cmd_solve(p, quiet()).report), dump_json(cmd_solve(p, quiet()).report));
}

TEST(Commands, DemoQuadrant) {
  RunOptions o = quiet();
  const CommandResult r = cmd_demo_nonuniqueness(demo_problem("Q2", "height-power", 1.5), o);
  EXPECT_EQ(r.exit_code, kExitOk) << r.diagnostic;
  EXPECT_NEAR(r.report["result"]["t0"].get<double>(), 4.0, 1e-12);
  EXPECT_TRUE(contains(r.svg, "<polyline"));
}
