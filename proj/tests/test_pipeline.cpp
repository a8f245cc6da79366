#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ovs;

namespace {

NetDocument load(const std::string& file) { return parse_net(test::read_file(test::net_path(file))); }

}  // namespace

TEST(Pipeline, TwoMachinesSucceeds) {
  const auto r = run_pipeline(load("two_machines.pnet"));
  ASSERT_TRUE(r.ok()) << (r.error ? r.error->message : "");
  EXPECT_EQ(test::names(r.plant, r.b4), (std::vector<std::string>{"P2P7", "P4P6"}));
  EXPECT_TRUE(r.closed_loop->isomorphic);
  EXPECT_EQ(r.controlled->name(), "two_machines_controlled");
}

TEST(Pipeline, ReportIsDeterministic) {
  const auto a = report_json(run_pipeline(load("two_machines.pnet")), false).dump();
  const auto b = report_json(run_pipeline(load("two_machines.pnet")), false).dump();
  EXPECT_EQ(a, b);
  const auto ta = report_text(run_pipeline(load("two_machines.pnet")), false);
  EXPECT_EQ(ta, report_text(run_pipeline(load("two_machines.pnet")), false));
}

TEST(Pipeline, TextAndJsonCarryTheSameValues) {
  const auto r = run_pipeline(load("two_machines.pnet"));
  const auto j = report_json(r);
  const auto text = report_text(r);
  EXPECT_EQ(j["partition"]["counts"]["M_R"], 12);
  EXPECT_EQ(j["synthesis"]["W_C"], nlohmann::json::parse("[[-1,0,0,0,1],[0,1,-1,1,-1]]"));
  EXPECT_NE(text.find("W_C: [[-1, 0, 0, 0, 1], [0, 1, -1, 1, -1]]"), std::string::npos) << text;
  EXPECT_NE(text.find("M_C0: [1, 0]"), std::string::npos);
  EXPECT_NE(text.find("B3: [P2P4, P2P5, P2P7, P4P6]"), std::string::npos);
  EXPECT_NE(text.find("isomorphic: true"), std::string::npos);
  EXPECT_TRUE(j.contains("timings_ms"));
  EXPECT_FALSE(report_json(r, false).contains("timings_ms"));
}

TEST(Pipeline, NoForbiddenStatesNeedsNoConstraints) {
  auto doc = load("two_machines.pnet");
  doc.bad.expr = PlaceExpr::parse("false", doc.net);
  const auto r = run_pipeline(doc);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.constraints.empty());
  EXPECT_EQ(r.controlled->place_count(), 7u);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("no constraints needed"), std::string::npos);
  EXPECT_EQ(r.closed_loop->state_count(), 12u);
}

TEST(Pipeline, InitialMarkingForbidden) {
  const auto r = run_pipeline(load("initial_forbidden.pnet"));
  EXPECT_EQ(r.exit_code, exit_code::kSynthesisImpossible);
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.error->stage, "partition");
  EXPECT_EQ(r.error->code, ErrorCode::InitialStateForbidden);
}

TEST(Pipeline, NonConservativeNetNeedsFallback) {
  auto doc = load("non_conservative.pnet");
  const auto strict = run_pipeline(doc);
  EXPECT_EQ(strict.exit_code, exit_code::kProperty3Failure);
  EXPECT_FALSE(strict.property3.holds);
  ASSERT_EQ(strict.property3.uncovered.size(), 1u);

  doc.options.fallback = true;
  const auto fb = run_pipeline(doc);
  EXPECT_EQ(fb.exit_code, exit_code::kSuccess);
  EXPECT_TRUE(fb.fallback_used);
  EXPECT_EQ(test::names(fb.plant, fb.b4), (std::vector<std::string>{"A"}));
  EXPECT_FALSE(fb.closed_loop->isomorphic);
  EXPECT_EQ(test::names(fb.plant, fb.closed_loop->missing_authorized), (std::vector<std::string>{"AB"}));
  EXPECT_EQ(report_json(fb)["status"], "fallback");
}

TEST(Pipeline, ExactCoverOption) {
  auto doc = load("two_machines.pnet");
  doc.options.exact_cover = true;
  const auto r = run_pipeline(doc);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.b4.size(), 2u);
}

TEST(Pipeline, StageErrorsAreReported) {
  auto doc = load("two_machines.pnet");
  doc.options.state_budget = 4;
  const auto r = run_pipeline(doc);
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.error->stage, "reachability");
  EXPECT_EQ(r.exit_code, exit_code::kOtherError);

  doc = load("two_machines.pnet");
  doc.options.support_cap = 2;
  const auto capped = run_pipeline(doc);
  ASSERT_TRUE(capped.error);
  EXPECT_EQ(capped.error->code, ErrorCode::SupportCapExceeded);
}

TEST(Pipeline, UnsafePlantIsRejected) {
  const auto doc = parse_net("places A B\ninitial A B\ntransition t controllable { in A ; out B }\n"
                             "forbidden { expr \"false\" }\n");
  const auto r = run_pipeline(doc);
  ASSERT_TRUE(r.error);
  EXPECT_EQ(r.error->code, ErrorCode::SafenessViolation);
}

TEST(Dot, ColorsFollowThePartition) {
  const auto r = run_pipeline(load("two_machines.pnet"));
  const auto dot = to_dot(r.plant, *r.rg, &r.partition->partition);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 2 + 12 + static_cast<long>(r.rg->edges().size()) + 1);
  std::size_t dark = 0, border = 0;
  for (std::size_t pos = 0; (pos = dot.find("fillcolor=gray30", pos)) != std::string::npos; ++pos) ++dark;
  for (std::size_t pos = 0; (pos = dot.find("peripheries=2", pos)) != std::string::npos; ++pos) ++border;
  EXPECT_EQ(dark, 7u);
  EXPECT_EQ(border, 5u);
  EXPECT_NE(dot.find("style=dashed"), std::string::npos);
}

TEST(Pipeline, EmptyBorderStateIsRefused) {
  const std::string text =
      "net drain\nplaces p0 p1\ninitial p0\ntransition t0 controllable { in p0 ; out }\nforbidden { expr \"!p0\" }\n";
  auto doc = parse_net(text);
  const auto strict = run_pipeline(doc);
  EXPECT_EQ(strict.exit_code, exit_code::kProperty3Failure);
  EXPECT_TRUE(strict.b1.empty());
  ASSERT_TRUE(strict.table.has_value());
  EXPECT_EQ(strict.table->cv, std::vector<int>{0});
  doc.options.fallback = true;
  const auto fb = run_pipeline(doc);
  ASSERT_TRUE(fb.error.has_value());
  EXPECT_EQ(fb.error->code, ErrorCode::Property3Violated);
  EXPECT_EQ(fb.exit_code, exit_code::kProperty3Failure);
}
