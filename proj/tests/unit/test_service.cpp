#include "ahpfse/document.hpp"
#include "ahpfse/json_io.hpp"
#include "ahpfse/service.hpp"

#include "cli.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <sstream>
#include <thread>

using namespace ahpfse;
using nlohmann::json;

namespace {

std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cli::run(args, out, err), 0) << err.str();
  return out.str();
}

std::string edit_body(const std::string& value, const std::string& revision) {
  return json{{"value", value}, {"revision", revision}}.dump();
}

}  // namespace

TEST(Service, ScenarioViewMatchesLibrary) {
  ScenarioService svc(paper_dataset());
  const auto r = svc.get_scenario();
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["revision"], "r1");
  EXPECT_EQ(r.body["dirty"], false);
  const Scenario s(paper_dataset());
  ASSERT_EQ(r.body["periods"].size(), 3u);
  for (std::size_t p = 0; p < 3; ++p) {
    EXPECT_EQ(r.body["periods"][p], period_json(s.periods()[p]));
  }
}

TEST(Service, EvaluateEqualsCli) {
  ScenarioService svc(paper_dataset());
  for (const char* period : {"golden", "early", "late"}) {
    const auto r = svc.post_evaluate(period);
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(r.text() + "\n", cli_out({"rank", "--paper", "--period", period, "--format", "json"}));
  }
  EXPECT_EQ(svc.post_evaluate("nope").status, 404);
}

TEST(Service, WhatIfEqualsLibraryAndLeavesScenarioUntouched) {
  ScenarioService svc(paper_dataset());
  const auto before = svc.get_scenario().text();
  const std::string body = R"({"kind":"scale_requantize","period":"golden","remap":"upward","label":"golden requantize upward"})";
  const auto r = svc.post_whatif(body);
  ASSERT_EQ(r.status, 200) << r.text();
  const Scenario s(paper_dataset());
  const auto expected = analyze(s, perturbation_from_json(json::parse(body), 6));
  EXPECT_EQ(r.body, to_json(expected));
  EXPECT_EQ(svc.get_scenario().text(), before);

  EXPECT_EQ(svc.post_whatif("{").status, 400);
  EXPECT_EQ(svc.post_whatif(R"({"kind":"entry_edit","period":"golden","i":1,"j":1,"value":3})").status, 400);
  EXPECT_EQ(svc.get_scenario().text(), before);
}

TEST(Service, EditRederivesAndEqualsLibrary) {
  ScenarioService svc(paper_dataset());
  const auto r = svc.put_judgment("golden", "1", "2", edit_body("3", "r1"));
  ASSERT_EQ(r.status, 200) << r.text();
  EXPECT_EQ(r.body["revision"], "r2");
  EXPECT_EQ(r.body["dirty"], true);
  const Scenario s(paper_dataset());
  const auto expected = s.with_period_matrix("golden", s.period("golden").matrix().with_entry(0, 1, Judgment::exact(3)));
  auto got = r.body;
  got.erase("revision");
  got.erase("dirty");
  EXPECT_EQ(got, period_json(expected.period("golden")));
  EXPECT_EQ(svc.post_evaluate("golden").body, to_json(expected.rank("golden")));
}

TEST(Service, EditErrors) {
  ScenarioService svc(paper_dataset());
  EXPECT_EQ(svc.put_judgment("golden", "1", "2", edit_body("10", "r1")).status, 400);
  EXPECT_EQ(svc.put_judgment("golden", "1", "2", edit_body("2/3", "r1")).status, 400);
  EXPECT_EQ(svc.put_judgment("golden", "2", "2", edit_body("3", "r1")).status, 400);
  EXPECT_EQ(svc.put_judgment("golden", "0", "2", edit_body("3", "r1")).status, 400);
  EXPECT_EQ(svc.put_judgment("golden", "1", "7", edit_body("3", "r1")).status, 400);
  EXPECT_EQ(svc.put_judgment("nope", "1", "2", edit_body("3", "r1")).status, 404);
  EXPECT_EQ(svc.put_judgment("golden", "1", "2", R"({"value": 3})").status, 400);
  EXPECT_EQ(svc.put_judgment("golden", "1", "2", "not json").status, 400);
  const auto stale = svc.put_judgment("golden", "1", "2", edit_body("3", "r0"));
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(stale.body["error"], "stale_revision");
  EXPECT_EQ(stale.body["path"], "/revision");
  EXPECT_EQ(svc.revision(), "r1");
}

TEST(Service, UndoRestoresPreviousMatrix) {
  ScenarioService svc(paper_dataset());
  const auto original = svc.get_scenario().body["periods"];
  EXPECT_EQ(svc.post_undo("{}").status, 409);
  ASSERT_EQ(svc.put_judgment("early", "2", "5", edit_body("1/4", "r1")).status, 200);
  ASSERT_EQ(svc.put_judgment("early", "1", "3", edit_body("5", "r2")).status, 200);
  EXPECT_EQ(svc.post_undo(R"({"revision":"r2"})").status, 409);
  EXPECT_EQ(svc.post_undo(R"({"revision":"r3"})").status, 200);
  EXPECT_EQ(svc.post_undo("{}").status, 200);
  const auto now = svc.get_scenario();
  EXPECT_EQ(now.body["periods"], original);
  EXPECT_EQ(now.body["dirty"], false);
  EXPECT_EQ(now.body["revision"], "r5");
}

TEST(Service, UndoStackIsBounded) {
  ScenarioService svc(paper_dataset(), ServiceOptions{3});
  for (int k = 0; k < 5; ++k) {
    ASSERT_EQ(svc.put_judgment("golden", "1", "2", edit_body(k % 2 ? "3" : "4", svc.revision())).status, 200);
  }
  EXPECT_EQ(svc.get_scenario().body["undo_depth"], 3);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(svc.post_undo("{}").status, 200);
  EXPECT_EQ(svc.post_undo("{}").status, 409);
  EXPECT_EQ(svc.get_scenario().body["dirty"], true);
}

TEST(Service, ConcurrentEditsWithSameRevision) {
  for (int round = 0; round < 20; ++round) {
    ScenarioService svc(paper_dataset());
    std::atomic<int> ok{0};
    std::atomic<int> conflict{0};
    auto writer = [&](const char* value) {
      const auto r = svc.put_judgment("golden", "1", "2", edit_body(value, "r1"));
      (r.status == 200 ? ok : conflict)++;
    };
    std::thread a(writer, "3");
    std::thread b(writer, "4");
    a.join();
    b.join();
    EXPECT_EQ(ok.load(), 1);
    EXPECT_EQ(conflict.load(), 1);
  }
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    frontend_ = std::make_unique<HttpFrontend>(service_);
    port_ = frontend_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { frontend_->listen(); });
    while (!frontend_->running()) std::this_thread::yield();
  }
  void TearDown() override {
    frontend_->stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

  ScenarioService service_{paper_dataset()};
  std::unique_ptr<HttpFrontend> frontend_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpTest, ResponsesEqualServiceAndCli) {
  auto c = client();
  const auto scenario = c.Get("/api/scenario");
  ASSERT_TRUE(scenario);
  EXPECT_EQ(scenario->status, 200);
  EXPECT_EQ(scenario->body, service_.get_scenario().text());
  EXPECT_EQ(scenario->get_header_value("Content-Type"), "application/json");

  for (const char* period : {"golden", "early", "late"}) {
    const auto r = c.Post(std::string("/api/periods/") + period + "/evaluate", "", "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->body + "\n", cli_out({"rank", "--paper", "--period", period, "--format", "json"}));
  }
}

TEST_F(HttpTest, WhatIfLeavesScenarioByteIdentical) {
  auto c = client();
  const auto before = c.Get("/api/scenario")->body;
  const auto r = c.Post("/api/whatif", R"({"kind":"criterion_remove","criterion":"cost"})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(c.Get("/api/scenario")->body, before);
}

TEST_F(HttpTest, EditUndoAndErrors) {
  auto c = client();
  auto r = c.Put("/api/periods/golden/judgments/1/2", edit_body("4", "r1"), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200) << r->body;
  r = c.Put("/api/periods/golden/judgments/1/2", edit_body("4", "r1"), "application/json");
  EXPECT_EQ(r->status, 409);
  EXPECT_EQ(json::parse(r->body)["error"], "stale_revision");
  r = c.Put("/api/periods/nope/judgments/1/2", edit_body("4", "r2"), "application/json");
  EXPECT_EQ(r->status, 404);
  r = c.Post("/api/undo", "", "application/json");
  EXPECT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(json::parse(c.Get("/api/scenario")->body)["dirty"], false);
}

TEST_F(HttpTest, RacingWritesYieldOneSuccessAndOneConflict) {
  for (int round = 0; round < 10; ++round) {
    const std::string revision = service_.revision();
    std::atomic<int> ok{0};
    std::atomic<int> conflict{0};
    auto writer = [&](const char* value) {
      auto c = client();
      const auto r = c.Put("/api/periods/early/judgments/2/3", edit_body(value, revision), "application/json");
      if (r && r->status == 200) ok++;
      if (r && r->status == 409) conflict++;
    };
    std::thread a(writer, round % 2 ? "2" : "3");
    std::thread b(writer, round % 2 ? "5" : "6");
    a.join();
    b.join();
    EXPECT_EQ(ok.load(), 1);
    EXPECT_EQ(conflict.load(), 1);
  }
}
