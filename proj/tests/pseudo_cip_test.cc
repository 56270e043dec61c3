// Copyright 2026 The cipkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cipkit/pseudo_cip.h"

#include <gtest/gtest.h>

#include <thread>

#include "cipkit/error.h"
#include "httplib.h"
#include "json.hpp"
#include "test_util.h"

namespace cipkit {
namespace {

using testing::FixtureLexicon;
using testing::kMendEnglish;
using testing::kMendSource;
using testing::kMendTarget;

CipPair MakePair(const std::string& id, const std::string& source) {
  CipPair p;
  p.id = id;
  p.source = source;
  p.target = "t" + id;
  p.idioms = DetectIdioms(source, FixtureLexicon());
  return p;
}

TEST(BuildPseudoPairsTest, MendExample) {
  MockTranslator mt(std::map<std::string, std::string>{{kMendEnglish, kMendTarget}});
  const auto result = BuildPseudoPairs({{"t1", kMendSource, kMendEnglish}},
                                       mt, FixtureLexicon());
  ASSERT_EQ(result.pairs.size(), 1u);
  const CipPair& p = result.pairs[0];
  EXPECT_EQ(p.source, kMendSource);
  EXPECT_EQ(p.target, kMendTarget);
  EXPECT_EQ(p.status, PairStatus::kMachine);
  ASSERT_EQ(p.idioms.size(), 1u);
  EXPECT_EQ(p.idioms[0].idiom, "亡羊补牢");
  EXPECT_EQ(result.report.flagged, 0u);
}

TEST(BuildPseudoPairsTest, EchoedIdiomIsFlagged) {
  MockTranslator mt(std::map<std::string, std::string>{{"e", "他以牙还牙"}});
  const auto result =
      BuildPseudoPairs({{"1", "他以牙还牙了", "e"}}, mt, FixtureLexicon());
  ASSERT_EQ(result.pairs.size(), 1u);
  EXPECT_EQ(result.pairs[0].status, PairStatus::kFlagged);
  EXPECT_EQ(result.report.flagged, 1u);
}

TEST(BuildPseudoPairsTest, OneEchoInTenIsTenPercent) {
  std::map<std::string, std::string> table;
  std::vector<ParallelPair> d2;
  for (int i = 0; i < 10; ++i) {
    const std::string en = "en" + std::to_string(i);
    d2.push_back({std::to_string(i), "他深居简出" + std::to_string(i), en});
    table[en] = i == 3 ? "他深居简出" : "他很少出门";
  }
  const auto result = BuildPseudoPairs(d2, MockTranslator(table),
                                       FixtureLexicon(), 4);
  EXPECT_EQ(result.report.built, 10u);
  EXPECT_DOUBLE_EQ(result.report.flagged_fraction(), 0.1);
  for (std::size_t i = 0; i < d2.size(); ++i) {
    EXPECT_EQ(result.pairs[i].id, d2[i].id);
  }
}

TEST(BuildPseudoPairsTest, TranslatorFailureBecomesError) {
  MockTranslator mt(std::map<std::string, std::string>{{"a", "好的"}});
  const auto result = BuildPseudoPairs(
      {{"1", "亡羊补牢", "a"}, {"2", "画蛇添足", "missing"}, {"3", "你好", "a"}},
      mt, FixtureLexicon());
  EXPECT_EQ(result.report.input, 3u);
  EXPECT_EQ(result.report.built, 1u);
  ASSERT_EQ(result.report.errors.size(), 2u);
  EXPECT_EQ(result.report.errors[0].id, "2");
  EXPECT_EQ(result.report.errors[1].id, "3");
  EXPECT_EQ(result.report.built + result.report.errors.size(),
            result.report.input);
}

TEST(BuildPseudoPairsTest, ReportJson) {
  BuildReport r;
  r.input = 4;
  r.built = 2;
  r.flagged = 1;
  r.errors.push_back({"x", "boom"});
  const auto j = ToJson(r);
  EXPECT_EQ(j["built"], 2);
  EXPECT_DOUBLE_EQ(j["flagged_fraction"].get<double>(), 0.5);
  EXPECT_EQ(j["errors"][0]["id"], "x");
}

TEST(DeduplicateTest, TwelveWithThreeDuplicates) {
  std::vector<CipPair> pairs;
  for (int i = 0; i < 9; ++i) {
    pairs.push_back(MakePair(std::to_string(i), "亡羊补牢" + std::to_string(i)));
  }
  pairs.push_back(MakePair("d1", "亡羊补牢0"));
  pairs.push_back(MakePair("d2", "亡羊补牢4"));
  pairs.push_back(MakePair("d3", "亡羊补牢4"));
  const auto result = Deduplicate(pairs);
  EXPECT_EQ(result.pairs.size(), 9u);
  EXPECT_EQ(result.removed_ids, (std::vector<std::string>{"d1", "d2", "d3"}));
  EXPECT_EQ(result.pairs[0].id, "0");
}

TEST(DeduplicateTest, IdempotentAndEmpty) {
  EXPECT_TRUE(Deduplicate({}).pairs.empty());
  std::vector<CipPair> pairs = {MakePair("a", "亡羊补牢"), MakePair("b", "亡羊补牢"),
                                MakePair("c", "画蛇添足")};
  const auto once = Deduplicate(pairs);
  const auto twice = Deduplicate(once.pairs);
  EXPECT_EQ(once.pairs, twice.pairs);
  EXPECT_TRUE(twice.removed_ids.empty());
}

TEST(MakeTranslatorTest, RejectsUnknownScheme) {
  EXPECT_THROW(MakeTranslator("ftp:x"), ValidationError);
}

class HttpTranslatorTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/translate", [](const httplib::Request& req,
                                  httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      const std::string text = body["text"];
      if (text == "fail") {
        res.status = 500;
        return;
      }
      if (text == "garbage") {
        res.set_content("not json", "application/json");
        return;
      }
      res.set_content(nlohmann::json{{"translation", "译:" + text}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  std::string Url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/translate";
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(HttpTranslatorTest, TranslatesAndMapsErrors) {
  HttpTranslator t(Url());
  EXPECT_EQ(t.Translate("hello"), "译:hello");
  EXPECT_THROW(t.Translate("fail"), RemoteError);
  EXPECT_THROW(t.Translate("garbage"), RemoteError);
}

TEST_F(HttpTranslatorTest, BuildThroughHttp) {
  auto t = MakeTranslator("http:" + Url());
  const auto result = BuildPseudoPairs(
      {{"1", "亡羊补牢", "a"}, {"2", "画蛇添足", "fail"}}, *t, FixtureLexicon(), 2);
  EXPECT_EQ(result.report.built, 1u);
  EXPECT_EQ(result.pairs[0].target, "译:a");
  EXPECT_EQ(result.report.errors.size(), 1u);
}

TEST(HttpTranslatorUnreachableTest, ConnectionRefusedIsRemoteError) {
  HttpTranslator t("http://127.0.0.1:1/translate", std::chrono::seconds(2));
  EXPECT_THROW(t.Translate("x"), RemoteError);
}

}  // namespace
}  // namespace cipkit
