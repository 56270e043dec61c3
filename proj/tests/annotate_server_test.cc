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

#include "cipkit/annotate_server.h"

#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"
#include "test_util.h"

namespace cipkit {
namespace {

using json = nlohmann::json;
using testing::FixtureLexicon;

class AnnotateServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::WriteDataset(dir_ / "data.jsonl", 12, 4);
    testing::WriteFile(dir_ / "index.html", "<html>ui</html>");
    store_ = std::make_unique<ReviewStore>(dir_ / "data.jsonl",
                                           dir_ / "log.jsonl", FixtureLexicon());
    server_ = std::make_unique<AnnotateServer>(*store_, dir_.path());
    port_ = server_->Bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Serve(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int i = 0; i < 200 && !server_->running(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  void TearDown() override {
    server_->Stop();
    thread_.join();
  }

  std::pair<int, json> GetJson(const std::string& path) {
    auto res = client_->Get(path);
    if (!res) return {-1, json()};
    return {res->status, json::parse(res->body)};
  }
  std::pair<int, json> PostJson(const std::string& path, const std::string& body) {
    auto res = client_->Post(path, body, "application/json");
    if (!res) return {-1, json()};
    return {res->status, json::parse(res->body)};
  }

  testing::TempDir dir_;
  std::unique_ptr<ReviewStore> store_;
  std::unique_ptr<AnnotateServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(AnnotateServerTest, ListsPairsWithPaging) {
  auto [status, body] = GetJson("/api/pairs?offset=2&limit=3");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["total"], 12);
  ASSERT_EQ(body["pairs"].size(), 3u);
  EXPECT_EQ(body["pairs"][0]["id"], "p002");
  EXPECT_EQ(body["pairs"][0]["version"], 0);
  EXPECT_EQ(body["pairs"][0]["idioms"][0]["start"], 3);

  std::tie(status, body) = GetJson("/api/pairs?status=flagged");
  EXPECT_EQ(body["total"], 3);  // p000, p004, p008
  EXPECT_EQ(GetJson("/api/pairs?limit=abc").first, 400);
  EXPECT_EQ(GetJson("/api/pairs?limit=0").first, 400);
  EXPECT_EQ(GetJson("/api/pairs?status=weird").first, 400);
}

TEST_F(AnnotateServerTest, GetSinglePair) {
  auto [status, body] = GetJson("/api/pairs/p001");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["status"], "machine");
  EXPECT_TRUE(body["revisions"].empty());
  EXPECT_EQ(GetJson("/api/pairs/zzz").first, 404);
}

TEST_F(AnnotateServerTest, ReviseApproveAndConflict) {
  auto [status, body] = PostJson("/api/pairs/p004/revision",
                                 R"({"target":"第4句很好。","annotator":"ann","version":0})");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["status"], "revised");
  EXPECT_EQ(body["version"], 1);
  EXPECT_EQ(body["revisions"][0]["annotator"], "ann");

  std::tie(status, body) =
      PostJson("/api/pairs/p004/revision", R"({"target":"别的。","version":0})");
  EXPECT_EQ(status, 409);
  EXPECT_EQ(body["current"]["target"], "第4句很好。");

  std::tie(status, body) =
      PostJson("/api/pairs/p004/approve", R"({"annotator":"ann","version":1})");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["status"], "approved");

  std::tie(status, body) = GetJson("/api/stats");
  EXPECT_EQ(body["approved"], 1);
  EXPECT_EQ(body["total"], 12);
}

TEST_F(AnnotateServerTest, IdiomTargetsAnswer422) {
  auto [status, body] =
      PostJson("/api/pairs/p001/revision", R"({"target":"他守株待兔"})");
  EXPECT_EQ(status, 422);
  EXPECT_EQ(body["idioms"][0]["idiom"], "守株待兔");
  std::tie(status, body) =
      PostJson("/api/pairs/p001/revision", R"({"target":"他守株待兔","force":true})");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["status"], "flagged");
  EXPECT_EQ(PostJson("/api/pairs/p001/approve", "{}").first, 422);
}

TEST_F(AnnotateServerTest, BadBodiesAnswer400) {
  EXPECT_EQ(PostJson("/api/pairs/p001/revision", "not json").first, 400);
  EXPECT_EQ(PostJson("/api/pairs/p001/revision", R"({"annotator":"a"})").first, 400);
  EXPECT_EQ(PostJson("/api/pairs/p001/revision", R"({"target":"x","version":-1})").first,
            400);
  EXPECT_EQ(PostJson("/api/pairs/p001/revision", R"({"target":"x","force":"yes"})").first,
            400);
  EXPECT_EQ(PostJson("/api/pairs/nope/approve", "{}").first, 404);
}

TEST_F(AnnotateServerTest, LexiconCheck) {
  auto [status, body] = GetJson("/api/lexicon/check?text=%E4%BB%96%E7%94%BB%E8%9B%87%E6%B7%BB%E8%B6%B3");
  EXPECT_EQ(status, 200);
  ASSERT_EQ(body["idioms"].size(), 1u);
  EXPECT_EQ(body["idioms"][0]["idiom"], "画蛇添足");
  EXPECT_EQ(body["idioms"][0]["start"], 1);
  std::tie(status, body) = GetJson("/api/lexicon/check?text=abc");
  EXPECT_TRUE(body["idioms"].empty());
}

TEST_F(AnnotateServerTest, ServesStaticUi) {
  auto res = client_->Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>ui</html>");
}

TEST_F(AnnotateServerTest, ConcurrentClientsOneWinner) {
  std::vector<std::thread> threads;
  std::atomic<int> ok{0}, conflict{0};
  for (int t = 0; t < 6; ++t) {
    threads.emplace_back([&, t] {
      httplib::Client c("127.0.0.1", port_);
      const json body = {{"target", "第2句" + std::to_string(t) + "。"}, {"version", 0}};
      auto res = c.Post("/api/pairs/p002/revision", body.dump(), "application/json");
      if (res && res->status == 200) ++ok;
      if (res && res->status == 409) ++conflict;
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(conflict.load(), 5);
}

}  // namespace
}  // namespace cipkit
