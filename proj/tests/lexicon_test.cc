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

#include "cipkit/lexicon.h"

#include <gtest/gtest.h>

#include <random>

#include "cipkit/error.h"
#include "cipkit/utf8.h"
#include "test_util.h"

namespace cipkit {
namespace {

using testing::FixtureLexicon;
using testing::TempDir;
using testing::WriteFile;

// Brute force: every idiom at every position, longest wins, then skip.
std::vector<IdiomOccurrence> BruteForceDetect(
    const std::u32string& sentence, const std::vector<std::string>& idioms) {
  std::vector<IdiomOccurrence> out;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    const std::string* best = nullptr;
    std::size_t best_len = 0;
    for (const auto& idiom : idioms) {
      const std::u32string s = utf8::Decode(idiom);
      if (sentence.compare(pos, s.size(), s) == 0 && s.size() > best_len) {
        best = &idiom;
        best_len = s.size();
      }
    }
    if (best == nullptr) {
      ++pos;
    } else {
      out.push_back({*best, pos, pos + best_len});
      pos += best_len;
    }
  }
  return out;
}

TEST(LoadLexiconTest, DeduplicatesLines) {
  TempDir dir;
  WriteFile(dir / "l.txt", "亡羊补牢\n深居简出\n亡羊补牢\n");
  LexiconLoadReport report;
  const IdiomLexicon lexicon = LoadLexicon(dir / "l.txt", &report);
  EXPECT_EQ(lexicon.size(), 2u);
  EXPECT_EQ(report.duplicates, 1u);
}

TEST(LoadLexiconTest, EmptyFile) {
  TempDir dir;
  WriteFile(dir / "l.txt", "");
  EXPECT_EQ(LoadLexicon(dir / "l.txt").size(), 0u);
}

TEST(LoadLexiconTest, FixtureMembership) {
  TempDir dir;
  std::string contents;
  for (const auto& idiom : testing::FixtureIdioms()) contents += idiom + "\n";
  WriteFile(dir / "l.txt", contents);
  const IdiomLexicon lexicon = LoadLexicon(dir / "l.txt");
  EXPECT_EQ(lexicon.size(), 10u);
  EXPECT_TRUE(lexicon.contains("以牙还牙"));
  EXPECT_FALSE(lexicon.contains("以牙还"));
}

TEST(LoadLexiconTest, TrimsCrlfAndSkipsShortLines) {
  TempDir dir;
  WriteFile(dir / "l.txt", "  亡羊补牢 \r\n羊补\r\n\r\n深居 简出\n画蛇添足");
  LexiconLoadReport report;
  const IdiomLexicon lexicon = LoadLexicon(dir / "l.txt", &report);
  EXPECT_EQ(lexicon.size(), 2u);
  EXPECT_TRUE(lexicon.contains("亡羊补牢"));
  EXPECT_TRUE(lexicon.contains("画蛇添足"));
  EXPECT_EQ(report.too_short, 1u);
  EXPECT_EQ(report.invalid, 1u);
}

TEST(LoadLexiconTest, InvalidUtf8ReportsOffset) {
  TempDir dir;
  WriteFile(dir / "l.txt", std::string("亡羊补牢\n") + "\xfe\n");
  try {
    LoadLexicon(dir / "l.txt");
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 13u);
    EXPECT_NE(std::string(e.what()).find("13"), std::string::npos);
  }
}

TEST(LoadLexiconTest, MissingFileIsIoError) {
  EXPECT_THROW(LoadLexicon("/nonexistent/idioms.txt"), IoError);
}

TEST(IdiomLexiconTest, FromListRejectsShortEntries) {
  EXPECT_THROW(IdiomLexicon::FromList({"亡羊"}), ValidationError);
  EXPECT_THROW(IdiomLexicon::FromList({"亡 羊补牢"}), ValidationError);
}

TEST(DetectIdiomsTest, MendSentence) {
  const auto found = DetectIdioms(testing::kMendSource, FixtureLexicon());
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].idiom, "亡羊补牢");
  EXPECT_EQ(found[0].start, 13u);
  EXPECT_EQ(found[0].end, 17u);
}

TEST(DetectIdiomsTest, NoIdioms) {
  EXPECT_TRUE(DetectIdioms("约翰并不有钱", FixtureLexicon()).empty());
  EXPECT_TRUE(DetectIdioms("", FixtureLexicon()).empty());
}

TEST(DetectIdiomsTest, LeftmostLongestConsumesOverlap) {
  const auto lexicon = IdiomLexicon::FromList({"ABCD", "ABC", "CDEF"});
  const auto found = DetectIdioms("ABCDEF", lexicon);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], (IdiomOccurrence{"ABCD", 0, 4}));
}

TEST(ContainsIdiomTest, MendExample) {
  EXPECT_TRUE(ContainsIdiom(testing::kMendSource, FixtureLexicon()));
  EXPECT_FALSE(ContainsIdiom(testing::kMendTarget, FixtureLexicon()));
  EXPECT_FALSE(ContainsIdiom("", FixtureLexicon()));
}

TEST(DetectIdiomsTest, MatchesBruteForceOnSmallAlphabets) {
  std::mt19937 rng(20261016);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> idioms;
    const int n_idioms = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int k = 0; k < n_idioms; ++k) {
      idioms.push_back(testing::JoinAll(
          testing::RandomTokens(rng, 5, alphabet, kMinIdiomLength)));
    }
    const IdiomLexicon lexicon = IdiomLexicon::FromList(idioms);
    const std::string sentence =
        testing::JoinAll(testing::RandomTokens(rng, 30, alphabet));
    const std::u32string scalars = utf8::Decode(sentence);
    const auto found = DetectIdioms(sentence, lexicon);
    ASSERT_EQ(found, BruteForceDetect(scalars, lexicon.idioms()))
        << "sentence " << sentence;

    std::size_t prev_end = 0;
    for (const auto& o : found) {
      EXPECT_GE(o.start, prev_end);
      EXPECT_EQ(utf8::Encode(scalars.substr(o.start, o.end - o.start)),
                o.idiom);
      prev_end = o.end;
    }
    EXPECT_EQ(ContainsIdiom(sentence, lexicon), !found.empty());
  }
}

}  // namespace
}  // namespace cipkit
