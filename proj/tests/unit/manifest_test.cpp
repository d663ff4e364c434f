#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "scratch.hpp"
#include "thermocrack/error.hpp"
#include "thermocrack/manifest.hpp"

namespace thermocrack {
namespace {

using testing::ScratchDir;

Manifest sample_manifest() {
  Manifest m;
  m.seed = 77;
  m.records = {
      {"images/L1_00000.png", SourceKind::Fusion, CrackLevel::Level1, 1.25, Split::Train},
      {"images/L2_00000.png", SourceKind::MsxLike, CrackLevel::Level2, 2.0, Split::Val},
      {"images/L3_00000.png", SourceKind::Thermal, CrackLevel::Level3, 0.1 + 4.2, Split::Test},
  };
  return m;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::filesystem::path& p, const std::string& s) { std::ofstream(p) << s; }

TEST(Manifest, RoundtripIsIdentity) {
  ScratchDir dir("manifest_rt");
  const Manifest m = sample_manifest();
  save_manifest(m, dir / "m.jsonl");
  EXPECT_EQ(load_manifest(dir / "m.jsonl"), m);
}

TEST(Manifest, EmptyManifestIsHeaderOnly) {
  ScratchDir dir("manifest_empty");
  Manifest m;
  m.seed = 3;
  save_manifest(m, dir / "m.jsonl");
  const std::string text = read_all(dir / "m.jsonl");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_EQ(load_manifest(dir / "m.jsonl"), m);
}

TEST(Manifest, HeaderCarriesCounts) {
  ScratchDir dir("manifest_header");
  save_manifest(sample_manifest(), dir / "m.jsonl");
  const std::string text = read_all(dir / "m.jsonl");
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_NE(header.find("\"version\":1"), std::string::npos) << header;
  EXPECT_NE(header.find("\"seed\":77"), std::string::npos) << header;
  EXPECT_NE(header.find("\"2\":{\"train\":0,\"val\":1,\"test\":0}"), std::string::npos) << header;
}

TEST(Manifest, UnknownLevelNamesTheLine) {
  ScratchDir dir("manifest_level");
  save_manifest(sample_manifest(), dir / "m.jsonl");
  std::string text = read_all(dir / "m.jsonl");
  const auto pos = text.find("\"level\":3");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "\"level\":4");
  write_all(dir / "bad.jsonl", text);
  try {
    load_manifest(dir / "bad.jsonl");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Manifest, UnknownTokensAreParseErrors) {
  ScratchDir dir("manifest_tokens");
  save_manifest(sample_manifest(), dir / "m.jsonl");
  const std::string base = read_all(dir / "m.jsonl");
  for (auto [from, to] : {std::pair<std::string, std::string>{"\"split\":\"val\"", "\"split\":\"dev\""},
                          {"\"source\":\"thermal\"", "\"source\":\"sonar\""},
                          {"\"delta_t\":1.25", "\"delta_t\":\"x\""},
                          {"\"path\"", "\"file\""}}) {
    std::string text = base;
    const auto pos = text.find(from);
    ASSERT_NE(pos, std::string::npos) << from;
    text.replace(pos, from.size(), to);
    write_all(dir / "bad.jsonl", text);
    EXPECT_THROW(load_manifest(dir / "bad.jsonl"), ParseError) << to;
  }
  write_all(dir / "bad.jsonl", base + "{not json\n");
  EXPECT_THROW(load_manifest(dir / "bad.jsonl"), ParseError);
}

TEST(Manifest, ValidationErrors) {
  Manifest dup = sample_manifest();
  dup.records.push_back(dup.records.front());
  EXPECT_THROW(validate_manifest(dup), ValidationError);

  ScratchDir dir("manifest_validate");
  EXPECT_THROW(save_manifest(dup, dir / "m.jsonl"), ValidationError);

  Manifest mislabeled = sample_manifest();
  mislabeled.records[0].delta_t = 3.0;
  EXPECT_THROW(validate_manifest(mislabeled), ValidationError);

  // Header counts that disagree with the records.
  save_manifest(sample_manifest(), dir / "m.jsonl");
  std::string text = read_all(dir / "m.jsonl");
  const auto nl = text.find('\n');
  const auto second = text.find('\n', nl + 1);
  write_all(dir / "short.jsonl", text.erase(nl + 1, second - nl));
  EXPECT_THROW(load_manifest(dir / "short.jsonl"), ValidationError);

  EXPECT_THROW(load_manifest(dir / "missing.jsonl"), IoError);
}

TEST(Manifest, InSplitFilters) {
  const Manifest m = sample_manifest();
  ASSERT_EQ(m.in_split(Split::Val).size(), 1u);
  EXPECT_EQ(m.in_split(Split::Val)[0].level, CrackLevel::Level2);
}

}  // namespace
}  // namespace thermocrack
