#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <unistd.h>

#include "blockforge/verification.hpp"
#include "fixtures_path.hpp"

using namespace blockforge;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("blockforge_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(GroupSpecGrammar, Families) {
  auto g = parse_group_spec("GL:3:7");
  EXPECT_EQ(g.family, Family::GL);
  EXPECT_EQ(g.n, 3u);
  EXPECT_EQ(g.q, 7u);
  EXPECT_EQ(parse_group_spec("SL2:3").family, Family::SL);
  EXPECT_EQ(parse_group_spec("SL2:3").n, 2u);
  EXPECT_EQ(parse_group_spec("SL:2:3:-").family, Family::SU);
  EXPECT_EQ(parse_group_spec("GL:3:5:-").family, Family::GU);
  EXPECT_EQ(parse_group_spec("GU:3:3").family, Family::GU);
  EXPECT_EQ(parse_group_spec("Sp:2:3").dim, 4u);
  EXPECT_EQ(parse_group_spec("SO:4:3:+").family, Family::SOplus);
  EXPECT_EQ(parse_group_spec("SO:4:3:-").family, Family::SOminus);
  EXPECT_EQ(parse_group_spec("SO:2:3").family, Family::SOodd);
}

TEST(GroupSpecGrammar, Rejects) {
  for (const char* bad : {"", "GL", "GL:3", "GL:3:7:x", "GL:a:7", "GL:3:7:+:1", "Sp:2:3:-", "GU:2:3:+", "XX:2:3"})
    EXPECT_THROW(parse_group_spec(bad), InvalidArgument) << bad;
  EXPECT_THROW(parse_group_spec("GL:2:4"), InvalidArgument);
}

TEST(Manifest, Parse) {
  std::istringstream in(
      "# header\n\n"
      "6779e8ca678e8845f675049e00001b1b85cd791b7d56aa10ce092649c17925a0 m11.ctx CTblLib:M11  # trailing\n");
  auto m = parse_manifest(in);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].file, "m11.ctx");
  EXPECT_EQ(m[0].provenance, "CTblLib:M11  ");
  std::istringstream bad("abc m11.ctx\n");
  EXPECT_THROW(parse_manifest(bad), ParseError);
  std::istringstream nofile("6779e8ca678e8845f675049e00001b1b85cd791b7d56aa10ce092649c17925a0\n");
  EXPECT_THROW(parse_manifest(nofile), ParseError);
}

TEST(Manifest, CoversEveryBundledFixture) {
  const fs::path dir = fs::path(fixture_path("m11.ctx")).parent_path();
  auto entries = read_manifest(dir);
  std::set<std::string> listed;
  for (const auto& e : entries) {
    listed.insert(e.file);
    EXPECT_EQ(sha256_file(dir / e.file), e.sha256) << e.file;
    EXPECT_FALSE(e.provenance.empty()) << e.file;
  }
  for (const auto& f : fs::directory_iterator(dir))
    if (f.path().extension() == ".ctx") EXPECT_TRUE(listed.count(f.path().filename().string())) << f.path();
}

TEST(Manifest, Sha256KnownVector) {
  auto dir = scratch("sha");
  std::ofstream(dir / "abc") << "abc";
  EXPECT_EQ(sha256_file(dir / "abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove_all(dir);
}

TEST(Manifest, TamperedFixtureThrows) {
  auto dir = scratch("tamper");
  fs::copy_file(fixture_path("m11.ctx"), dir / "m11.ctx");
  fs::copy_file(fs::path(fixture_path("MANIFEST")), dir / "MANIFEST");
  EXPECT_TRUE(verify_fixture(dir / "m11.ctx").has_value());
  EXPECT_NO_THROW(load_fixture(dir / "m11.ctx"));
  std::ofstream(dir / "m11.ctx", std::ios::app) << "# edit\n";
  EXPECT_THROW(verify_fixture(dir / "m11.ctx"), FixtureIntegrityError);
  EXPECT_THROW(load_fixture(dir / "m11.ctx"), FixtureIntegrityError);
  EXPECT_THROW(verify_theorem({dir, true, 1}), FixtureIntegrityError);
  fs::remove_all(dir);
}

TEST(Report, SmallGridPassesAndIsDeterministic) {
  const fs::path dir = fs::path(fixture_path("m11.ctx")).parent_path();
  auto a = verify_theorem({dir, true, 3});
  auto b = verify_theorem({dir, true, 1});
  EXPECT_TRUE(a.complete());
  EXPECT_TRUE(a.all_pass());
  EXPECT_EQ(a.grid, "small");
  EXPECT_EQ(report_json(a, false), report_json(b, false));
  auto j = nlohmann::json::parse(report_json(a, false));
  EXPECT_FALSE(j.contains("timestamp"));
  EXPECT_FALSE(j["targets"][0].contains("seconds"));
  EXPECT_EQ(j["fixture_hashes"].size(), 9u);
  auto k = nlohmann::json::parse(report_json(a, true));
  EXPECT_TRUE(k.contains("timestamp"));
  EXPECT_TRUE(k["targets"][0].contains("seconds"));
}

TEST(Report, MissingFixtureIsSkipped) {
  auto dir = scratch("missing");
  const fs::path src = fs::path(fixture_path("m11.ctx")).parent_path();
  for (const auto& f : fs::directory_iterator(src))
    if (f.path().filename() != "m22.ctx") fs::copy_file(f.path(), dir / f.path().filename());
  auto r = verify_theorem({dir, true, 2});
  EXPECT_FALSE(r.complete());
  EXPECT_FALSE(r.all_pass());
  std::size_t skipped = 0;
  for (const auto& t : r.targets) {
    if (t.status == Status::Skipped) {
      ++skipped;
      EXPECT_EQ(t.target, "m22");
    } else {
      EXPECT_EQ(t.status, Status::Pass) << t.target;
    }
  }
  EXPECT_EQ(skipped, 1u);
  fs::remove_all(dir);
}
