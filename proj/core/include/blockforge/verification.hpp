#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockforge/chartab.hpp"
#include "blockforge/error.hpp"
#include "blockforge/groups.hpp"

namespace blockforge {

/// A fixture file whose hash disagrees with its MANIFEST entry.
class FixtureIntegrityError : public Error {
 public:
  using Error::Error;
};

struct ManifestEntry {
  std::string file;
  std::string sha256;
  std::string provenance;
};

/// Lines "<sha256> <file> <provenance...>", '#' comments.
std::vector<ManifestEntry> parse_manifest(std::istream& in);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& file);

/// Checks `file` against the MANIFEST in its directory. Returns the hash, or nullopt
/// when the directory has no MANIFEST or the file is not listed.
/// Throws FixtureIntegrityError on mismatch.
std::optional<std::string> verify_fixture(const std::filesystem::path& file);

/// verify_fixture followed by ingest_table.
CharacterTable load_fixture(const std::filesystem::path& file);

/// Fixture directory: BLOCKFORGE_FIXTURES if set, else `fallback`.
std::filesystem::path fixture_dir(const std::filesystem::path& fallback);

/// FAMILY:n:q[:eps], e.g. GL:3:7, Sp:2:3, SL2:3 (rank glued to the family), SL:2:3:- for SU2(3).
/// eps '-' turns GL/SL into GU/SU and selects SO-; '+' selects SO+.
GroupSpec parse_group_spec(std::string_view text);

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct TargetResult {
  std::string category;  // computed, fixture, witness, partition
  std::string target;
  std::string expected;
  std::string observed;
  Status status = Status::Fail;
  double seconds = 0;
};

struct VerificationReport {
  std::string grid;
  std::vector<TargetResult> targets;
  std::map<std::string, std::string> fixture_hashes;

  bool complete() const;
  bool all_pass() const;
};

struct VerifyOptions {
  std::filesystem::path fixtures;
  bool small_grid = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Runs every target. Throws FixtureIntegrityError before any work if a present fixture
/// fails its hash; a missing fixture becomes a SKIPPED target.
VerificationReport verify_theorem(const VerifyOptions& options);

/// Deterministic JSON; timestamp and per-target timings appear only when `timestamp` is set.
std::string report_json(const VerificationReport& r, bool timestamp);

}  // namespace blockforge
