#include "blockforge/verification.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "blockforge/blocks.hpp"
#include "blockforge/partitions.hpp"
#include "blockforge/witnesses.hpp"

namespace blockforge {

namespace fs = std::filesystem;

std::vector<ManifestEntry> parse_manifest(std::istream& in) {
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    std::istringstream ls(line);
    ManifestEntry e;
    if (!(ls >> e.sha256)) continue;
    if (!(ls >> e.file)) throw ParseError("manifest entry without a file name", lineno);
    if (e.sha256.size() != 64 || e.sha256.find_first_not_of("0123456789abcdef") != std::string::npos)
      throw ParseError("malformed sha256 '" + e.sha256 + "'", lineno);
    std::getline(ls >> std::ws, e.provenance);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const fs::path& dir) {
  std::ifstream in(dir / "MANIFEST");
  if (!in) throw InvalidArgument("no MANIFEST in " + dir.string());
  return parse_manifest(in);
}

std::string sha256_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + file.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 init failed");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::optional<std::string> verify_fixture(const fs::path& file) {
  const fs::path dir = file.has_parent_path() ? file.parent_path() : fs::path(".");
  if (!fs::exists(dir / "MANIFEST")) return std::nullopt;
  const std::string name = file.filename().string();
  for (const auto& e : read_manifest(dir)) {
    if (e.file != name) continue;
    std::string h = sha256_file(file);
    if (h != e.sha256) throw FixtureIntegrityError(file.string() + ": sha256 " + h + " does not match MANIFEST " + e.sha256);
    return h;
  }
  return std::nullopt;
}

CharacterTable load_fixture(const fs::path& file) {
  verify_fixture(file);
  return ingest_table(file.string());
}

fs::path fixture_dir(const fs::path& fallback) {
  if (const char* env = std::getenv("BLOCKFORGE_FIXTURES"); env && *env) return env;
  return fallback;
}

GroupSpec parse_group_spec(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  auto bad = [&] { return InvalidArgument("group spec '" + std::string(text) + "' is not FAMILY:n:q[:eps]"); };
  if (parts.size() < 2) throw bad();
  std::string fam = parts[0];
  std::size_t cut = fam.find_first_of("0123456789");
  if (cut != std::string::npos && cut > 0 && fam.find_first_not_of("0123456789", cut) == std::string::npos) {
    parts.insert(parts.begin() + 1, fam.substr(cut));
    fam.erase(cut);
  }
  if (parts.size() < 3 || parts.size() > 4) throw bad();
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
    return std::stoull(s);
  };
  const auto n = number(parts[1]);
  const auto q = number(parts[2]);
  int eps = 0;
  if (parts.size() == 4) {
    const auto& e = parts[3];
    if (e == "+" || e == "1" || e == "+1") eps = 1;
    else if (e == "-" || e == "-1") eps = -1;
    else throw bad();
  }
  Family family = parse_family(fam);
  if (eps == -1) {
    if (family == Family::GL) family = Family::GU;
    else if (family == Family::SL) family = Family::SU;
    else if (family == Family::SOodd || family == Family::SOplus) family = Family::SOminus;
    else if (family != Family::GU && family != Family::SU && family != Family::SOminus) throw bad();
  } else if (eps == 1) {
    if (family == Family::SOodd) family = Family::SOplus;
    else if (family == Family::SOminus || family == Family::GU || family == Family::SU) throw bad();
  }
  if (n > 64) throw bad();
  return group_create(family, static_cast<unsigned>(n), q);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
  }
  return "";
}

bool VerificationReport::complete() const {
  return std::none_of(targets.begin(), targets.end(), [](auto& t) { return t.status == Status::Skipped; });
}

bool VerificationReport::all_pass() const {
  return std::all_of(targets.begin(), targets.end(), [](auto& t) { return t.status == Status::Pass; });
}

namespace {

struct Task {
  std::string category, target, expected;
  std::function<std::pair<bool, std::string>()> run;
};

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::pair<bool, std::string> single_block(const CharacterTable& t) {
  auto p = block_partition(t, 2);
  return {p.blocks.size() == 1, std::to_string(p.blocks.size()) + " block(s)"};
}

std::pair<bool, std::string> defect_zero_nonreal(const CharacterTable& t) {
  auto p = block_partition(t, 2);
  auto real = real_blocks(p, t);
  std::vector<std::size_t> defects;
  bool ok = true;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    if (b == p.principal) continue;
    defects.push_back(p.blocks[b].defect);
    if (p.blocks[b].defect != 0 || p.blocks[b].real) ok = false;
  }
  ok = ok && !has_nonprincipal_real_2block(t).found;
  return {ok, std::to_string(p.blocks.size()) + " blocks, non-principal defects " + join(defects) + ", real blocks " +
                  join(real)};
}

std::pair<bool, std::string> gl_blocks(const GroupSpec& spec) {
  auto g = conjugacy_data(spec);
  auto t = compute_table(class_structure(*g));
  auto p = block_partition(t, 2);
  const std::size_t semisimple = count_classes_prime_to(*g, 2 * spec.base->p());
  auto real = real_blocks(p, t);
  bool ok = p.blocks.size() == semisimple && real.size() == 1 && real[0] == p.principal;
  return {ok, std::to_string(p.blocks.size()) + " blocks, " + std::to_string(semisimple) +
                  " odd-order semisimple classes, real blocks " + join(real)};
}

std::pair<bool, std::string> no_nonprincipal_real(const CharacterTable& t) {
  auto p = block_partition(t, 2);
  auto r = has_nonprincipal_real_2block(t);
  return {!r.found, std::to_string(p.blocks.size()) + " blocks, real blocks " + join(real_blocks(p, t))};
}

std::pair<bool, std::string> even_with_real(const CharacterTable& t) {
  auto p = block_partition(t, 2);
  auto r = has_nonprincipal_real_2block(t);
  return {p.blocks.size() % 2 == 0 && r.found,
          std::to_string(p.blocks.size()) + " blocks, real blocks " + join(real_blocks(p, t))};
}

std::string cert_summary(const WitnessCertificate& c) {
  std::string s = "order " + std::to_string(c.a.order) + "; A " + (c.a.passed ? "pass" : "fail") + ", B " +
                  (c.b.passed ? "pass" : "fail") + ", C " + (c.c.passed ? "pass" : "fail");
  return s + "; " + to_string(c.conclusion);
}

std::vector<Task> build_tasks(const VerifyOptions& o, const std::map<std::string, fs::path>& fixtures) {
  std::vector<Task> tasks;
  // Computed tables.
  for (auto [fam, label] : std::vector<std::pair<Family, std::string>>{{Family::SL, "SL2(3)"}, {Family::SU, "SL2(-3)"}}) {
    tasks.push_back({"computed", label, "exactly one 2-block", [fam = fam] {
                       return single_block(compute_table(group_create(fam, 2, 3)));
                     }});
  }
  for (auto fam : {Family::SL, Family::SU}) {
    auto label = group_create(fam, 3, 3).label();
    tasks.push_back({"computed", label, "non-principal 2-blocks have defect zero and are not real", [fam] {
                       return defect_zero_nonreal(compute_table(group_create(fam, 3, 3)));
                     }});
  }
  for (unsigned n : {2u, 3u}) {
    auto spec = group_create(Family::GL, n, 3);
    tasks.push_back({"computed", spec.label(), "2-blocks = odd-order semisimple classes; only the principal block is real",
                     [spec] { return gl_blocks(spec); }});
  }
  // Fixtures.
  for (const auto& name : {"m11", "m22", "2m22", "3m22", "4m22", "6m22", "12m22"}) {
    fs::path path = fixtures.at(name);
    tasks.push_back({"fixture", name, "no non-principal real 2-block", [path] {
                       return no_nonprincipal_real(ingest_table(path.string()));
                     }});
  }
  for (const auto& name : {"sl3_7", "su3_5"}) {
    fs::path path = fixtures.at(name);
    tasks.push_back({"fixture", name, "even number of 2-blocks and a non-principal real 2-block", [path] {
                       return even_with_real(ingest_table(path.string()));
                     }});
  }
  // Witness grid.
  const std::vector<std::uint64_t> qs = o.small_grid ? std::vector<std::uint64_t>{3, 5} : std::vector<std::uint64_t>{3, 5, 7, 9};
  const unsigned max_n = o.small_grid ? 4 : 6;
  const std::set<std::pair<unsigned, long>> none{{2, 3}, {2, -3}, {3, 3}, {3, -3}};
  const std::set<std::pair<unsigned, long>> b_fail{{3, -5}, {3, 7}};
  for (int eps : {1, -1})
    for (unsigned n = 2; n <= max_n; ++n)
      for (auto q : qs) {
        const long eq = eps * static_cast<long>(q);
        std::string label = "A GL" + std::to_string(n) + "(" + std::to_string(eq) + ")";
        std::string expected = none.count({n, eq})     ? "no witness"
                               : b_fail.count({n, eq}) ? "A and C pass, B fails"
                                                       : "A, B and C pass";
        tasks.push_back({"witness", label, expected, [n, q, eps, expected] {
                           auto c = construct_typeA(n, q, eps);
                           if (std::holds_alternative<NoWitness>(c)) return std::pair{expected == "no witness", std::string("no witness")};
                           auto cert = certify(std::get<Witness>(c));
                           bool ok = cert.a.passed && cert.c.passed &&
                                     (expected == "A, B and C pass" ? cert.b.passed
                                                                    : expected == "A and C pass, B fails" && !cert.b.passed);
                           return std::pair{ok, cert_summary(cert)};
                         }});
      }
  auto add_classical = [&](std::string label, std::function<Witness()> make) {
    tasks.push_back({"witness", std::move(label), "A, B and C pass", [make] {
                       auto cert = certify(make());
                       return std::pair{cert.conclusion == Conclusion::Quotient, cert_summary(cert)};
                     }});
  };
  for (unsigned n = 2; n <= max_n; ++n)
    for (auto q : qs) {
      add_classical("C " + group_create(Family::Sp, n, q).label(), [n, q] { return construct_typeC_Sp(n, q); });
      add_classical("B " + group_create(Family::SOodd, n, q).label(), [n, q] { return construct_typeB_SO(n, q); });
    }
  for (int eps : {1, -1})
    for (unsigned n = 4; n <= (o.small_grid ? 4u : 5u); ++n)
      for (auto q : qs) {
        add_classical("D " + group_create(eps > 0 ? Family::SOplus : Family::SOminus, n, q).label(),
                      [n, q, eps] { return construct_typeD(n, q, eps); });
      }
  // Alternating groups.
  for (unsigned n = 8; n <= (o.small_grid ? 20u : 40u); ++n) {
    tasks.push_back({"partition", "A" + std::to_string(n), "witness partition not self-conjugate, non-principal", [n] {
                       auto w = alternating_witness(n);
                       return std::pair{!w.self_conjugate && !w.principal,
                                        w.partition.to_string() + ", 2-core " + w.core.to_string()};
                     }});
  }
  return tasks;
}

}  // namespace

VerificationReport verify_theorem(const VerifyOptions& options) {
  VerificationReport report;
  report.grid = options.small_grid ? "small" : "full";
  std::map<std::string, fs::path> fixtures;
  std::set<std::string> missing;
  for (const auto& name : {"m11", "m22", "2m22", "3m22", "4m22", "6m22", "12m22", "sl3_7", "su3_5"}) {
    fs::path p = options.fixtures / (std::string(name) + ".ctx");
    fixtures[name] = p;
    if (!fs::exists(p)) {
      missing.insert(name);
      continue;
    }
    auto h = verify_fixture(p);
    report.fixture_hashes[p.filename().string()] = h ? *h : sha256_file(p);
  }

  auto tasks = build_tasks(options, fixtures);
  report.targets.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const auto& t = tasks[i];
      TargetResult r{t.category, t.target, t.expected, "", Status::Fail, 0};
      if (t.category == "fixture" && missing.count(t.target)) {
        r.status = Status::Skipped;
        r.observed = "fixture file missing";
      } else {
        auto t0 = std::chrono::steady_clock::now();
        try {
          auto [ok, obs] = t.run();
          r.status = ok ? Status::Pass : Status::Fail;
          r.observed = std::move(obs);
        } catch (const std::exception& e) {
          r.observed = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
      report.targets[i] = std::move(r);
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

std::string report_json(const VerificationReport& r, bool timestamp) {
  nlohmann::ordered_json j;
  j["report"] = "verify-theorem";
  if (timestamp) {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }
  j["grid"] = r.grid;
  j["fixture_hashes"] = r.fixture_hashes;
  nlohmann::ordered_json targets = nlohmann::ordered_json::array();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const auto& t : r.targets) {
    nlohmann::ordered_json e;
    e["category"] = t.category;
    e["target"] = t.target;
    e["expected"] = t.expected;
    e["observed"] = t.observed;
    e["status"] = to_string(t.status);
    if (timestamp) e["seconds"] = t.seconds;
    targets.push_back(std::move(e));
    (t.status == Status::Pass ? pass : t.status == Status::Fail ? fail : skipped)++;
  }
  j["targets"] = std::move(targets);
  j["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}, {"complete", r.complete()}, {"all_pass", r.all_pass()}};
  return j.dump(2);
}

}  // namespace blockforge
