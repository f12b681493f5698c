#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "blockforge/blocks.hpp"
#include "blockforge/chartab.hpp"
#include "blockforge/partitions.hpp"
#include "blockforge/verification.hpp"
#include "blockforge/witnesses.hpp"

using namespace blockforge;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInput = 2;

#ifndef BLOCKFORGE_DEFAULT_FIXTURES
#define BLOCKFORGE_DEFAULT_FIXTURES "data/fixtures"
#endif

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidArgument("cannot write " + out);
  f << text << '\n';
}

std::string join_rows(const std::vector<std::size_t>& rows) {
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? " " : "") + std::to_string(rows[i] + 1);
  return s;
}

struct BlocksArgs {
  std::string file, compute;
  std::uint64_t prime = 2;
  bool real = false, json = false;
};

int cmd_blocks(const BlocksArgs& a) {
  if (a.file.empty() == a.compute.empty()) throw InvalidArgument("give exactly one of FILE or --compute SPEC");
  CharacterTable t = a.compute.empty() ? load_fixture(a.file) : compute_table(parse_group_spec(a.compute));
  auto p = block_partition(t, a.prime);
  if (a.json) {
    std::cout << block_report_json(t, p, a.real) << '\n';
    return kOk;
  }
  std::cout << t.label << ": " << t.class_count() << " classes, " << p.blocks.size() << " " << a.prime << "-block(s)\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& blk = p.blocks[b];
    std::cout << "  block " << b + 1 << (b == p.principal ? " (principal)" : "") << ": defect " << blk.defect;
    if (a.real) std::cout << (blk.real ? ", real" : ", not real");
    std::cout << "; characters " << join_rows(blk.characters) << '\n';
  }
  if (a.real && a.prime == 2) {
    auto r = has_nonprincipal_real_2block(t);
    std::cout << "non-principal real 2-block: " << (r.found ? "block " + std::to_string(*r.witness + 1) : "none") << '\n';
  }
  return kOk;
}

struct WitnessArgs {
  std::string type;
  unsigned n = 0;
  std::uint64_t q = 0;
  std::string eps = "+";
  bool expect_none = false;
  std::string require = "ABC";
  std::string out;
};

int cmd_witness(const WitnessArgs& a) {
  int eps = 1;
  if (a.eps == "-" || a.eps == "-1") eps = -1;
  else if (a.eps != "+" && a.eps != "+1" && a.eps != "1") throw InvalidArgument("eps must be + or -");
  Construction c = NoWitness{};
  if (a.type == "A") c = construct_typeA(a.n, a.q, eps);
  else if (a.type == "B") c = construct_typeB_SO(a.n, a.q);
  else if (a.type == "C") c = construct_typeC_Sp(a.n, a.q);
  else if (a.type == "D") c = construct_typeD(a.n, a.q, eps);
  else throw InvalidArgument("type must be A, B, C or D");

  if (auto* none = std::get_if<NoWitness>(&c)) {
    std::cerr << "no witness: " << none->reason << '\n';
    return a.expect_none ? kOk : kFailed;
  }
  auto cert = certify(std::get<Witness>(c));
  emit(certificate_json(cert), a.out);
  if (a.expect_none) {
    std::cerr << "expected no witness, got one\n";
    return kFailed;
  }
  bool ok = true;
  for (char ch : a.require) {
    if (ch == 'A') ok = ok && cert.a.passed;
    else if (ch == 'B') ok = ok && cert.b.passed;
    else if (ch == 'C') ok = ok && cert.c.passed;
    else throw InvalidArgument("--require takes letters from ABC");
  }
  std::cerr << cert.spec.label() << ": A " << (cert.a.passed ? "pass" : "fail") << ", B "
            << (cert.b.passed ? "pass" : "fail") << ", C " << (cert.c.passed ? "pass" : "fail") << "; "
            << describe(cert.conclusion) << '\n';
  return ok ? kOk : kFailed;
}

struct VerifyArgs {
  std::string grid = "full";
  std::string fixtures;
  bool no_timestamp = false, json = false;
  unsigned threads = 0;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions o;
  o.fixtures = a.fixtures.empty() ? fixture_dir(BLOCKFORGE_DEFAULT_FIXTURES) : std::filesystem::path(a.fixtures);
  o.small_grid = a.grid == "small";
  o.threads = a.threads;
  auto report = verify_theorem(o);
  if (a.json || !a.out.empty()) {
    emit(report_json(report, !a.no_timestamp), a.out);
  }
  if (!a.json) {
    for (const auto& t : report.targets)
      std::cout << to_string(t.status) << "  " << t.category << "  " << t.target << "  " << t.observed << '\n';
    std::size_t pass = std::count_if(report.targets.begin(), report.targets.end(),
                                     [](auto& t) { return t.status == Status::Pass; });
    std::cout << pass << "/" << report.targets.size() << " targets pass"
              << (report.complete() ? "" : " (incomplete: fixtures missing)") << '\n';
  }
  return report.all_pass() ? kOk : kFailed;
}

int cmd_table(const std::string& spec, const std::string& file, const std::string& out) {
  if (spec.empty() == file.empty()) throw InvalidArgument("give exactly one of FILE or --compute SPEC");
  CharacterTable t = spec.empty() ? load_fixture(file) : compute_table(parse_group_spec(spec));
  verify_table(t);
  std::ostringstream os;
  write_ctx(os, t);
  emit(os.str(), out);
  return kOk;
}

int cmd_partition(const std::string& text, unsigned witness_n) {
  if (witness_n) {
    auto w = alternating_witness(witness_n);
    std::cout << "A" << witness_n << ": " << w.partition.to_string() << ", 2-core " << w.core.to_string()
              << (w.self_conjugate ? ", self-conjugate" : ", not self-conjugate")
              << (w.principal ? ", principal" : ", non-principal") << '\n';
    return (!w.self_conjugate && !w.principal) ? kOk : kFailed;
  }
  if (text.empty()) throw InvalidArgument("give a partition or --witness n");
  auto p = Partition::parse(text);
  std::cout << "partition " << p.to_string() << "\n2-core " << two_core(p).to_string() << "\nself-conjugate "
            << (is_self_conjugate(p) ? "yes" : "no") << "\nprincipal 2-block of S_" << p.size() << " "
            << (in_principal_2block_Sn(p) ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_recheck(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument("cannot open " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  auto r = recheck_certificate(ss.str());
  for (const auto& m : r.messages) std::cout << m << '\n';
  std::cout << (r.ok ? "certificate OK" : "certificate REJECTED") << '\n';
  return r.ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blockforge: character tables, 2-blocks and real-block witnesses"};
  app.require_subcommand(1);

  BlocksArgs ba;
  auto* blocks = app.add_subcommand("blocks", "Block partition of an ingested or computed table");
  blocks->add_option("file", ba.file, "CTX table file");
  blocks->add_option("--compute", ba.compute, "Group spec FAMILY:n:q[:eps]");
  blocks->add_option("--prime", ba.prime, "Prime ell")->check(CLI::Range(2u, 1000000u));
  blocks->add_flag("--real", ba.real, "Report reality of each block");
  blocks->add_flag("--json", ba.json, "JSON output");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Construct and certify a witness element");
  witness->add_option("type", wa.type, "A, B, C or D")->required();
  witness->add_option("n", wa.n, "Rank")->required();
  witness->add_option("q", wa.q, "Field size")->required();
  witness->add_option("eps", wa.eps, "+ or - (types A and D)");
  witness->add_flag("--expect-none", wa.expect_none, "Succeed only if no witness exists");
  witness->add_option("--require", wa.require, "Conditions that must pass");
  witness->add_option("-o,--out", wa.out, "Certificate file (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-theorem", "Run the end-to-end verification targets");
  verify->add_option("--grid", va.grid, "full or small")->check(CLI::IsMember({"full", "small"}));
  verify->add_option("--fixtures", va.fixtures, "Fixture directory");
  verify->add_flag("--no-timestamp", va.no_timestamp, "Omit timestamp and timings from JSON");
  verify->add_flag("--json", va.json, "JSON report on stdout");
  verify->add_option("--threads", va.threads, "Worker threads (0: all cores)");
  verify->add_option("-o,--out", va.out, "Write JSON report to file");

  std::string table_spec, table_file, table_out;
  auto* table = app.add_subcommand("table", "Compute or re-verify a character table, print CTX");
  table->add_option("file", table_file, "CTX table file");
  table->add_option("--compute", table_spec, "Group spec FAMILY:n:q[:eps]");
  table->add_option("-o,--out", table_out, "Output file");

  std::string part_text;
  unsigned part_witness = 0;
  auto* partition = app.add_subcommand("partition", "2-core and block data of a partition");
  partition->add_option("partition", part_text, "Comma-separated parts");
  partition->add_option("--witness", part_witness, "Alternating-group witness for A_n");

  std::string recheck_file;
  auto* recheck = app.add_subcommand("recheck", "Independently re-verify a witness certificate");
  recheck->add_option("file", recheck_file, "Certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*blocks) return cmd_blocks(ba);
    if (*witness) return cmd_witness(wa);
    if (*verify) return cmd_verify(va);
    if (*table) return cmd_table(table_spec, table_file, table_out);
    if (*partition) return cmd_partition(part_text, part_witness);
    if (*recheck) return cmd_recheck(recheck_file);
  } catch (const FixtureIntegrityError& e) {
    std::cerr << "fixture integrity: " << e.what() << '\n';
    return kInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kFailed;
  }
  return kInput;
}
