/* Copyright 2026 The rgc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// rgc: command-line front end. Every subcommand is a pure function of its
// config and seed; outputs go to --out.
//
// Exit codes: 0 success, 1 usage or verification failure, 2 budget
// exhausted, 3 invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "rgc/isomorphism.hpp"
#include "rgc/recovery.hpp"
#include "rgc/snapshot.hpp"

using namespace rgc;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kReportSchema = "rgc.report/1";

struct Settings {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> budget_scale;
  std::string out = ".";
  // Subcommand overrides.
  std::optional<std::string> L, p, p_prime, gap;
  std::optional<std::int64_t> n, rounds;
  std::optional<std::string> layout;
  std::string cert_path;
};

// Effective configuration: defaults, then the config file, then flags.
json effective_config(const Settings& s) {
  json c = {{"L", "7/2"},       {"p", "1/2"},   {"p_prime", "1/2"}, {"seed", 1},
            {"seed_prime", 2},  {"n", 32},      {"layout", "equal"}, {"gap", nullptr},
            {"rounds", 100},    {"budget_scale", 1.0}};
  if (!s.config_path.empty()) {
    std::ifstream in(s.config_path);
    if (!in) throw UsageError("cannot read config " + s.config_path);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
    if (!file.is_object()) throw ParseError("config must be a JSON object");
    for (auto& [k, v] : file.items()) {
      if (!c.contains(k)) throw ParseError("unknown config key '" + k + "'");
      c[k] = v;
    }
  }
  if (s.seed) {
    c["seed"] = *s.seed;
    if (s.config_path.empty()) c["seed_prime"] = *s.seed + 1;
  }
  if (s.budget_scale) c["budget_scale"] = *s.budget_scale;
  if (s.L) c["L"] = *s.L;
  if (s.p) c["p"] = *s.p;
  if (s.p_prime) c["p_prime"] = *s.p_prime;
  if (s.gap) c["gap"] = *s.gap;
  if (s.n) c["n"] = *s.n;
  if (s.rounds) c["rounds"] = *s.rounds;
  if (s.layout) c["layout"] = *s.layout;
  return c;
}

std::string text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

OracleConfig oracle_config(const json& c, bool prime, bool idf = false) {
  OracleConfig o;
  o.L = parse_quad(text(c.at("L")));
  o.p = parse_rational(text(c.at(prime ? "p_prime" : "p")));
  o.seed = c.at(prime ? "seed_prime" : "seed").get<std::uint64_t>();
  o.budget_scale = c.at("budget_scale").get<double>();
  if (!(o.budget_scale > 0)) throw UsageError("budget_scale must be positive");
  o.idf_mode = idf;
  return o;
}

void write(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

json report(const std::string& command, const json& config, json result) {
  return {{"schema", kReportSchema}, {"command", command}, {"config", config}, {"result", std::move(result)}};
}

int cmd_sample(const Settings& s) {
  json c = effective_config(s);
  GraphOracle o(oracle_config(c, false));
  std::int64_t n = c.at("n").get<std::int64_t>();
  if (n < 1) throw UsageError("n must be at least 1");
  std::string layout = c.at("layout").get<std::string>();
  const QuadScalar& L = o.circumference();
  for (std::int64_t i = 1; i < n; ++i) {
    Rational lo(i, n), hi(i + 1, n);
    if (layout == "equal")
      o.insert(o.point(qs_mul_rat(L, lo)));
    else if (layout == "random")
      o.sample_vertex_in_arc(open_arc(o.point(qs_mul_rat(L, lo)), o.point(qs_mul_rat(L, hi))), o.next_stream());
    else
      throw UsageError("layout must be 'equal' or 'random'");
  }
  if (!c.at("gap").is_null()) o.densify(parse_quad(text(c.at("gap"))));
  SnapshotGraph g = snapshot(o);
  fs::create_directories(s.out);
  write(fs::path(s.out) / "report.json", report("sample", c, g.to_json()).dump(2) + "\n");
  write(fs::path(s.out) / "graph.dot", g.to_dot());
  std::cout << g.size() << " vertices, " << g.edge_count() << " edges\n";
  return 0;
}

int cmd_recover_l(const Settings& s) {
  json c = effective_config(s);
  GraphOracle o(oracle_config(c, false));
  std::int64_t n = c.at("n").get<std::int64_t>();
  LEstimate e = recover_L(o, n);
  json res = to_json(e);
  res["alpha_tolerance"] = encode_rational(Rational(3, n));
  fs::create_directories(s.out);
  write(fs::path(s.out) / "report.json", report("recover-l", c, res).dump(2) + "\n");
  std::cout << "alpha = " << e.alpha.alpha.get_str() << ", L in [" << e.lo.get_str() << ", "
            << (e.hi ? e.hi->get_str() : std::string("inf")) << "]\n";
  return 0;
}

int cmd_isomorphism(const Settings& s) {
  json c = effective_config(s);
  GraphOracle g(oracle_config(c, false, true)), h(oracle_config(c, true, true));
  PartialIso iso(g, h);
  BackAndForthResult run = run_back_and_forth(iso, {c.at("rounds").get<std::int64_t>(), 0, false});
  IsoCheck check = verify_partial_iso(iso);
  if (!check.ok) throw InvariantViolation("partial isomorphism check failed: " + check.failure);
  json res = {{"rounds_requested", c.at("rounds")},
              {"rounds_completed", run.rounds_completed},
              {"pairs", iso.size()},
              {"steps", iso.steps},
              {"skips", iso.skips},
              {"trials", iso.trials},
              {"edges", check.edges},
              {"failure", run.failure ? json(*run.failure) : json()},
              {"failed_budget", run.failure ? json(run.failed_budget) : json()}};
  fs::create_directories(s.out);
  write(fs::path(s.out) / "cert.json", certificate(iso, check).dump(2) + "\n");
  write(fs::path(s.out) / "report.json", report("isomorphism", c, res).dump(2) + "\n");
  std::cout << run.rounds_completed << " rounds, " << iso.size() << " pairs";
  if (run.failure) {
    std::cout << "; stopped: " << *run.failure << " (replay with the same config)\n";
    return 2;
  }
  std::cout << "\n";
  return 0;
}

int cmd_verify(const Settings& s) {
  std::ifstream in(s.cert_path);
  if (!in) throw UsageError("cannot read certificate " + s.cert_path);
  json cert;
  try {
    cert = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  IsoCheck check = verify_certificate(cert);
  json res = {{"ok", check.ok},
              {"failure", check.ok ? json() : json(check.failure)},
              {"pairs", check.pairs_checked},
              {"adjacency_checks", check.adjacency_checks},
              {"edges", check.edges}};
  fs::create_directories(s.out);
  write(fs::path(s.out) / "report.json", report("verify", json{{"certificate", s.cert_path}}, res).dump(2) + "\n");
  std::cout << (check.ok ? "PASS" : "FAIL: " + check.failure) << "\n";
  return check.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random geometric graphs on a circle"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--config", s.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", s.seed, "seed of the first graph (the second gets seed+1 unless configured)");
  app.add_option("--out", s.out, "output directory");
  app.add_option("--budget-scale", s.budget_scale, "multiplies every default trial budget");

  auto* sample = app.add_subcommand("sample", "snapshot JSON and DOT of a finite vertex set");
  sample->add_option("--L", s.L, "circumference, e.g. 7/2 or 2+sqrt2");
  sample->add_option("--p", s.p, "edge probability");
  sample->add_option("--n", s.n, "number of vertices");
  sample->add_option("--layout", s.layout, "equal or random");
  sample->add_option("--gap", s.gap, "densify until gaps are below this");

  auto* recl = app.add_subcommand("recover-l", "estimate alpha and bracket L");
  recl->add_option("--L", s.L, "circumference");
  recl->add_option("--p", s.p, "edge probability");
  recl->add_option("--n", s.n, "size of the near-uniform set");

  auto* iso = app.add_subcommand("isomorphism", "back-and-forth between two graphs, writes cert.json");
  iso->add_option("--L", s.L, "rational circumference");
  iso->add_option("--p", s.p, "edge probability of the first graph");
  iso->add_option("--p-prime", s.p_prime, "edge probability of the second graph");
  iso->add_option("--rounds", s.rounds, "forth+back rounds");

  auto* verify = app.add_subcommand("verify", "re-check a certificate from scratch");
  verify->add_option("cert", s.cert_path, "certificate path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sample) return cmd_sample(s);
    if (*recl) return cmd_recover_l(s);
    if (*iso) return cmd_isomorphism(s);
    return cmd_verify(s);
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted after " << e.trials() << " trials: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    try {
      fs::create_directories(s.out);
      write(fs::path(s.out) / "repro.json",
            json{{"argv", std::vector<std::string>(argv, argv + argc)}, {"config", effective_config(s)},
                 {"error", e.what()}}.dump(2) + "\n");
    } catch (...) {
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
