// Command-line front end: run verification suites, print tables, write JSON reports.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage error,
// invalid field or budget exceeded.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parafourier/tables.hpp"

namespace pf = parafourier;

namespace {

struct Options {
  std::string suite;
  bool all = false;
  std::vector<int> qs;
  std::vector<int> modulus;
  int d = 0;
  int n = 0;
  int samples = 25;
  std::uint64_t seed = 0;
  std::size_t budget = pf::kDefaultBudget;
  std::string out;
  std::string format;
  std::string kind;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

pf::SuiteOptions suite_options(const Options& o, int q) {
  pf::SuiteOptions s;
  s.field = pf::FieldSpec::from_q(q, o.modulus);
  if (o.d > 0) s.d = o.d;
  if (o.n > 0) s.n = o.n;
  s.samples = o.samples;
  s.seed = o.seed;
  s.budget = o.budget;
  return s;
}

int single_q(const Options& o) {
  if (o.qs.size() != 1) throw UsageError("give exactly one --q");
  return o.qs.front();
}

void write_json(const pf::Json& j, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << j.dump(2) << '\n';
}

void print_text(const pf::SuiteReport& r, std::ostream& os) {
  for (const auto& c : r.checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.details << '\n';
  os << r.suite << " over " << r.field.describe() << ": " << (r.pass() ? "pass" : "fail") << " (" << r.checks.size() << " checks, "
     << r.failures() << " failed, " << r.wall_time_ms << " ms)\n";
}

int cmd_verify(const Options& o) {
  if (o.suite.empty()) throw UsageError("--suite is required");
  const auto& names = pf::suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw UsageError("unknown suite '" + o.suite + "'");
  pf::SuiteReport r = pf::run_suite(o.suite, suite_options(o, single_q(o)));
  if (o.format == "json")
    std::cout << pf::to_json(r).dump(2) << '\n';
  else
    print_text(r, std::cout);
  if (!o.out.empty()) write_json(pf::to_json(r), o.out);
  return r.pass() ? 0 : 1;
}

int cmd_table(const Options& o) {
  if (!o.format.empty() && o.format != "csv") throw UsageError("tables are CSV only");
  const int q = single_q(o);
  auto ctx = pf::CharacterContext::make(pf::FieldSpec::from_q(q, o.modulus));
  std::string csv;
  bool ok = true;
  if (o.kind == "kloosterman") {
    csv = pf::kloosterman_csv(*ctx);
  } else {
    auto X = pf::enumerate_quadric(o.d > 0 ? o.d : 2, ctx, o.budget);
    auto rows = pf::casesfor_rows(*X, o.seed, o.samples);
    for (const auto& r : rows) ok = ok && r.match;
    csv = pf::casesfor_csv(rows);
  }
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot open " + o.out + " for writing");
    f << csv;
  }
  return ok ? 0 : 1;
}

int cmd_count(const Options& o) {
  const int q = single_q(o), d = o.d > 0 ? o.d : 2;
  auto ctx = pf::CharacterContext::make(pf::FieldSpec::from_q(q, o.modulus));
  const std::size_t formula = pf::QuadricSet::expected_count(d, q);
  const std::size_t count = pf::enumerate_quadric(d, ctx, o.budget)->size();
  if (o.format == "json")
    std::cout << pf::Json{{"d", d}, {"q", q}, {"count", count}, {"formula", formula}}.dump() << '\n';
  else
    std::cout << count << '\n';
  return count == formula ? 0 : 1;
}

int cmd_report(const Options& o) {
  if (!o.all && o.suite.empty()) throw UsageError("empty suite list: give --all or --suite");
  if (o.qs.empty()) throw UsageError("give at least one --q");
  std::vector<pf::SuiteReport> reports;
  for (int q : o.qs) {
    pf::SuiteOptions base = suite_options(o, q);
    std::vector<std::pair<std::string, pf::SuiteOptions>> runs;
    if (o.all || o.suite == "all")
      runs = pf::expand_all(base);
    else
      runs.emplace_back(o.suite, base);
    for (const auto& [name, opts] : runs) {
      reports.push_back(pf::run_suite(name, opts));
      std::cerr << pf::run_label(name, opts) << " over " << opts.field.describe() << ": " << (reports.back().pass() ? "pass" : "fail")
                << '\n';
    }
  }
  pf::Json doc = pf::aggregate_to_json(reports);
  if (o.out.empty())
    std::cout << doc.dump(2) << '\n';
  else
    write_json(doc, o.out);
  return doc["status"] == "pass" ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact verification of Fourier transforms on finite-field quadrics and their group models"};
  app.require_subcommand(1);

  auto field_flags = [&](CLI::App* c, bool many_q) {
    auto* q = c->add_option("--q", o.qs, many_q ? "field sizes (one report per size)" : "field size q = p^m")->required();
    if (many_q) q->delimiter(',');
    c->add_option("--modulus", o.modulus, "monic irreducible modulus, little-endian, e.g. 1,1,1 for F_4")->delimiter(',');
    c->add_option("--budget", o.budget, "largest point set allowed")->check(CLI::PositiveNumber);
  };
  auto run_flags = [&](CLI::App* c) {
    c->add_option("--d", o.d, "quadric dimension")->check(CLI::Range(1, 4));
    c->add_option("--n", o.n, "mirabolic rank")->check(CLI::Range(2, 4));
    c->add_option("--samples", o.samples, "sample count for sampled checks")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "PRNG seed");
    c->add_option("--out", o.out, "write the result to this file");
  };

  auto* verify = app.add_subcommand("verify", "run one suite and report pass/fail");
  verify->add_option("--suite", o.suite, "charsums, quadric, sl2, mirabolic, sl3, sp4 or all")->required();
  field_flags(verify, false);
  run_flags(verify);
  verify->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* table = app.add_subcommand("table", "print a CSV table");
  table->add_option("kind", o.kind, "kloosterman or casesfor")->required()->check(CLI::IsMember({"kloosterman", "casesfor"}));
  field_flags(table, false);
  run_flags(table);
  table->add_option("--format", o.format, "csv")->check(CLI::IsMember({"csv"}));

  auto* count = app.add_subcommand("count", "count points on the quadric");
  count->add_option("what", o.kind, "points")->required()->check(CLI::IsMember({"points"}));
  field_flags(count, false);
  count->add_option("--d", o.d, "quadric dimension")->check(CLI::Range(1, 4));
  count->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* report = app.add_subcommand("report", "run suites over several fields into one JSON document");
  report->add_flag("--all", o.all, "every suite that fits the budget");
  report->add_option("--suite", o.suite, "a single suite instead of --all");
  field_flags(report, true);
  run_flags(report);
  report->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*table) return cmd_table(o);
    if (*count) return cmd_count(o);
    return cmd_report(o);
  } catch (const pf::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
