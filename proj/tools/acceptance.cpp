#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "arithdyn/app/acceptance.hpp"

namespace {

namespace fs = std::filesystem;
using namespace arithdyn;
using namespace arithdyn::app;

constexpr double kSuiteLimitSeconds = 900.0;

// Relative path -> contents of every regular file below root.
std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  return out;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs the CLI selftest into dir; returns the shell status.
int run_selftest(const std::string& cli, const fs::path& dir, std::uint64_t seed, unsigned threads) {
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  const std::string cmd = quote(cli) + " selftest --seed " + std::to_string(seed) + " --threads " +
                          std::to_string(threads) + " --out " + quote(dir.string()) + " > " +
                          quote(dir.string() + ".stdout") + " 2> " + quote(dir.string() + ".stderr");
  return std::system(cmd.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion."};
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string cli = ARITHDYN_CLI_PATH;
  std::string work = (fs::temp_directory_path() / "arithdyn_acceptance").string();
  std::string expected;
  app.add_option("--seed", seed, "seed of every randomized criterion")->capture_default_str();
  app.add_option("--threads", threads, "worker threads, 0 = all hardware threads")->capture_default_str();
  app.add_option("--cli", cli, "arithdyn executable used by the reproducibility criterion")->capture_default_str();
  app.add_option("--work", work, "scratch directory for the reproducibility runs")->capture_default_str();
  app.add_option("--expected-failures", expected,
                 "criterion ids, separated by ';', whose failure is documented; the exit status is 0 when "
                 "exactly these fail");
  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  const SuiteContext ctx{seed, threads};
  std::set<int> failed;
  for (const auto& c : criteria()) {
    const CriterionOutcome o = run_criterion(c, ctx);
    std::cout << outcome_line(o) << std::endl;
    if (!o.passed()) failed.insert(o.id);
  }

  CriterionOutcome repro;
  repro.id = 20;
  repro.name = "reproducibility";
  repro.limit_seconds = kSuiteLimitSeconds;
  const fs::path a = fs::path(work) / "A", b = fs::path(work) / "B";
  const int sa = run_selftest(cli, a, seed, threads), sb = run_selftest(cli, b, seed, threads);
  const auto ta = snapshot(a), tb = snapshot(b);
  std::size_t differing = 0;
  for (const auto& [name, content] : ta) {
    const auto it = tb.find(name);
    if (it == tb.end() || it->second != content) ++differing;
  }
  for (const auto& [name, _] : tb)
    if (!ta.count(name)) ++differing;
  std::size_t bytes = 0;
  for (const auto& [_, content] : ta) bytes += content.size();
  const bool ran = sa != -1 && sb != -1 && ta.count("summary.json") == 1;
  repro.pass = ran && differing == 0 && sa == sb;
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  repro.detail = "two selftest runs with seed " + std::to_string(seed) + ": " + std::to_string(ta.size()) + " files, " +
                 std::to_string(bytes) + " bytes, " + std::to_string(differing) + " differ" +
                 (ran ? "" : " (selftest did not produce its artifacts)") + "; whole suite " +
                 app::detail::fmt("%.1f", total) + " s (limit 900 s)";
  // The wall-time budget covers the whole suite, not only the two runs.
  repro.seconds = total;
  std::cout << outcome_line(repro) << std::endl;
  if (!repro.passed()) failed.insert(20);

  std::set<int> allowed;
  if (!expected.empty())
    for (const auto& item : split(expected, ';')) allowed.insert(std::stoi(item));
  std::string list;
  for (int id : failed) list += (list.empty() ? "" : ",") + std::to_string(id);
  std::cout << "acceptance: " << 20 - failed.size() << "/20 passed";
  if (!failed.empty()) std::cout << "; failed: " << list;
  if (!allowed.empty()) std::cout << (failed == allowed ? " (matches the documented failures)" : " (documented failures differ)");
  std::cout << std::endl;
  return failed == allowed ? 0 : 1;
}
