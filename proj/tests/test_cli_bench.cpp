#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "osrc/cli_bench.hpp"

namespace fs = std::filesystem;

namespace
{

struct RunResult
{
  int code;
  std::string out;
  std::string err;
};

RunResult Run(std::vector<std::string> args)
{
  args.insert(args.begin(), "osrc-cli");
  std::vector<const char *> argv;
  for (const auto &a : args)
  {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = osrc::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path Scratch(const std::string &name)
{
  const fs::path p = fs::temp_directory_path() / ("osrc_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Data lines of a CSV, skipping "#" comments and the header.
std::vector<std::vector<std::string>> Rows(const std::string &csv)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    if (header)
    {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ','))
    {
      cells.push_back(cell);
    }
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("number parsing")
{
  CHECK(osrc::ParseNumber("1.5") == 1.5);
  CHECK(osrc::ParseNumber("pi") == std::numbers::pi);
  CHECK(osrc::ParseNumber("2pi") == 2.0 * std::numbers::pi);
  CHECK(osrc::ParseNumber("0.5*pi") == 0.5 * std::numbers::pi);
  CHECK(osrc::ParseNumber(" 1e-5 ") == 1e-5);
  CHECK_THROWS_AS(osrc::ParseNumber("abc"), osrc::UsageError);
  CHECK_THROWS_AS(osrc::ParseNumber("1.5x"), osrc::UsageError);
  CHECK_THROWS_AS(osrc::ParseNumber(""), osrc::UsageError);
}

TEST_CASE("experiment configuration")
{
  const auto c = osrc::ExperimentConfig::Parse(
      "seed = 3\n# comment\n[solve]\nkappa = 2pi\n; other comment\nformulations = efie, mte_efie\n"
      "[benchmark]\nsubdivisions = 1,2\n");
  CHECK(c.Get("global.seed") == "3");
  CHECK(c.GetDouble("solve.kappa", 0.0) == 2.0 * std::numbers::pi);
  CHECK(c.GetList("solve.formulations", {}) == std::vector<std::string>{"efie", "mte_efie"});
  CHECK(c.GetInts("benchmark.subdivisions", {}) == std::vector<int>{1, 2});
  CHECK(c.GetInt("solve.missing", 7) == 7);
  CHECK_FALSE(c.Has("kappa"));
  const auto s = c.Section("solve");
  CHECK(s.Has("kappa"));
  CHECK(s.Values().size() == 2);
  CHECK(s.CommentBlock().find("# kappa = 2pi\n") != std::string::npos);
  CHECK_NOTHROW(c.RequireKnown({"global.seed", "solve.kappa", "solve.formulations", "benchmark.subdivisions"}));
  CHECK_THROWS_AS(c.RequireKnown({"global.seed"}), osrc::UsageError);
  CHECK_THROWS_AS(osrc::ExperimentConfig::Parse("[solve\nkappa = 1\n"), osrc::UsageError);
  CHECK_THROWS_AS(osrc::ExperimentConfig::Parse("kappa 1\n"), osrc::UsageError);
  CHECK_THROWS_AS(osrc::ExperimentConfig::Load("/nonexistent/osrc.cfg"), osrc::UsageError);
}

TEST_CASE("atomic writes and digests")
{
  const fs::path dir = Scratch("atomic");
  const std::string path = (dir / "a.txt").string();
  osrc::WriteFileAtomic(path, "first");
  osrc::WriteFileAtomic(path, "second");
  CHECK(Slurp(path) == "second");
  int entries = 0;
  for ([[maybe_unused]] const auto &e : fs::directory_iterator(dir))
  {
    ++entries;
  }
  CHECK(entries == 1);
  CHECK(osrc::Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(osrc::Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  fs::remove_all(dir);
}

TEST_CASE("exit codes")
{
  CHECK(Run({"--help"}).code == osrc::kExitOk);
  CHECK(Run({"solve", "--help"}).code == osrc::kExitOk);
  CHECK(Run({}).code == osrc::kExitUsage);
  CHECK(Run({"frobnicate"}).code == osrc::kExitUsage);
  CHECK(Run({"solve", "--icosphere", "1", "--bogus"}).code == osrc::kExitUsage);
  const auto bad = Run({"solve", "--icosphere", "1", "--kappa", "abc"});
  CHECK(bad.code == osrc::kExitUsage);
  CHECK(bad.err.find("usage error") != std::string::npos);
  CHECK(Run({"solve", "--icosphere", "1", "--kappa", "-1"}).code == osrc::kExitUsage);
  CHECK(Run({"solve", "--icosphere", "1", "--mesh", "x.off"}).code == osrc::kExitUsage);
  const auto missing = Run({"solve", "--mesh", "/nonexistent/mesh.off"});
  CHECK(missing.code == osrc::kExitDomain);
  CHECK(missing.err.find("error in surface_mesh") != std::string::npos);
  CHECK(Run({"repro", "bogus"}).code == osrc::kExitUsage);
}

TEST_CASE("spectrum command and configuration precedence")
{
  const fs::path dir = Scratch("spectrum");
  const auto r = Run({"spectrum", "--modes", "3", "--formulations", "efie"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# modes = 3") != std::string::npos);
  CHECK(Rows(r.out).size() == 6);

  const std::string cfg = (dir / "exp.cfg").string();
  {
    std::ofstream f(cfg);
    f << "[spectrum]\nmodes = 4\nformulations = calderon\n";
  }
  const auto from_file = Run({"--config", cfg, "spectrum"});
  REQUIRE(from_file.code == 0);
  CHECK(Rows(from_file.out).size() == 8);
  CHECK(from_file.out.find("calderon,1,") != std::string::npos);
  const auto flag_wins = Run({"--config", cfg, "spectrum", "--modes", "2"});
  CHECK(Rows(flag_wins.out).size() == 4);
  {
    std::ofstream f(cfg);
    f << "[spectrum]\nmodez = 4\n";
  }
  const auto unknown = Run({"--config", cfg, "spectrum"});
  CHECK(unknown.code == osrc::kExitUsage);
  CHECK(unknown.err.find("modez") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("solve command report")
{
  const auto r = Run({"solve", "--icosphere", "1", "--formulation", "mte_efie"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == osrc::kReportSchema);
  CHECK(j["command"] == "solve");
  CHECK(j.contains("config"));
  CHECK(j["report"]["converged"] == true);
  CHECK(j["report"]["iterations"].get<int>() > 0);
}

TEST_CASE("repro recipes")
{
  const auto names = osrc::ReproRecipes();
  CHECK(names.size() == 9);
  const fs::path dir = Scratch("repro");

  const auto cal = Run({"repro", "fig-calderon", "--out-dir", (dir / "cal").string()});
  REQUIRE(cal.code == 0);
  const std::string csv = Slurp(dir / "cal" / "calderon_eigs.csv");
  CHECK(csv.rfind("# recipe = fig-calderon\n", 0) == 0);
  for (const auto &row : Rows(csv))
  {
    const int m = std::stoi(row[1]);
    if (m >= 50 && m <= 200)
    {
      CHECK(std::abs(std::stod(row[3]) + 0.25) < 0.01);
    }
  }
  const auto manifest = nlohmann::json::parse(Slurp(dir / "cal" / "manifest.json"));
  CHECK(manifest["recipe"] == "fig-calderon");
  REQUIRE(manifest["outputs"].size() == 1);
  CHECK(manifest["outputs"][0]["sha256"] == osrc::Sha256Hex(csv));
  CHECK(manifest["outputs"][0]["bytes"] == csv.size());
  CHECK(manifest["versions"].contains("eigen"));

  const auto again = Run({"repro", "fig-calderon", "--out-dir", (dir / "cal2").string()});
  REQUIRE(again.code == 0);
  CHECK(Slurp(dir / "cal2" / "calderon_eigs.csv") == csv);

  const auto pade = Run({"repro", "fig-pade-convergence", "--out-dir", (dir / "pade").string()});
  REQUIRE(pade.code == 0);
  std::set<std::string> orders;
  for (const auto &row : Rows(Slurp(dir / "pade" / "pade_convergence.csv")))
  {
    orders.insert(row[0]);
  }
  CHECK(orders == std::set<std::string>{"5", "10", "15"});

  osrc::ExperimentConfig c;
  c.Set("modes", "5");
  const auto direct = osrc::repro("fig-efie-eigs", (dir / "efie").string(), c);
  CHECK(direct.files.size() == 2);
  CHECK(fs::path(direct.files.back()).filename() == "manifest.json");
  CHECK(Rows(Slurp(direct.files.front())).size() == 10);
  CHECK_THROWS_AS(osrc::repro("nope", (dir / "nope").string(), c), osrc::UsageError);
  fs::remove_all(dir);
}
