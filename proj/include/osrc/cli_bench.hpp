#ifndef OSRC_CLI_BENCH_HPP
#define OSRC_CLI_BENCH_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "osrc/errors.hpp"

namespace osrc
{

inline constexpr const char *kReportSchema = "osrc-efie/1";
inline constexpr const char *kToolVersion = "1.0.0";

enum ExitCode : int
{
  kExitOk = 0,
  kExitDomain = 1,
  kExitUsage = 2
};

// Failure inside a named module; the CLI prints the module with the message.
class ModuleError : public Error
{
public:
  ModuleError(std::string module, const std::string &what)
      : Error(what), module_(std::move(module))
  {
  }
  const std::string &Module() const { return module_; }

private:
  std::string module_;
};

// Flat "key = value" settings grouped under "[section]" headers. Keys are stored
// as "section.key"; lines before any header belong to the "global" section.
class ExperimentConfig
{
public:
  static ExperimentConfig Parse(const std::string &text);
  static ExperimentConfig Load(const std::string &path);

  void Set(const std::string &key, const std::string &value);
  bool Has(const std::string &key) const;
  std::string Get(const std::string &key, const std::string &fallback = "") const;
  double GetDouble(const std::string &key, double fallback) const;
  int GetInt(const std::string &key, int fallback) const;
  std::vector<double> GetDoubles(const std::string &key,
                                 const std::vector<double> &fallback) const;
  std::vector<int> GetInts(const std::string &key, const std::vector<int> &fallback) const;
  std::vector<std::string> GetList(const std::string &key,
                                   const std::vector<std::string> &fallback) const;

  // Throws UsageError naming the first key outside the allowed set.
  void RequireKnown(const std::set<std::string> &allowed) const;

  // Settings of one section with the section prefix removed.
  ExperimentConfig Section(const std::string &section) const;
  const std::map<std::string, std::string> &Values() const { return values_; }

  // "# key = value" lines, one per setting, for CSV headers.
  std::string CommentBlock() const;

private:
  std::map<std::string, std::string> values_;
};

// Numbers such as "pi", "2pi", "0.5*pi" or plain decimals.
double ParseNumber(const std::string &text);

// Writes to a temporary sibling and renames it into place.
void WriteFileAtomic(const std::string &path, const std::string &content);

std::string Sha256Hex(const std::string &data);

std::vector<std::string> ReproRecipes();

struct ReproResult
{
  std::vector<std::string> files;  // artifact paths, manifest last
};

// Runs a named recipe with settings from config (section-free keys) into out_dir.
ReproResult repro(const std::string &recipe, const std::string &out_dir,
                  const ExperimentConfig &config);

// Command-line entry point. Returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace osrc

#endif  // OSRC_CLI_BENCH_HPP
