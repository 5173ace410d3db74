#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gzroots/io.hpp"

namespace gz {

enum ExitCode { exit_ok = 0, exit_failed = 1, exit_config = 2, exit_divergence = 3 };

struct RunConfig {
  std::optional<int> rank;
  std::string top;
  std::optional<int> m;
  double generic_angle = 0.37;
  std::string convention;  // empty: generic without --m, otherwise flat or atypical by p1N - pNN
  std::optional<double> tol;
  double rank_tol = default_rank_tol;
  std::string out;
  std::string format = "json";
  std::string in;
  bool weights = false;
};

// --tol, then GZROOTS_TOL, then the default
double effective_tolerance(const RunConfig& c);

// Comma list highest first; with --rank N and N-1 values, p_NN = 0 is appended.
TopRow parse_top(const std::string& text, std::optional<int> rank);

std::string resolved_convention(const RunConfig& c, const TopRow& top);

Document build_document(const RunConfig& c);

struct ScenarioOutcome {
  bool ok = false;
  json report;
};

// flat-7, flat-18, atypical-15
ScenarioOutcome run_paper_case(const std::string& name, double rank_tol, std::ostream& out);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace gz
