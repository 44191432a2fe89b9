// cli.hpp -- job specification, result serialization and the subcommand
// entry points behind the klq binary.

#pragma once

#include <string>
#include <vector>

#include "klq/affine.hpp"
#include "klq/oracle.hpp"
#include "klq/sysjson.hpp"

namespace klq {

struct JobSpec {
  // System source: named type or a Cartan JSON file (exactly one).
  std::string type;  // "A" | "affine-A" | ""
  int n = 0;
  std::string cartan_file;
  std::vector<long long> J_user;  // user-facing generator names
  bool J_given = false;

  // Target: word or weight (exactly one).
  std::vector<long long> word_user;
  bool has_word = false;
  std::vector<std::int64_t> weight;
  bool has_weight = false;
  std::int64_t p = 0;  // 0 = default n+1 for weight targets

  // Output.
  std::string out_path;  // empty = stdout
  bool mu_only = false;

  // Run options.
  std::string checkpoint_path;
  double checkpoint_interval_s = 600.0;
  int threads = 0;
  bool use_cache = false;
  std::size_t cache_capacity = 256;
  bool allow_unrestricted = false;
  int verify = 1;
  bool quiet = false;
  double progress_interval_s = 30.0;
};

struct ParsedArgs {
  std::string command;  // compute | resume | oracle-check | selftest
  JobSpec spec;
  std::uint32_t max_length = 0;  // oracle-check bound (0 = whole finite group)
};

// Parses a full argv (excluding the program name). Throws Errc::usage.
ParsedArgs parse_args(const std::vector<std::string>& args);

// "1,2,3" / "1..4" / "1,3..5" -> list of integers. Throws Errc::usage.
std::vector<long long> parse_index_list(const std::string& text);

CoxeterSystem system_from_spec(const JobSpec& spec);

Json result_to_json(const CoxeterSystem& sys, const KLResult& r, bool mu_only);

int run_compute(const JobSpec& spec);
int run_resume(const JobSpec& spec);
int run_oracle_check(const JobSpec& spec, std::uint32_t max_length);
int run_selftest();

// Full dispatcher: parse, run, map errors to exit codes.
int cli_main(int argc, char** argv);

}  // namespace klq
