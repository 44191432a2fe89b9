// cli.cpp

#include "klq/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <numeric>

#include "klq/ioutil.hpp"

namespace klq {

namespace {

std::atomic<bool> g_interrupted{false};

void sigint_handler(int) { g_interrupted.store(true); }

long long parse_ll(const std::string& tok) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    fail(Errc::usage, "not an integer: \"" + tok + "\"");
  }
  if (pos != tok.size()) fail(Errc::usage, "not an integer: \"" + tok + "\"");
  return v;
}

double default_checkpoint_interval() {
  if (const char* env = std::getenv("KLQ_CHECKPOINT_INTERVAL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      fail(Errc::usage, "KLQ_CHECKPOINT_INTERVAL is not a number");
    }
  }
  return 600.0;
}

void add_system_flags(CLI::App* cmd, JobSpec& spec, std::string& j_text) {
  cmd->add_option("--type", spec.type, "named system type: A or affine-A");
  cmd->add_option("--n", spec.n, "rank parameter for a named type");
  cmd->add_option("--cartan", spec.cartan_file,
                  "JSON file with {\"cartan\": [[..]], \"J\": [..]}");
  cmd->add_option("--J", j_text,
                  "parabolic subset, e.g. 1,2,3 or 1..4 (generator names)");
}

void add_run_flags(CLI::App* cmd, JobSpec& spec) {
  cmd->add_option("--threads", spec.threads,
                  "worker threads (0 = all available, 1 = serial)");
  cmd->add_flag("--cache", spec.use_cache,
                "enable the bounded product cache (speed/memory trade)");
  cmd->add_option("--cache-size", spec.cache_capacity,
                  "cache capacity when --cache is set");
  cmd->add_option("--checkpoint", spec.checkpoint_path, "checkpoint file path");
  cmd->add_option("--checkpoint-interval", spec.checkpoint_interval_s,
                  "seconds between checkpoints (0 = every opportunity)");
  cmd->add_option("--verify", spec.verify,
                  "verification level 0..2 (default 1)");
  cmd->add_option("-o,--out", spec.out_path, "result file (default: stdout)");
  cmd->add_flag("--mu-only", spec.mu_only, "emit only the mu table");
  cmd->add_flag("--quiet", spec.quiet, "suppress progress logging");
  cmd->add_option("--progress-interval", spec.progress_interval_s,
                  "seconds between progress lines");
}

}  // namespace

std::vector<long long> parse_index_list(const std::string& text) {
  std::vector<long long> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string tok = text.substr(start, comma - start);
    if (tok.empty()) fail(Errc::usage, "empty entry in list \"" + text + "\"");
    const std::size_t dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_ll(tok));
    } else {
      const long long lo = parse_ll(tok.substr(0, dots));
      const long long hi = parse_ll(tok.substr(dots + 2));
      if (hi < lo) fail(Errc::usage, "empty range \"" + tok + "\"");
      for (long long v = lo; v <= hi; ++v) out.push_back(v);
    }
    start = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

ParsedArgs parse_args(const std::vector<std::string>& args) {
  ParsedArgs parsed;
  parsed.spec.checkpoint_interval_s = default_checkpoint_interval();

  CLI::App app{"targeted Kazhdan-Lusztig basis element computation"};
  app.require_subcommand(1);

  std::string j_text, word_text, weight_text;

  CLI::App* compute = app.add_subcommand("compute", "compute one target");
  add_system_flags(compute, parsed.spec, j_text);
  compute->add_option("--word", word_text,
                      "reduced word of y, e.g. 2,1,3,2 (generator names)");
  compute->add_option("--weight", weight_text,
                      "dominant weight for the affine driver, e.g. 2,3,3,2");
  compute->add_option("--p", parsed.spec.p, "characteristic-like parameter");
  compute->add_flag("--allow-unrestricted", parsed.spec.allow_unrestricted,
                    "accept weights outside the p-restricted range");
  add_run_flags(compute, parsed.spec);

  CLI::App* resume = app.add_subcommand("resume", "continue from a checkpoint");
  resume->add_option("--checkpoint", parsed.spec.checkpoint_path,
                     "checkpoint file to resume")
      ->required();
  resume->add_option("--word", word_text, "expected target word (optional check)");
  resume->add_option("--threads", parsed.spec.threads, "worker threads");
  resume->add_option("--checkpoint-interval", parsed.spec.checkpoint_interval_s,
                     "seconds between checkpoints");
  resume->add_option("--verify", parsed.spec.verify, "verification level 0..2");
  resume->add_option("-o,--out", parsed.spec.out_path,
                     "result file (default: from the checkpoint's job block)");
  resume->add_flag("--quiet", parsed.spec.quiet, "suppress progress logging");
  resume->add_option("--progress-interval", parsed.spec.progress_interval_s,
                     "seconds between progress lines");

  CLI::App* ocheck = app.add_subcommand("oracle-check",
                                        "cross-check the engine against the "
                                        "recursion oracle on a whole system");
  add_system_flags(ocheck, parsed.spec, j_text);
  ocheck->add_option("--max-length", parsed.max_length,
                     "length bound (required for infinite groups)");

  app.add_subcommand("selftest", "run the built-in invariant suite");

  std::vector<char*> argv;
  std::string prog = "klq";
  argv.push_back(prog.data());
  std::vector<std::string> own = args;
  for (auto& a : own) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    fail(Errc::usage, e.what());
  }

  parsed.command = app.get_subcommands().front()->get_name();
  if (!j_text.empty()) {
    parsed.spec.J_user = parse_index_list(j_text);
    parsed.spec.J_given = true;
  }
  if (!word_text.empty()) {
    parsed.spec.word_user = parse_index_list(word_text);
    parsed.spec.has_word = true;
  } else if (compute->count("--word") || resume->count("--word")) {
    parsed.spec.has_word = true;  // explicit empty word targets the identity
  }
  if (!weight_text.empty()) {
    for (long long v : parse_index_list(weight_text))
      parsed.spec.weight.push_back(v);
    parsed.spec.has_weight = true;
  }

  if (parsed.command == "compute") {
    if (parsed.spec.has_word == parsed.spec.has_weight)
      fail(Errc::usage, "pass exactly one of --word and --weight");
    const bool has_type = !parsed.spec.type.empty();
    const bool has_cartan = !parsed.spec.cartan_file.empty();
    if (has_type == has_cartan)
      fail(Errc::usage, "pass exactly one of --type and --cartan");
    if (has_type && parsed.spec.type != "A" && parsed.spec.type != "affine-A")
      fail(Errc::usage, "--type must be A or affine-A");
    if (has_type && parsed.spec.n < 1) fail(Errc::usage, "--n must be >= 1");
    if (parsed.spec.has_weight && parsed.spec.type != "affine-A")
      fail(Errc::usage, "--weight requires --type affine-A");
    if (parsed.spec.verify < 0 || parsed.spec.verify > 2)
      fail(Errc::usage, "--verify must be 0, 1 or 2");
  }
  if (parsed.command == "oracle-check") {
    const bool has_type = !parsed.spec.type.empty();
    const bool has_cartan = !parsed.spec.cartan_file.empty();
    if (has_type == has_cartan)
      fail(Errc::usage, "pass exactly one of --type and --cartan");
  }
  return parsed;
}

CoxeterSystem system_from_spec(const JobSpec& spec) {
  if (!spec.cartan_file.empty()) {
    Json j = Json::parse(read_file(spec.cartan_file), nullptr, false);
    if (j.is_discarded())
      fail(Errc::invalid_input, spec.cartan_file + " is not valid JSON");
    if (spec.J_given) {
      Json jj = Json::array();
      for (long long v : spec.J_user) jj.push_back(v);
      j["J"] = std::move(jj);
    }
    return system_from_json(j);
  }
  Json j;
  j["type"] = spec.type;
  j["n"] = spec.n;
  Json jj = Json::array();
  for (long long v : spec.J_user) jj.push_back(v);
  j["J"] = std::move(jj);
  return system_from_json(j);
}

Json result_to_json(const CoxeterSystem& sys, const KLResult& r, bool mu_only) {
  Json j;
  j["format"] = "klq-result";
  j["version"] = 1;
  j["system"] = system_to_json(sys);
  Json yw = Json::array();
  for (long long v : word_to_user(sys, r.y_word)) yw.push_back(v);
  j["y_word"] = std::move(yw);
  j["length"] = r.y_length;
  if (!mu_only) {
    Json entries = Json::array();
    for (const KLEntry& e : r.entries) {
      Json je;
      Json xw = Json::array();
      for (long long v : word_to_user(sys, e.x_word)) xw.push_back(v);
      je["x_word"] = std::move(xw);
      je["length"] = e.length;
      Json coeffs = Json::array();
      for (const BigInt& c : e.p) coeffs.push_back(to_decimal(c));
      je["P"] = std::move(coeffs);
      entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
  }
  Json mus = Json::array();
  for (const KLEntry& e : r.entries) {
    if (e.mu == 0) continue;
    Json jm;
    Json xw = Json::array();
    for (long long v : word_to_user(sys, e.x_word)) xw.push_back(v);
    jm["x_word"] = std::move(xw);
    jm["value"] = to_decimal(e.mu);
    mus.push_back(std::move(jm));
  }
  j["mu"] = std::move(mus);
  // Wall-clock time is deliberately not serialized: result files must be
  // byte-identical across reruns of the same job.
  Json stats;
  stats["waves"] = r.stats.counters.waves;
  stats["corrections"] = r.stats.counters.corrections;
  stats["peak_support"] = r.stats.counters.peak_support;
  j["stats"] = std::move(stats);
  return j;
}

namespace {

EngineOptions engine_options_from_spec(const JobSpec& spec) {
  EngineOptions opt;
  opt.threads = spec.threads;
  opt.use_cache = spec.use_cache;
  opt.cache_capacity = spec.cache_capacity;
  opt.checkpoint_path = spec.checkpoint_path;
  opt.checkpoint_interval_s = spec.checkpoint_interval_s;
  opt.verify = spec.verify;
  if (!spec.quiet) {
    const double interval = spec.progress_interval_s;
    auto last = std::make_shared<double>(-1e9);
    opt.progress = [interval, last](const EngineProgress& p) {
      if (g_interrupted.load()) return false;
      if (p.elapsed_s - *last >= interval) {
        *last = p.elapsed_s;
        std::fprintf(stderr,
                     "[klq] wave length=%u %llu/%llu support=%llu "
                     "corrections=%llu t=%.1fs\n",
                     p.wave_length,
                     static_cast<unsigned long long>(p.wave_done),
                     static_cast<unsigned long long>(p.wave_size),
                     static_cast<unsigned long long>(p.support),
                     static_cast<unsigned long long>(p.corrections),
                     p.elapsed_s);
      }
      return true;
    };
  } else {
    opt.progress = [](const EngineProgress&) { return !g_interrupted.load(); };
  }
  return opt;
}

void emit_result(const CoxeterSystem& sys, const KLResult& r, const JobSpec& spec) {
  const Json j = result_to_json(sys, r, spec.mu_only);
  const std::string text = j.dump(1) + "\n";
  if (spec.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_file_atomic(spec.out_path, text);
  }
  if (!spec.quiet)
    std::fprintf(stderr,
                 "[klq] done: length=%u entries=%zu waves=%llu "
                 "corrections=%llu peak_support=%llu elapsed=%.2fs\n",
                 r.y_length, r.entries.size(),
                 static_cast<unsigned long long>(r.stats.counters.waves),
                 static_cast<unsigned long long>(r.stats.counters.corrections),
                 static_cast<unsigned long long>(r.stats.counters.peak_support),
                 r.stats.elapsed_s);
}

Json job_block(const JobSpec& spec) {
  Json j;
  j["out"] = spec.out_path;
  j["mu_only"] = spec.mu_only;
  return j;
}

}  // namespace

int run_compute(const JobSpec& spec) {
  EngineOptions opt = engine_options_from_spec(spec);
  Json extra;
  extra["job"] = job_block(spec);
  opt.checkpoint_extra = std::move(extra);

  if (spec.has_word) {
    const CoxeterSystem sys = system_from_spec(spec);
    ElementPool pool(sys);
    const Word w = word_from_user(sys, spec.word_user);
    const GroupElement y = word_to_element(sys, w, /*require_reduced=*/true);
    if (!is_min_coset_rep(sys, y))
      fail(Errc::not_coset_rep,
           "target word is not a minimal coset representative");
    const KLResult r = compute_target(pool, w, opt);
    emit_result(sys, r, spec);
    return 0;
  }

  // Weight target: the affine driver owns the system (J = {1..n}).
  const int n = spec.n;
  if (spec.J_given) {
    std::vector<long long> want(n);
    std::iota(want.begin(), want.end(), 1);
    if (spec.J_user != want)
      fail(Errc::invalid_input,
           "weight targets require J = 1.." + std::to_string(n));
  }
  const std::int64_t p = spec.p > 0 ? spec.p : n + 1;
  Weight nu{spec.weight};
  const CoxeterSystem sys = affine_system(n);
  ElementPool pool(sys);
  const AffineReport rep =
      run_case(pool, n, p, nu, opt, spec.allow_unrestricted);
  if (rep.negative_coefficient)
    std::fprintf(stderr,
                 "[klq] warning: negative coefficient in a polynomial "
                 "(diagnostic only)\n");
  if (!spec.quiet)
    std::fprintf(stderr, "[klq] weight %s -> y of length %u, mu(e) = %s\n",
                 nu.to_string().c_str(), rep.target.y_length,
                 to_decimal(rep.mu_e).c_str());
  emit_result(sys, rep.result, spec);
  return 0;
}

int run_resume(const JobSpec& spec) {
  const Json raw = checkpoint_read_raw(spec.checkpoint_path);
  if (!raw.contains("system"))
    fail(Errc::corrupt_checkpoint, "checkpoint lacks a system block");
  const CoxeterSystem sys = system_from_json(raw.at("system"));
  ElementPool pool(sys);
  EngineState state = checkpoint_from_json(pool, raw);
  if (state.fingerprint != sys.fingerprint())
    fail(Errc::fingerprint_mismatch,
         "checkpoint fingerprint does not match its own system block");
  if (spec.has_word) {
    const Word expect = word_from_user(sys, spec.word_user);
    if (expect != state.y_word)
      fail(Errc::fingerprint_mismatch,
           "checkpoint was taken for a different target word");
  }

  JobSpec out_spec = spec;
  if (raw.contains("job")) {
    const Json& job = raw.at("job");
    if (out_spec.out_path.empty() && job.contains("out"))
      out_spec.out_path = job.at("out").get<std::string>();
    if (job.contains("mu_only")) out_spec.mu_only = job.at("mu_only").get<bool>();
  }

  EngineOptions opt = engine_options_from_spec(out_spec);
  opt.checkpoint_path = spec.checkpoint_path;
  Json extra;
  extra["job"] = job_block(out_spec);
  opt.checkpoint_extra = std::move(extra);

  const KLResult r = resume_target(pool, std::move(state), opt);
  emit_result(sys, r, out_spec);
  return 0;
}

int run_oracle_check(const JobSpec& spec, std::uint32_t max_length) {
  const CoxeterSystem sys = system_from_spec(spec);
  EngineOptions opt;
  opt.verify = 2;
  const CompareReport rep = compare_system(sys, max_length, opt);
  if (!rep.equal) {
    std::fprintf(stderr, "oracle-check FAILED: %s\n", rep.divergence.c_str());
    fail(Errc::internal_invariant, rep.divergence);
  }
  std::printf("all %llu targets match\n",
              static_cast<unsigned long long>(rep.targets));
  return 0;
}

int run_selftest() {
  // Ring sanity on a deterministic set of polynomials.
  {
    std::vector<LaurentPoly> ps;
    for (int seed = 0; seed < 8; ++seed) {
      std::vector<LaurentPoly::Term> terms;
      for (int k = -4; k <= 4; ++k) {
        const long c = ((seed + 3) * (k + 7) * 2654435761u) % 13 - 6;
        if (c != 0) terms.emplace_back(k, BigInt(c));
      }
      ps.push_back(LaurentPoly::from_terms(std::move(terms)));
    }
    for (const auto& f : ps) {
      for (const auto& g : ps) {
        if (f * g != g * f) fail(Errc::internal_invariant, "mul not commutative");
        if ((f * g).bar() != f.bar() * g.bar())
          fail(Errc::internal_invariant, "bar is not multiplicative");
        const LaurentPoly c = correction_poly(f + g);
        if (!c.is_bar_symmetric())
          fail(Errc::internal_invariant, "correction cover not bar-symmetric");
        if (!((f + g) - c).is_strictly_negative())
          fail(Errc::internal_invariant, "correction cover leaves residue");
      }
    }
  }

  // Engine invariants on a small corpus, full verification enabled.
  EngineOptions opt;
  opt.verify = 2;
  const std::vector<CoxeterSystem> systems = {
      type_a(2), type_a(2, {0}), type_a(3),
      build_system({{2, -1}, {-2, 2}}, {}), affine_system(2)};
  for (const CoxeterSystem& sys : systems) {
    ElementPool pool(sys);
    const std::uint32_t bound = sys.type_name == "affine-A" ? 8 : 0;
    for (ElemId y : enumerate_quotient(pool, bound)) {
      const KLResult r = compute_target(pool, pool.word(y), opt);
      ModuleVector back = result_to_vector(pool, r);
      if (!find_offenders(pool, back, y).empty())
        fail(Errc::internal_invariant, "finished vector still has offenders");
      for (const KLEntry& e : r.entries) {
        if (e.length == r.y_length) continue;
        const std::uint32_t ldiff = r.y_length - e.length;
        if (2 * (e.p.size() - 1) > (ldiff - 1))
          fail(Errc::internal_invariant, "degree bound violated");
      }
    }
  }
  std::printf("selftest: ok\n");
  return 0;
}

int cli_main(int argc, char** argv) {
  std::signal(SIGINT, sigint_handler);
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const ParsedArgs parsed = parse_args(args);
    if (parsed.command == "compute") return run_compute(parsed.spec);
    if (parsed.command == "resume") return run_resume(parsed.spec);
    if (parsed.command == "oracle-check")
      return run_oracle_check(parsed.spec, parsed.max_length);
    return run_selftest();
  } catch (const Error& e) {
    if (e.code() == Errc::interrupted)
      std::fprintf(stderr, "klq: interrupted; checkpoint saved if a path was set\n");
    else
      std::fprintf(stderr, "klq: error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "klq: internal error: %s\n", e.what());
    return 5;
  }
}

}  // namespace klq
