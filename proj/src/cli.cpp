#include "normlab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include "normlab/congruence.hpp"
#include "normlab/counting.hpp"
#include "normlab/digits.hpp"
#include "normlab/normality.hpp"
#include "normlab/report.hpp"
#include "normlab/sequences.hpp"
#include "normlab/split.hpp"
#include "normlab/version.hpp"

namespace normlab {

namespace {

struct CommonOpts {
  unsigned threads = 0;  // 0 = auto
  std::string format = "plain";
  std::string out_path;
};

Pattern parse_pattern(const std::string& text, Base g) {
  auto digits = parse_digit_text(text, g);
  if (digits.empty()) throw std::invalid_argument("pattern must be non-empty");
  return Pattern(g, std::move(digits));
}

ordered_json census_payload(const CensusReport& report) {
  ordered_json payload;
  payload["kind"] = report.kind;
  payload["g"] = report.g;
  payload["k"] = report.k;
  payload["eps"] = rational_json(report.eps);
  if (report.kind == "integers") {
    payload["lo"] = report.lo;
    payload["hi"] = report.hi;
  } else {
    payload["length"] = report.length;
  }
  payload["total"] = report.total;
  payload["bad_count"] = report.bad_count;
  payload["bad_fraction"] = rational_json(report.bad_fraction());
  payload["delta_hat"] = report.delta_hat;
  payload["mode"] = report.sampled ? "sampled" : "exact";
  if (report.sampled) {
    payload["sample_size"] = report.sample_size;
    payload["seed"] = report.seed;
    payload["population"] = report.population;
  }
  return payload;
}

ordered_json split_params_json(const SplitParams& params) {
  ordered_json payload;
  payload["m"] = params.m;
  payload["base"] = params.g.value();
  payload["delta"] = rational_json(params.delta);
  payload["ell"] = params.ell;
  payload["m_prime"] = params.m_prime;
  return payload;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"digit statistics workbench for concatenation constants "
               "0.f(1)f(2)f(3)... (squares, primes, and friends)",
               "normlab"};
  app.set_version_flag("--version", std::string("normlab ") + NORMLAB_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts common;
  app.add_option("--threads", common.threads,
                 "worker threads (0 = all available)")
      ->envname("NORMLAB_THREADS");
  app.add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();
  app.add_option("--out", common.out_path, "write the report here instead of stdout");

  // Options shared by several subcommands; each leaf validates what it uses.
  std::string seq_name = "square";
  unsigned base_value = 10;
  std::string eps_text;
  std::string delta_text = "1/5";
  unsigned k_value = 1;

  // Filled in by whichever leaf subcommand runs.
  std::function<ordered_json()> action;
  ordered_json command_echo;

  auto add_seq = [&](CLI::App* cmd) {
    cmd->add_option("--seq", seq_name, "sequence kind")
        ->check(CLI::IsMember({"identity", "square", "cube", "prime", "totient",
                               "sigma", "lpf", "isqrt"}))
        ->capture_default_str();
  };
  auto add_base = [&](CLI::App* cmd) {
    cmd->add_option("--base", base_value, "radix g")
        ->check(CLI::Range(2u, 256u))
        ->capture_default_str();
  };
  auto add_eps = [&](CLI::App* cmd) {
    cmd->add_option("--eps", eps_text, "tolerance as a rational \"p/q\"")
        ->required();
  };
  auto add_delta = [&](CLI::App* cmd) {
    cmd->add_option("--delta", delta_text,
                    "exponent stand-in as a rational \"p/q\" in (0,1)")
        ->capture_default_str();
  };
  auto add_k = [&](CLI::App* cmd) {
    cmd->add_option("--k", k_value, "pattern length")->capture_default_str();
  };

  auto echo_common = [&](ordered_json& args_echo) {
    args_echo["threads"] = Executor(common.threads).threads();
    args_echo["format"] = common.format;
  };

  // ---- digits ----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("digits",
                                   "first N digits of the concatenation constant");
    add_seq(cmd);
    add_base(cmd);
    auto count = std::make_shared<u64>(0);
    cmd->add_option("--count", *count, "how many digits")->required();
    cmd->callback([&, count] {
      ordered_json args_echo;
      args_echo["seq"] = seq_name;
      args_echo["base"] = base_value;
      args_echo["count"] = *count;
      echo_common(args_echo);
      command_echo = {{"name", "digits"}, {"args", args_echo}};
      action = [&, count]() {
        SequenceSpec spec{parse_sequence_kind(seq_name)};
        Base g(base_value);
        DigitString prefix = concat_prefix(spec, g, *count);
        ordered_json payload;
        payload["sequence"] = seq_name;
        payload["base"] = base_value;
        payload["count"] = *count;
        payload["digits"] = format_digits(prefix);
        return payload;
      };
    });
  }

  // ---- count -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "count", "occurrences of a pattern in the first N digits");
    add_seq(cmd);
    add_base(cmd);
    auto prefix_len = std::make_shared<u64>(0);
    auto pattern_text = std::make_shared<std::string>();
    cmd->add_option("--prefix", *prefix_len, "prefix length N")->required();
    cmd->add_option("--pattern", *pattern_text, "digit pattern")->required();
    cmd->callback([&, prefix_len, pattern_text] {
      ordered_json args_echo;
      args_echo["seq"] = seq_name;
      args_echo["base"] = base_value;
      args_echo["prefix"] = *prefix_len;
      args_echo["pattern"] = *pattern_text;
      echo_common(args_echo);
      command_echo = {{"name", "count"}, {"args", args_echo}};
      action = [&, prefix_len, pattern_text]() {
        SequenceSpec spec{parse_sequence_kind(seq_name)};
        Base g(base_value);
        Pattern sigma = parse_pattern(*pattern_text, g);
        DigitStream stream(spec, g, 1);
        OccurrenceCount count = count_prefix(stream, *prefix_len, sigma);
        ordered_json payload;
        payload["sequence"] = seq_name;
        payload["base"] = base_value;
        payload["pattern"] = *pattern_text;
        payload["prefix_length"] = count.window_length;
        payload["count"] = count.count;
        return payload;
      };
    });
  }

  // ---- trajectory ------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "trajectory", "empirical pattern frequency at increasing prefix lengths");
    add_seq(cmd);
    add_base(cmd);
    auto pattern_text = std::make_shared<std::string>();
    auto checkpoints = std::make_shared<std::vector<u64>>();
    cmd->add_option("--pattern", *pattern_text, "digit pattern")->required();
    cmd->add_option("--checkpoints", *checkpoints,
                    "strictly increasing prefix lengths")
        ->required()
        ->delimiter(',');
    cmd->callback([&, pattern_text, checkpoints] {
      ordered_json args_echo;
      args_echo["seq"] = seq_name;
      args_echo["base"] = base_value;
      args_echo["pattern"] = *pattern_text;
      args_echo["checkpoints"] = *checkpoints;
      echo_common(args_echo);
      command_echo = {{"name", "trajectory"}, {"args", args_echo}};
      action = [&, pattern_text, checkpoints]() {
        SequenceSpec spec{parse_sequence_kind(seq_name)};
        Base g(base_value);
        Pattern sigma = parse_pattern(*pattern_text, g);
        auto points = normality_trajectory(spec, g, sigma, *checkpoints);
        ordered_json rows = ordered_json::array();
        for (const TrajectoryPoint& point : points) {
          rows.push_back({{"N", point.prefix_length},
                          {"count", point.count},
                          {"frequency", rational_json(point.frequency)}});
        }
        ordered_json payload;
        payload["sequence"] = seq_name;
        payload["base"] = base_value;
        payload["pattern"] = *pattern_text;
        payload["points"] = rows;
        return payload;
      };
    });
  }

  // ---- census ----------------------------------------------------------
  {
    auto* census = app.add_subcommand("census",
                                      "how many members of a population fail "
                                      "the (eps,k) digit-frequency condition");
    census->require_subcommand(1);
    census->fallthrough();
    {
      auto* cmd = census->add_subcommand("integers", "integers 1..m in base g");
      add_base(cmd);
      add_eps(cmd);
      add_k(cmd);
      auto m = std::make_shared<u64>(0);
      cmd->add_option("--m", *m, "upper end of the range")->required();
      cmd->callback([&, m] {
        ordered_json args_echo;
        args_echo["m"] = *m;
        args_echo["base"] = base_value;
        args_echo["eps"] = eps_text;
        args_echo["k"] = k_value;
        echo_common(args_echo);
        command_echo = {{"name", "census integers"}, {"args", args_echo}};
        action = [&, m]() {
          Executor ex(common.threads);
          CensusReport report =
              integer_census(*m, Rational::parse(eps_text), k_value,
                             Base(base_value), ex);
          return census_payload(report);
        };
      });
    }
    {
      auto* cmd = census->add_subcommand(
          "strings", "all (or a sample of) length-len strings over base g");
      add_base(cmd);
      add_eps(cmd);
      add_k(cmd);
      auto len = std::make_shared<unsigned>(0);
      auto sample = std::make_shared<u64>(0);
      auto seed = std::make_shared<u64>(0);
      cmd->add_option("--len", *len, "string length")->required();
      auto* sample_opt =
          cmd->add_option("--sample", *sample, "sample size (0 = exact census)");
      cmd->add_option("--seed", *seed, "sample seed")->needs(sample_opt);
      cmd->callback([&, len, sample, seed] {
        ordered_json args_echo;
        args_echo["len"] = *len;
        args_echo["base"] = base_value;
        args_echo["eps"] = eps_text;
        args_echo["k"] = k_value;
        if (*sample > 0) {
          args_echo["sample"] = *sample;
          args_echo["seed"] = *seed;
        }
        echo_common(args_echo);
        command_echo = {{"name", "census strings"}, {"args", args_echo}};
        action = [&, len, sample, seed]() {
          Executor ex(common.threads);
          Rational eps = Rational::parse(eps_text);
          CensusReport report =
              *sample > 0
                  ? string_census_sampled(*len, eps, k_value, Base(base_value),
                                          *sample, *seed, ex)
                  : string_census_exact(*len, eps, k_value, Base(base_value), ex);
          return census_payload(report);
        };
      });
    }
  }

  // ---- lengths ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "lengths", "digit-length statistics of the blocks f(1)..f(m)");
    add_seq(cmd);
    add_base(cmd);
    auto m = std::make_shared<u64>(0);
    cmd->add_option("--m", *m, "number of blocks")->required();
    cmd->callback([&, m] {
      ordered_json args_echo;
      args_echo["seq"] = seq_name;
      args_echo["base"] = base_value;
      args_echo["m"] = *m;
      echo_common(args_echo);
      command_echo = {{"name", "lengths"}, {"args", args_echo}};
      action = [&, m]() {
        SequenceSpec spec{parse_sequence_kind(seq_name)};
        Base g(base_value);
        Executor ex(common.threads);
        LengthStats stats = length_stats(spec, g, *m, ex);
        ordered_json payload;
        payload["sequence"] = seq_name;
        payload["base"] = base_value;
        payload["m"] = stats.m;
        payload["sum_length"] = stats.sum_length;
        payload["max_length"] = stats.max_length;
        payload["ratio_m_over_sum"] = rational_json(stats.ratio_m_over_sum);
        payload["ratio_mmax_over_sum"] = rational_json(stats.ratio_mmax_over_sum);
        if (stats.m >= 2) {
          double closed = length_sum_closed_form(g, stats.m);
          payload["closed_form"] = closed;
          payload["ratio_to_closed_form"] =
              static_cast<double>(stats.sum_length) / closed;
        }
        return payload;
      };
    });
  }

  // ---- split -----------------------------------------------------------
  {
    auto* split_cmd = app.add_subcommand(
        "split", "half-split machinery for the squares' digit strings");
    split_cmd->require_subcommand(1);
    split_cmd->fallthrough();
    auto m = std::make_shared<u64>(0);

    auto make = [&, m]() {
      return make_params(*m, Base(base_value), Rational::parse(delta_text));
    };

    {
      auto* cmd = split_cmd->add_subcommand("params",
                                            "ell, m' and friends for (m, g, delta)");
      add_base(cmd);
      add_delta(cmd);
      cmd->add_option("--m", *m, "range end")->required();
      cmd->callback([&, m, make] {
        ordered_json args_echo;
        args_echo["m"] = *m;
        args_echo["base"] = base_value;
        args_echo["delta"] = delta_text;
        echo_common(args_echo);
        command_echo = {{"name", "split params"}, {"args", args_echo}};
        action = [make]() { return split_params_json(make()); };
      });
    }
    {
      auto* cmd = split_cmd->add_subcommand("pair", "the split of one n");
      add_base(cmd);
      add_delta(cmd);
      cmd->add_option("--m", *m, "range end")->required();
      auto n = std::make_shared<u64>(0);
      cmd->add_option("--n", *n, "which n to split")->required();
      cmd->callback([&, m, n, make] {
        ordered_json args_echo;
        args_echo["n"] = *n;
        args_echo["m"] = *m;
        args_echo["base"] = base_value;
        args_echo["delta"] = delta_text;
        echo_common(args_echo);
        command_echo = {{"name", "split pair"}, {"args", args_echo}};
        action = [&, n, make]() {
          SplitParams params = make();
          SplitPair pair = split(*n, params);
          ordered_json payload = split_params_json(params);
          payload["n"] = pair.n;
          payload["b"] = pair.b;
          payload["c"] = pair.c;
          payload["b_string"] = format_digits(to_digits(pair.b, params.g));
          payload["c_string"] = format_digits(pair.c_string);
          payload["f_string"] = format_digits(to_digits(pair.n * pair.n, params.g));
          return payload;
        };
      });
    }
    {
      auto* cmd = split_cmd->add_subcommand(
          "census", "half-normality failures over n in [m', m]");
      add_base(cmd);
      add_delta(cmd);
      add_eps(cmd);
      add_k(cmd);
      cmd->add_option("--m", *m, "range end")->required();
      cmd->callback([&, m, make] {
        ordered_json args_echo;
        args_echo["m"] = *m;
        args_echo["base"] = base_value;
        args_echo["delta"] = delta_text;
        args_echo["eps"] = eps_text;
        args_echo["k"] = k_value;
        echo_common(args_echo);
        command_echo = {{"name", "split census"}, {"args", args_echo}};
        action = [&, make]() {
          SplitParams params = make();
          Executor ex(common.threads);
          HalfCensus census =
              half_census(params, Rational::parse(eps_text), k_value, ex);
          ordered_json payload = split_params_json(params);
          payload["eps"] = rational_json(Rational::parse(eps_text));
          payload["k"] = k_value;
          payload["total"] = census.total;
          payload["b_bad"] = census.b_bad;
          payload["c_bad"] = census.c_bad;
          payload["f_bad_2eps"] = census.f_bad_2eps;
          payload["containment_violations"] = census.containment_violations;
          payload["proviso_failures"] = census.proviso_failures;
          payload["split_undefined"] = census.split_undefined;
          payload["b_bad_fraction"] =
              rational_json(Rational(census.b_bad, census.total));
          payload["c_bad_fraction"] =
              rational_json(Rational(census.c_bad, census.total));
          return payload;
        };
      });
    }
    {
      auto* cmd = split_cmd->add_subcommand(
          "gap", "run-length structure of b(n) over [m', m]");
      add_base(cmd);
      add_delta(cmd);
      cmd->add_option("--m", *m, "range end")->required();
      cmd->callback([&, m, make] {
        ordered_json args_echo;
        args_echo["m"] = *m;
        args_echo["base"] = base_value;
        args_echo["delta"] = delta_text;
        echo_common(args_echo);
        command_echo = {{"name", "split gap"}, {"args", args_echo}};
        action = [&, make]() {
          SplitParams params = make();
          Executor ex(common.threads);
          GapCensus census = b_gap_census(params, ex);
          ordered_json payload = split_params_json(params);
          payload["gap_threshold"] = census.gap_threshold;
          payload["min_gap_violations"] = census.min_gap_violations;
          payload["max_multiplicity"] = census.max_multiplicity;
          payload["multiplicity_within_threshold"] =
              census.multiplicity_within_threshold;
          return payload;
        };
      });
    }
  }

  // ---- congruence ------------------------------------------------------
  {
    auto* cong = app.add_subcommand(
        "congruence", "counting solutions of x^2 == y^2 modulo prime powers");
    cong->require_subcommand(1);
    cong->fallthrough();
    auto p = std::make_shared<u64>(0);
    auto e = std::make_shared<unsigned>(1);

    auto pair_payload = [](const PairCount& count) {
      ordered_json payload;
      payload["modulus"] = count.modulus;
      payload["count"] = count.count;
      payload["method"] = pair_count_method_name(count.method);
      return payload;
    };

    {
      auto* cmd = cong->add_subcommand(
          "exact", "exact pair count for an odd prime power, by closed form");
      cmd->add_option("--p", *p, "odd prime")->required();
      cmd->add_option("--e", *e, "exponent")->capture_default_str();
      cmd->callback([&, p, e, pair_payload] {
        ordered_json args_echo;
        args_echo["p"] = *p;
        args_echo["e"] = *e;
        echo_common(args_echo);
        command_echo = {{"name", "congruence exact"}, {"args", args_echo}};
        action = [&, p, e, pair_payload]() {
          PairCount count = square_pairs_exact_odd(*p, *e);
          ordered_json payload;
          payload["p"] = *p;
          payload["e"] = *e;
          payload.update(pair_payload(count));
          return payload;
        };
      });
    }
    {
      auto* cmd = cong->add_subcommand(
          "bound", "headline and intermediate upper bounds for a prime power");
      cmd->add_option("--p", *p, "prime")->required();
      cmd->add_option("--e", *e, "exponent")->capture_default_str();
      cmd->callback([&, p, e] {
        ordered_json args_echo;
        args_echo["p"] = *p;
        args_echo["e"] = *e;
        echo_common(args_echo);
        command_echo = {{"name", "congruence bound"}, {"args", args_echo}};
        action = [&, p, e]() {
          PairCount headline = square_pairs_bound(*p, *e);
          PairCount intermediate = square_pairs_intermediate(*p, *e);
          ordered_json payload;
          payload["p"] = *p;
          payload["e"] = *e;
          payload["modulus"] = headline.modulus;
          payload["count"] = headline.count;
          payload["intermediate"] = intermediate.count;
          payload["method"] = pair_count_method_name(headline.method);
          return payload;
        };
      });
    }
    {
      auto* cmd = cong->add_subcommand("brute",
                                       "exact pair count by residue histogram");
      auto modulus = std::make_shared<u64>(0);
      cmd->add_option("--modulus", *modulus, "modulus M")->required();
      cmd->callback([&, modulus, pair_payload] {
        ordered_json args_echo;
        args_echo["modulus"] = *modulus;
        echo_common(args_echo);
        command_echo = {{"name", "congruence brute"}, {"args", args_echo}};
        action = [&, modulus, pair_payload]() {
          Executor ex(common.threads);
          return pair_payload(square_pairs_brute(*modulus, ex));
        };
      });
    }
    {
      auto* cmd = cong->add_subcommand(
          "crt", "combined bound for g^ell from the factorization of g");
      add_base(cmd);
      auto ell = std::make_shared<unsigned>(1);
      cmd->add_option("--ell", *ell, "power of g")->capture_default_str();
      cmd->callback([&, ell, pair_payload] {
        ordered_json args_echo;
        args_echo["base"] = base_value;
        args_echo["ell"] = *ell;
        echo_common(args_echo);
        command_echo = {{"name", "congruence crt"}, {"args", args_echo}};
        action = [&, ell, pair_payload]() {
          Base g(base_value);
          PairCount count = crt_pair_bound(g, *ell);
          std::string factor_text;
          for (const PrimePower& pp : factorize(g.value()).factors) {
            if (!factor_text.empty()) factor_text += "*";
            factor_text += std::to_string(pp.p);
            if (pp.e > 1) factor_text += "^" + std::to_string(pp.e);
          }
          ordered_json payload;
          payload["base"] = base_value;
          payload["ell"] = *ell;
          payload["factorization"] = factor_text;
          payload.update(pair_payload(count));
          return payload;
        };
      });
    }
    {
      auto* cmd = cong->add_subcommand(
          "badset", "tail residues landing in the non-normal set, vs the "
                    "Cauchy-Schwarz ceiling");
      add_base(cmd);
      add_delta(cmd);
      add_eps(cmd);
      add_k(cmd);
      auto m = std::make_shared<u64>(0);
      cmd->add_option("--m", *m, "range end")->required();
      cmd->callback([&, m] {
        ordered_json args_echo;
        args_echo["m"] = *m;
        args_echo["base"] = base_value;
        args_echo["delta"] = delta_text;
        args_echo["eps"] = eps_text;
        args_echo["k"] = k_value;
        echo_common(args_echo);
        command_echo = {{"name", "congruence badset"}, {"args", args_echo}};
        action = [&, m]() {
          SplitParams params =
              make_params(*m, Base(base_value), Rational::parse(delta_text));
          Executor ex(common.threads);
          BadSetReport report =
              bad_set_hits(params, Rational::parse(eps_text), k_value, ex);
          ordered_json payload = split_params_json(params);
          payload["eps"] = rational_json(Rational::parse(eps_text));
          payload["k"] = k_value;
          payload["bad_set_size"] = report.bad_set_size;
          payload["hits"] = report.hits;
          payload["pair_count"] = report.pair_count;
          payload["cs_bound"] = report.cs_bound;
          return payload;
        };
      });
    }
  }

  // ---- parse and run ---------------------------------------------------
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("normlab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "normlab: " << e.what() << "\n";
    return 2;
  }

  try {
    ReportEnvelope envelope;
    envelope.version = NORMLAB_VERSION;
    envelope.command = command_echo;
    auto started = std::chrono::steady_clock::now();
    envelope.payload = action();
    envelope.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count();
    std::string rendered = render(envelope, common.format);
    if (common.out_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(common.out_path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot open output file: " + common.out_path);
      out << rendered;
    }
    return 0;
  } catch (const invariant_violation& e) {
    std::cerr << "normlab: invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "normlab: invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "normlab: out of range: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "normlab: internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace normlab
