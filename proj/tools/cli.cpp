#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "qmod/cache.hpp"
#include "qmod/catalog.hpp"
#include "qmod/errors.hpp"
#include "qmod/spans.hpp"
#include "qmod/verify.hpp"

namespace qmod::cli {

namespace {

struct Options {
  std::string format = "table";
  std::string out_path;

  // expand / build-h / build-psi
  std::string form;
  std::int64_t prec = 20;
  std::int64_t level = 27;
  std::int64_t m = 1;
  std::int64_t p = 2;

  // verify
  std::int64_t curve_level = 0;
  bool all_curves = false;
  std::string primes;
  std::optional<int> m_max;
  std::int64_t coefficients = 20;
  unsigned jobs = 1;

  // check
  std::string identity;
  std::int64_t n = 1;
  std::optional<std::int64_t> check_prec;
};

std::int64_t parse_int(const std::string& text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PreconditionError("not an integer: '" + text + "'");
  }
  return value;
}

// Sends text to --out FILE or to `out`.
void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path);
  if (!file) throw PreconditionError("cannot open output file " + opt.out_path);
  file << text;
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

// Catalog names, plus H<m>@<level> and psi<p>@<level>.
QSeries resolve_form(const std::string& name, Exponent prec, ExpansionCache& cache) {
  static const std::regex derived(R"((H|psi)(-?\d+)@(\d+))");
  std::smatch match;
  if (std::regex_match(name, match, derived)) {
    std::int64_t index = parse_int(match[2]);
    std::int64_t level = parse_int(match[3]);
    if (level != 27 && level != 36) throw UnknownFormError("unknown form '" + name + "'");
    return match[1] == "H" ? build_H(level, index, prec) : build_psi(level, index, prec);
  }
  return cache.get(name, prec);
}

int print_series(const Options& opt, std::ostream& out, const std::string& name, const QSeries& f) {
  emit(opt, out, opt.format == "json" ? with_newline(series_to_json(name, f)) : series_to_table(f));
  return kAllPassed;
}

int finish(const Options& opt, std::ostream& out, ReportBundle bundle) {
  if (opt.format == "json") {
    emit(opt, out, with_newline(to_json(bundle)));
  } else {
    emit(opt, out, to_table(bundle));
  }
  if (!opt.out_path.empty()) out << bundle.summary_line() << "\n";
  return bundle.all_passed() ? kAllPassed : kCheckFailed;
}

std::vector<const CurveSpec*> selected_curves(const Options& opt) {
  std::vector<const CurveSpec*> out;
  if (opt.all_curves) {
    for (const auto& c : curves()) out.push_back(&c);
  } else {
    out.push_back(&curve(opt.curve_level));
  }
  return out;
}

int cmd_verify(const Options& opt, std::ostream& out, const std::vector<std::string>& args) {
  if (opt.all_curves == (opt.curve_level != 0)) {
    throw PreconditionError("verify needs exactly one of --curve N or --all");
  }
  if (opt.coefficients < 1) throw PreconditionError("--K must be positive");
  if (opt.m_max && *opt.m_max < 0) throw PreconditionError("--m-max must be nonnegative");
  PrimeSelection selection = parse_primes(opt.primes);
  ExpansionCache cache(precision_ceiling_from_env());

  ReportBundle bundle;
  std::string joined;
  for (const auto& a : args) joined += (joined.empty() ? "" : " ") + a;
  bundle.run = {{"tool", "qmod"}, {"command", "verify"}, {"args", joined},
                {"precision_ceiling", std::to_string(cache.ceiling())}};

  struct Task {
    const CurveSpec* curve;
    std::int64_t p;
    int m;
  };
  std::vector<Task> tasks;
  for (const CurveSpec* c : selected_curves(opt)) {
    for (std::int64_t p : selection.primes) {
      if (auto why = ineligibility_reason(*c, p)) {
        if (!selection.automatic) bundle.skipped.push_back({c->level, p, std::nullopt, *why});
        continue;
      }
      std::optional<int> cap = default_m_max(p, opt.coefficients, cache.ceiling());
      int last = opt.m_max.value_or(cap.value_or(-1));
      if (!cap && !opt.m_max) {
        bundle.skipped.push_back({c->level, p, std::nullopt, "exceeds precision ceiling"});
        continue;
      }
      for (int m = 0; m <= last; ++m) {
        if (!cap || m > *cap) {
          bundle.skipped.push_back({c->level, p, m, "exceeds precision ceiling"});
          continue;
        }
        tasks.push_back({c, p, m});
      }
    }
  }

  // Expand every form once at the largest precision any task needs, then fan
  // out; workers only truncate cached expansions.
  std::map<std::string, Exponent> needed;
  for (const auto& t : tasks) {
    Exponent pk = checked_pow(t.p, 2 * t.m + 1);
    auto& G = needed[t.curve->mock_derivative];
    G = std::max(G, checked_add(checked_mul(opt.coefficients, pk), 1));
    auto& g = needed[t.curve->newform];
    g = std::max(g, opt.coefficients + 1);
  }
  for (const auto& [name, prec] : needed) cache.reserve(name, prec);

  std::vector<std::function<CheckReport()>> jobs;
  for (const auto& t : tasks) {
    jobs.emplace_back([&cache, t, K = opt.coefficients] {
      return check_limit(*t.curve, t.p, t.m, K, cache);
    });
    jobs.emplace_back([&cache, t] { return check_valuation(*t.curve, t.p, t.m, cache); });
  }
  std::vector<CheckReport> reports(jobs.size());
  unsigned width = std::max(1u, opt.jobs);
  for (std::size_t start = 0; start < jobs.size(); start += width) {
    std::vector<std::future<CheckReport>> running;
    for (std::size_t i = start; i < std::min(jobs.size(), start + width); ++i) {
      running.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async, jobs[i]));
    }
    for (std::size_t i = 0; i < running.size(); ++i) reports[start + i] = running[i].get();
  }
  bundle.reports = std::move(reports);
  return finish(opt, out, std::move(bundle));
}

int cmd_check(const Options& opt, std::ostream& out) {
  ExpansionCache cache(precision_ceiling_from_env());
  const std::string& id = opt.identity;
  auto prec_or = [&opt](std::int64_t fallback) { return opt.check_prec.value_or(fallback); };
  CheckReport report;
  if (id == "hecke") {
    report = check_hecke_decomposition(opt.level, opt.p, static_cast<int>(opt.n), prec_or(30), cache);
  } else if (id == "theta-psi") {
    report = check_theta_psi(opt.level, opt.p, prec_or(30), opt.m_max.value_or(1), cache);
  } else if (id == "residue") {
    report = check_residue(opt.level, opt.p, prec_or(10), cache);
  } else if (id == "congruence") {
    report = check_congruence(opt.level, opt.p, static_cast<int>(opt.m), cache);
  } else if (id == "support") {
    report = check_support(curve(opt.level), prec_or(500), cache);
  } else if (id == "nondivisibility") {
    report = check_nondivisibility(curve(opt.level), opt.p, cache);
  } else if (id == "twist") {
    report = check_twist_consistency(prec_or(200), cache);
  } else if (id == "valuation") {
    report = check_valuation(curve(opt.level), opt.p, static_cast<int>(opt.m), cache);
  } else if (id == "limit") {
    report = check_limit(curve(opt.level), opt.p, static_cast<int>(opt.m), opt.coefficients, cache);
  } else {
    throw PreconditionError("unknown identity '" + id + "'");
  }
  ReportBundle bundle;
  bundle.run = {{"tool", "qmod"}, {"command", "check"}, {"identity", id}};
  bundle.reports.push_back(std::move(report));
  return finish(opt, out, std::move(bundle));
}

}  // namespace

PrimeSelection parse_primes(const std::string& spec) {
  PrimeSelection sel;
  if (spec.empty()) throw PreconditionError("--primes is required");
  if (spec.rfind("auto:", 0) == 0) {
    std::int64_t bound = parse_int(spec.substr(5));
    if (bound < 2) throw PreconditionError("auto bound must be >= 2");
    for (std::int64_t q = 2; q <= bound; ++q) {
      if (is_prime(q)) sel.primes.push_back(q);
    }
    sel.automatic = true;
    return sel;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::int64_t q = parse_int(item);
    if (!is_prime(q)) throw PreconditionError(item + " is not prime");
    sel.primes.push_back(q);
  }
  std::sort(sel.primes.begin(), sel.primes.end());
  sel.primes.erase(std::unique(sel.primes.begin(), sel.primes.end()), sel.primes.end());
  return sel;
}

std::optional<int> default_m_max(std::int64_t p, std::int64_t coefficients, std::int64_t ceiling) {
  std::optional<int> best;
  for (int m = 0;; ++m) {
    try {
      Exponent need = checked_add(checked_mul(coefficients, checked_pow(p, 2 * m + 1)), 1);
      if (need > ceiling) break;
    } catch (const OverflowError&) {
      break;
    }
    best = m;
  }
  return best;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qmod: exact q-expansions of CM newforms and their p-adic limit identities"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&opt](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--out", opt.out_path, "Write output to FILE instead of standard output");
  };

  auto* expand = app.add_subcommand("expand", "Expand a catalog form, H<m>@<level> or psi<p>@<level>");
  expand->add_option("--form", opt.form, "Form name")->required();
  expand->add_option("--prec", opt.prec, "Absolute precision O(q^prec)")->check(CLI::PositiveNumber);
  add_format(expand);

  auto* build_h = app.add_subcommand("build-h", "Construct H_m at level 27 or 36");
  build_h->add_option("--level", opt.level)->check(CLI::IsMember({27, 36}));
  build_h->add_option("--m", opt.m)->required();
  build_h->add_option("--prec", opt.prec);
  add_format(build_h);

  auto* build_psi_cmd = app.add_subcommand("build-psi", "Construct psi_p at level 27 or 36");
  build_psi_cmd->add_option("--level", opt.level)->check(CLI::IsMember({27, 36}));
  build_psi_cmd->add_option("--p", opt.p)->required();
  build_psi_cmd->add_option("--prec", opt.prec);
  add_format(build_psi_cmd);

  auto* verify = app.add_subcommand("verify", "Run the valuation and limit checks over a grid");
  verify->add_option("--curve", opt.curve_level, "Conductor: 27, 32, 36, 64 or 144");
  verify->add_flag("--all", opt.all_curves, "All five curves");
  verify->add_option("--primes", opt.primes, "Comma list or auto:B")->required();
  verify->add_option("--m-max", opt.m_max, "Largest m (default: largest within the ceiling)");
  verify->add_option("--K", opt.coefficients, "Coefficients certified per limit check");
  verify->add_option("--jobs", opt.jobs, "Worker threads");
  add_format(verify);

  auto* check = app.add_subcommand("check", "Run a single identity check");
  check->add_option("identity", opt.identity,
                    "hecke | theta-psi | residue | congruence | support | nondivisibility | "
                    "twist | valuation | limit")
      ->required();
  check->add_option("--level,--curve", opt.level);
  check->add_option("--p", opt.p);
  check->add_option("--n", opt.n);
  check->add_option("--m", opt.m);
  check->add_option("--m-max", opt.m_max);
  check->add_option("--prec", opt.check_prec);
  check->add_option("--K", opt.coefficients);
  add_format(check);

  auto* catalog = app.add_subcommand("catalog", "Print the catalog manifest");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kAllPassed;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kAllPassed;
  } catch (const CLI::ParseError& e) {
    err << "qmod: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*catalog) {
      emit(opt, out, catalog_manifest());
      return kAllPassed;
    }
    if (*expand) {
      ExpansionCache cache(precision_ceiling_from_env());
      return print_series(opt, out, opt.form, resolve_form(opt.form, opt.prec, cache));
    }
    if (*build_h) {
      return print_series(opt, out, "H" + std::to_string(opt.m) + "@" + std::to_string(opt.level),
                          build_H(opt.level, opt.m, opt.prec));
    }
    if (*build_psi_cmd) {
      return print_series(opt, out, "psi" + std::to_string(opt.p) + "@" + std::to_string(opt.level),
                          build_psi(opt.level, opt.p, opt.prec));
    }
    if (*verify) return cmd_verify(opt, out, {args.begin(), args.end()});
    if (*check) return cmd_check(opt, out);
  } catch (const EliminationError& e) {
    err << "qmod: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "qmod: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qmod::cli
