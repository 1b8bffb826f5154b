#include "oscsys/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>

#include "CLI11.hpp"
#include "oscsys/serialization.hpp"

namespace oscsys {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint32_t p = 0;
  std::uint32_t max_prime = 97;
  std::string family = "oscillator";
  std::string in;
  std::string out = "-";
  std::string format = "json";
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::size_t pair_budget = 100000;
  std::size_t signal = 0;
  std::uint32_t tau = 0;
  std::uint32_t doppler = 0;
  double snr_db = 0.0;
  std::size_t trials = 1;
  std::size_t users = 1;
  std::string scenario = "sync";
  std::uint32_t constellation = 4;
  bool blind = false;
  std::size_t extended_limit = 1000000;
};

std::size_t oscillator_count(std::size_t p) {
  return (p - 2) * p * (p + 1) / 2 + p * p * (p - 1) / 2;
}

void validate_prime(const RunConfig& cfg) {
  if (!is_odd_prime(cfg.p)) throw UsageError(std::to_string(cfg.p) + " is not an odd prime");
  if (cfg.p > cfg.max_prime) {
    throw UsageError("prime " + std::to_string(cfg.p) + " exceeds the configured maximum " +
                     std::to_string(cfg.max_prime) + " (see --max-prime)");
  }
}

Family parse_family(const std::string& name) {
  try {
    return family_from_string(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SignalSystem build_system(Family family, std::uint32_t p) {
  switch (family) {
    case Family::heisenberg: return heisenberg_system(p);
    case Family::split: return split_system(p);
    case Family::nonsplit: return nonsplit_system(p);
    case Family::oscillator:
    case Family::extended: return oscillator_system(p);
  }
  throw UsageError("unsupported family");
}

// The system named by --in, or generated from --prime/--family.
SignalSystem load_system(const RunConfig& cfg, bool allow_extended = false) {
  if (!cfg.in.empty()) {
    std::ifstream is(cfg.in);
    if (!is) throw UsageError("cannot open " + cfg.in);
    try {
      return read_system_json(is);
    } catch (const std::invalid_argument& e) {
      throw UsageError(cfg.in + ": " + e.what());
    }
  }
  validate_prime(cfg);
  const Family f = parse_family(cfg.family);
  if (f == Family::extended && !allow_extended) {
    throw UsageError("family 'extended' is not supported by this command");
  }
  return build_system(f, cfg.p);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") throw UsageError("unknown format '" + format + "'");
}

const Signal& pick_signal(const SignalSystem& sys, std::size_t id) {
  if (id >= sys.size()) {
    throw UsageError("unknown signal id " + std::to_string(id) + " (system has " +
                     std::to_string(sys.size()) + " signals)");
  }
  return sys.signals[id];
}

void write_extended(const SignalSystem& base, const RunConfig& cfg, std::ostream& os) {
  const ExtendedSystem ext = extended_system(base.p, base);
  if (ext.size() > cfg.extended_limit) {
    throw UsageError("extended system has " + std::to_string(ext.size()) +
                     " signals, above --extended-limit " + std::to_string(cfg.extended_limit));
  }
  if (cfg.format == "csv") {
    os << "id,base,tau,w";
    for (std::uint32_t t = 0; t < base.p; ++t) os << ",t" << t;
    os << '\n';
    std::size_t id = 0;
    ext.for_each([&](const ExtendedSystem::Index& idx, const Signal& f) {
      os << id++ << ',' << idx.base << ',' << idx.tau << ',' << idx.w;
      for (Eigen::Index t = 0; t < f.size(); ++t) os << ',' << format_complex(f(t));
      os << '\n';
    });
    return;
  }
  Json doc{{"format", "oscsys-extended-system"},
           {"version", 1},
           {"p", base.p},
           {"family", "extended"},
           {"size", ext.size()},
           {"translate", "M_w L_tau phi, id = base * p^2 + tau * p + w"},
           {"base", to_json(base)}};
  Json signals = Json::array();
  std::size_t id = 0;
  ext.for_each([&](const ExtendedSystem::Index& idx, const Signal& f) {
    Json samples = Json::array();
    for (Eigen::Index t = 0; t < f.size(); ++t) samples.push_back({f(t).real(), f(t).imag()});
    signals.push_back({{"id", id++}, {"base", idx.base}, {"tau", idx.tau}, {"w", idx.w},
                       {"samples", std::move(samples)}});
  });
  doc["signals"] = std::move(signals);
  os << doc.dump() << '\n';
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg.format);
  if (cfg.in.empty() && parse_family(cfg.family) == Family::extended) {
    validate_prime(cfg);
    const SignalSystem base = oscillator_system(cfg.p);
    Output o(cfg.out, out);
    write_extended(base, cfg, o.stream());
    return kExitOk;
  }
  const SignalSystem sys = load_system(cfg);
  Output o(cfg.out, out);
  if (cfg.format == "csv") {
    write_system_csv(sys, o.stream());
  } else {
    write_system_json(sys, o.stream());
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const bool extended = cfg.in.empty() && parse_family(cfg.family) == Family::extended;
  const SignalSystem sys = load_system(cfg, true);
  const BoundReport bounds = verify_bounds(
      sys, cfg.pair_budget, cfg.seed, default_thresholds(sys.family, sys.p, cfg.tolerance));
  Json doc = to_json(bounds);
  bool pass = bounds.passed();
  if (extended) {
    const InnerProductReport inner = verify_extended_inner_products(
        extended_system(sys.p, sys), cfg.pair_budget, cfg.seed, cfg.tolerance);
    doc = {{"family", "extended"}, {"base_bounds", doc}, {"inner_products", to_json(inner)}};
    pass = pass && inner.passed;
    doc["pass"] = pass;
  }
  Output o(cfg.out, out);
  o.stream() << doc.dump(2) << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_ambiguity(const RunConfig& cfg, std::ostream& out) {
  check_format(cfg.format);
  const SignalSystem sys = load_system(cfg);
  AmbiguityTable table = ambiguity_table(pick_signal(sys, cfg.signal));
  table.owner = std::string(to_string(sys.family)) + " signal " + std::to_string(cfg.signal);
  Output o(cfg.out, out);
  if (cfg.format == "csv") {
    write_ambiguity_csv(table, o.stream());
  } else {
    o.stream() << to_json(table).dump() << '\n';
  }
  return kExitOk;
}

int cmd_fourier_check(const RunConfig& cfg, std::ostream& out) {
  const SignalSystem sys = load_system(cfg);
  if (sys.family == Family::heisenberg) {
    throw UsageError("fourier-check needs an oscillator family (split, nonsplit, oscillator)");
  }
  const FourierClosureReport report = fourier_closure_check(sys);
  Output o(cfg.out, out);
  o.stream() << to_json(report).dump(2) << '\n';
  return report.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_radar(const RunConfig& cfg, bool noisy, std::ostream& out) {
  const SignalSystem sys = load_system(cfg);
  RadarScenario s;
  s.signal = pick_signal(sys, cfg.signal);
  s.tau0 = cfg.tau % sys.p;
  s.w0 = cfg.doppler % sys.p;
  if (noisy) s.snr_db = cfg.snr_db;
  s.trials = cfg.trials;
  s.seed = cfg.seed;
  if (s.trials < 1) throw UsageError("--trials must be at least 1");
  const RadarReport report = radar_simulate(s);
  const RadarEstimate single = radar_estimate(s.signal, apply_pi({sys.p, s.tau0, s.w0, 0}, s.signal));
  Json doc = to_json(report);
  doc["signal"] = cfg.signal;
  doc["truth"] = {s.tau0, s.w0};
  doc["noiseless_estimate"] = {{"tau", single.tau}, {"w", single.w}, {"peak", single.peak},
                               {"second_peak", single.second_peak}, {"ambiguous", single.ambiguous}};
  doc["snr_db"] = noisy ? Json(cfg.snr_db) : Json("noiseless");
  doc["seed"] = cfg.seed;
  Output o(cfg.out, out);
  o.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_cdma(const RunConfig& cfg, bool noisy, std::ostream& out) {
  CdmaScenario s;
  if (cfg.family == "random") {
    validate_prime(cfg);
    s.codebook = random_unit_codebook(cfg.p, oscillator_count(cfg.p), cfg.seed);
  } else {
    s.codebook = load_system(cfg).signals;
  }
  s.users = cfg.users;
  s.constellation = cfg.constellation;
  try {
    s.distortion = distortion_from_string(cfg.scenario);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (noisy) s.snr_db = cfg.snr_db;
  s.trials = cfg.trials;
  s.seed = cfg.seed;
  s.blind = cfg.blind;
  if (s.users < 1 || s.users > s.codebook.size()) {
    throw UsageError("--users must be between 1 and the codebook size " +
                     std::to_string(s.codebook.size()));
  }
  if (s.constellation < 2) throw UsageError("--constellation must be at least 2");
  const CdmaReport report = cdma_simulate(s);
  Json doc = to_json(report);
  doc["codebook"] = cfg.family;
  doc["users"] = s.users;
  doc["scenario"] = cfg.scenario;
  doc["trials"] = s.trials;
  doc["blind"] = s.blind;
  doc["snr_db"] = noisy ? Json(cfg.snr_db) : Json("noiseless");
  doc["seed"] = cfg.seed;
  Output o(cfg.out, out);
  o.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Heisenberg and oscillator signal systems over F_p", "oscsys"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--prime,-p", cfg.p, "odd prime p");
    sub->add_option("--max-prime", cfg.max_prime, "largest accepted prime")->capture_default_str();
    sub->add_option("--family", cfg.family,
                    "heisenberg | split | nonsplit | oscillator | extended")
        ->capture_default_str();
    sub->add_option("--in", cfg.in, "read the signal system from a JSON document instead");
    sub->add_option("--out,-o", cfg.out, "output path, '-' for stdout")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "seed for all randomness")->capture_default_str();
  };

  auto* generate = app.add_subcommand("generate", "emit a signal system");
  auto* verify = app.add_subcommand("verify", "check correlation and supremum bounds");
  auto* ambiguity = app.add_subcommand("ambiguity", "ambiguity table of one signal");
  auto* fourier = app.add_subcommand("fourier-check", "Fourier closure report");
  auto* radar = app.add_subcommand("radar-sim", "range-Doppler estimation simulation");
  auto* cdma = app.add_subcommand("cdma-sim", "multi-user decoding simulation");
  auto* exporter = app.add_subcommand("export", "CSV of complex samples");

  for (auto* sub : {generate, verify, ambiguity, fourier, radar, cdma, exporter}) common(sub);
  for (auto* sub : {generate, ambiguity, exporter}) {
    sub->add_option("--format", cfg.format, "json | csv");
  }
  generate->add_option("--extended-limit", cfg.extended_limit,
                       "largest extended system written in full")->capture_default_str();
  exporter->add_option("--extended-limit", cfg.extended_limit,
                       "largest extended system written in full")->capture_default_str();
  verify->add_option("--tolerance", cfg.tolerance, "absolute slack on every bound")
      ->capture_default_str();
  verify->add_option("--pair-budget", cfg.pair_budget,
                     "check all pairs up to this many, otherwise sample this many")
      ->capture_default_str();
  for (auto* sub : {ambiguity, radar}) sub->add_option("--signal", cfg.signal, "signal id");
  radar->add_option("--tau", cfg.tau, "true delay tau0");
  radar->add_option("--doppler", cfg.doppler, "true Doppler w0");
  CLI::Option* radar_snr = radar->add_option("--snr-db", cfg.snr_db, "SNR in dB (omit: noiseless)");
  radar->add_option("--trials", cfg.trials)->capture_default_str();
  CLI::Option* cdma_snr = cdma->add_option("--snr-db", cfg.snr_db, "SNR in dB (omit: noiseless)");
  cdma->add_option("--users", cfg.users, "simultaneous users J")->capture_default_str();
  cdma->add_option("--scenario", cfg.scenario, "sync | async | phase | full")->capture_default_str();
  cdma->add_option("--trials", cfg.trials)->capture_default_str();
  cdma->add_option("--constellation", cfg.constellation, "symbols are N-th roots of unity")
      ->capture_default_str();
  cdma->add_flag("--blind", cfg.blind, "receiver searches all shifts instead of knowing them");
  cdma->footer("--family also accepts 'random' (unit Gaussian codebook baseline).");

  std::vector<std::string> argv_store = args;
  if (argv_store.empty()) argv_store.emplace_back("oscsys");
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const bool export_cmd = exporter->parsed();
  if (export_cmd && exporter->count("--format") == 0) cfg.format = "csv";

  try {
    if (generate->parsed() || export_cmd) return cmd_generate(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (ambiguity->parsed()) return cmd_ambiguity(cfg, out);
    if (fourier->parsed()) return cmd_fourier_check(cfg, out);
    if (radar->parsed()) return cmd_radar(cfg, radar_snr->count() > 0, out);
    if (cdma->parsed()) return cmd_cdma(cfg, cdma_snr->count() > 0, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace oscsys
