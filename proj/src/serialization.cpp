#include "oscsys/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace oscsys {

namespace {

Json element_json(const SL2Element& g) { return Json::array({g.a(), g.b(), g.c(), g.d()}); }

SL2Element element_from_json(std::uint32_t p, const Json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("SL2 element must be [a,b,c,d]");
  return {p, j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(),
          j[3].get<std::int64_t>()};
}

// Reports may carry infinities (unused thresholds); JSON has no literal for them.
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const SignalSystem& system) {
  const std::uint32_t p = system.p;
  Json doc;
  doc["format"] = "oscsys-signal-system";
  doc["version"] = 1;
  doc["p"] = p;
  doc["family"] = to_string(system.family);
  doc["conventions"] = {
      {"primitive_root", primitive_root(p)},
      {"nonsplit_form_delta", nonsplit_form_coefficient(p)},
      {"phase", "first sample with |f(t)| > 1e-6 is real and positive"},
      {"fourier_scale", "nu = 1: F f(w) = p^-1/2 sum_t psi(wt) f(t)"},
      {"additive_character", "psi(t) = exp(2 pi i t / p)"},
      {"inner_product", "<f,g> = sum_t f(t) conj(g(t))"},
      {"heisenberg", "pi(tau,w,z) f(t) = psi(tau w / 2 + z + w t) f(t + tau)"},
  };

  Json groups = Json::array();
  for (const auto& g : system.groups) {
    Json jg{{"kind", to_string(g.kind)}};
    if (g.line) jg["direction"] = {g.line->direction[0], g.line->direction[1]};
    if (g.torus) {
      jg["witness"] = element_json(g.torus->witness);
      jg["generator"] = element_json(g.torus->generator);
    }
    groups.push_back(std::move(jg));
  }
  doc["groups"] = std::move(groups);

  Json signals = Json::array();
  for (std::size_t i = 0; i < system.size(); ++i) {
    const auto& prov = system.provenance[i];
    Json samples = Json::array();
    for (Eigen::Index t = 0; t < system.signals[i].size(); ++t) {
      const Complex z = system.signals[i](t);
      samples.push_back({z.real(), z.imag()});
    }
    signals.push_back({{"id", i},
                       {"family", to_string(prov.family)},
                       {"group", prov.group},
                       {"character", prov.character},
                       {"element", prov.element ? element_json(*prov.element) : Json(nullptr)},
                       {"samples", std::move(samples)}});
  }
  doc["signals"] = std::move(signals);
  return doc;
}

SignalSystem system_from_json(const Json& doc) {
  try {
    if (doc.at("format") != "oscsys-signal-system") {
      throw std::invalid_argument("not an oscsys signal system document");
    }
    SignalSystem sys;
    sys.p = doc.at("p").get<std::uint32_t>();
    require_odd_prime(sys.p);
    sys.family = family_from_string(doc.at("family").get<std::string>());

    std::optional<Torus> split_base, nonsplit_base;
    for (const auto& jg : doc.at("groups")) {
      const std::string kind = jg.at("kind");
      if (kind == "line") {
        const auto& d = jg.at("direction");
        sys.groups.push_back({GroupKind::line, Line{sys.p, {d[0].get<std::uint32_t>(), d[1].get<std::uint32_t>()}},
                              std::nullopt, {}});
        continue;
      }
      const bool split = kind == "split";
      if (!split && kind != "nonsplit") throw std::invalid_argument("unknown group kind " + kind);
      auto& base = split ? split_base : nonsplit_base;
      if (!base) base = split ? standard_torus(sys.p) : nonsplit_standard_torus(sys.p);
      Torus t = conjugate(*base, element_from_json(sys.p, jg.at("witness")));
      if (t.generator != element_from_json(sys.p, jg.at("generator"))) {
        throw std::invalid_argument("group generator does not match its witness");
      }
      sys.groups.push_back({split ? GroupKind::split_torus : GroupKind::nonsplit_torus,
                            std::nullopt, std::move(t), {}});
    }

    for (const auto& js : doc.at("signals")) {
      const auto& samples = js.at("samples");
      if (samples.size() != sys.p) throw std::invalid_argument("signal length differs from p");
      Signal f(sys.p);
      for (std::uint32_t t = 0; t < sys.p; ++t) {
        f(t) = Complex{samples[t].at(0).get<double>(), samples[t].at(1).get<double>()};
      }
      Provenance prov{family_from_string(js.at("family").get<std::string>()),
                      js.at("group").get<std::size_t>(), js.at("character").get<std::size_t>(),
                      std::nullopt};
      if (!js.at("element").is_null()) prov.element = element_from_json(sys.p, js.at("element"));
      if (prov.group >= sys.groups.size()) throw std::invalid_argument("signal refers to missing group");
      sys.groups[prov.group].members.push_back(sys.signals.size());
      sys.signals.push_back(std::move(f));
      sys.provenance.push_back(std::move(prov));
    }
    return sys;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed signal document: ") + e.what());
  }
}

void write_system_json(const SignalSystem& system, std::ostream& os) {
  os << to_json(system).dump() << '\n';
}

SignalSystem read_system_json(std::istream& is) {
  Json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed signal document: ") + e.what());
  }
  return system_from_json(doc);
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

Complex parse_complex(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double re = std::strtod(begin, &end);
  if (end == begin || (*end != '+' && *end != '-')) {
    throw std::invalid_argument("bad complex literal '" + text + "'");
  }
  const char* im_begin = end;
  const double im = std::strtod(im_begin, &end);
  if (end == im_begin || *end != 'j' || *(end + 1) != '\0') {
    throw std::invalid_argument("bad complex literal '" + text + "'");
  }
  return {re, im};
}

void write_system_csv(const SignalSystem& system, std::ostream& os) {
  os << "id";
  for (std::uint32_t t = 0; t < system.p; ++t) os << ",t" << t;
  os << '\n';
  for (std::size_t i = 0; i < system.size(); ++i) {
    os << i;
    for (Eigen::Index t = 0; t < system.signals[i].size(); ++t) os << ',' << format_complex(system.signals[i](t));
    os << '\n';
  }
}

Json to_json(const BoundReport& r) {
  return {{"p", r.p},
          {"family", to_string(r.family)},
          {"thresholds",
           {{"mode", r.thresholds.mode == BoundMode::thumbtack ? "thumbtack" : "line_pattern"},
            {"auto", finite_or_null(r.thresholds.auto_corr)},
            {"cross", finite_or_null(r.thresholds.cross)},
            {"supremum", finite_or_null(r.thresholds.supremum)},
            {"slack", r.thresholds.slack}}},
          {"signals", r.auto_off_peak.size()},
          {"max_peak_deviation", r.max_peak_deviation},
          {"max_auto_off_peak", r.max_auto},
          {"worst_auto_signal", r.worst_auto},
          {"max_supremum", r.max_sup},
          {"worst_supremum_signal", r.worst_sup},
          {"max_cross", r.max_cross},
          {"worst_cross_pair", {r.worst_cross.first, r.worst_cross.second}},
          {"pairs_checked", r.pairs_checked},
          {"pairs_sampled", r.pairs_sampled},
          {"seed", r.seed},
          {"line_pattern_deviation", r.line_pattern_deviation},
          {"unimodular_deviation", r.unimodular_deviation},
          {"same_line_deviation", r.same_line_deviation},
          {"per_signal_auto_off_peak", r.auto_off_peak},
          {"per_signal_supremum", r.supremum},
          {"auto_pass", r.auto_pass},
          {"cross_pass", r.cross_pass},
          {"supremum_pass", r.sup_pass},
          {"pass", r.passed()}};
}

Json to_json(const InnerProductReport& r) {
  return {{"pairs", r.pairs}, {"bound", r.bound}, {"max_inner_product", r.max_inner},
          {"seed", r.seed},   {"pass", r.passed}};
}

Json to_json(const FourierClosureReport& r) {
  Json j{{"total", r.total},
         {"matched", r.matched},
         {"min_overlap", r.min_overlap},
         {"permutation", r.permutation},
         {"failures", r.failures},
         {"weyl_torus_signals", r.weyl_torus_size},
         {"weyl_torus_fixed", r.weyl_torus_fixed},
         {"pass", r.passed()}};
  j["weyl_torus_kind"] = r.weyl_torus ? Json(to_string(*r.weyl_torus)) : Json(nullptr);
  return j;
}

Json to_json(const AmbiguityTable& table) {
  Json re = Json::array(), im = Json::array(), mag = Json::array();
  for (Eigen::Index tau = 0; tau < table.values.rows(); ++tau) {
    Json r = Json::array(), i = Json::array(), m = Json::array();
    for (Eigen::Index w = 0; w < table.values.cols(); ++w) {
      r.push_back(table.values(tau, w).real());
      i.push_back(table.values(tau, w).imag());
      m.push_back(std::abs(table.values(tau, w)));
    }
    re.push_back(std::move(r));
    im.push_back(std::move(i));
    mag.push_back(std::move(m));
  }
  return {{"p", table.p},  {"owner", table.owner}, {"indexing", "[tau][w]"},
          {"real", re},    {"imag", im},           {"magnitude", mag},
          {"max_off_peak", table.max_off_peak()}};
}

Json to_json(const RadarReport& r) {
  return {{"trials", r.trials},
          {"successes", r.successes},
          {"success_rate", r.success_rate},
          {"ambiguous_trials", r.ambiguous_trials},
          {"mean_peak_to_sidelobe", r.mean_peak_to_sidelobe}};
}

Json to_json(const CdmaReport& r) {
  Json j{{"user_ser", r.user_ser},
         {"aggregate_ser", r.aggregate_ser},
         {"symbols", r.symbols},
         {"errors", r.errors},
         {"max_interference", r.max_interference}};
  if (r.interference_bound_applies) {
    j["interference_bound"] = r.interference_bound;
    j["interference_bound_holds"] = r.interference_bound_holds;
  }
  return j;
}

Json to_json(const StabilityReport& r) {
  return {{"epsilon", r.epsilon},
          {"stable", r.stable},
          {"auto_stable", r.auto_stable},
          {"cross_stable", r.cross_stable},
          {"bounds", to_json(r.bounds)}};
}

void write_ambiguity_csv(const AmbiguityTable& table, std::ostream& os) {
  os << "tau";
  for (Eigen::Index w = 0; w < table.values.cols(); ++w) os << ",w" << w;
  os << '\n';
  for (Eigen::Index tau = 0; tau < table.values.rows(); ++tau) {
    os << tau;
    for (Eigen::Index w = 0; w < table.values.cols(); ++w) os << ',' << format_complex(table.values(tau, w));
    os << '\n';
  }
}

}  // namespace oscsys
