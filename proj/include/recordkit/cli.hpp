#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "recordkit/dist.hpp"
#include "recordkit/errors.hpp"
#include "recordkit/extract.hpp"
#include "recordkit/io.hpp"
#include "recordkit/laws.hpp"
#include "recordkit/mc.hpp"
#include "recordkit/verify.hpp"

namespace recordkit::cli {

namespace detail {

inline std::vector<std::int64_t> int_list(const std::string& csv, const char* what) {
  std::vector<std::int64_t> out;
  for (double v : io::detail::split_numbers(csv, ',')) {
    const auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v) throw ParseError(std::string(what) + " must be integers");
    out.push_back(i);
  }
  if (out.empty()) throw ParseError(std::string(what) + " must be nonempty");
  return out;
}

inline std::vector<double> real_list(const std::string& csv, const char* what) {
  auto out = io::detail::split_numbers(csv, ',');
  if (out.empty()) throw ParseError(std::string(what) + " must be nonempty");
  return out;
}

inline std::int64_t single_int(const std::string& csv, const char* what) {
  const auto v = int_list(csv, what);
  if (v.size() != 1) throw ParseError(std::string(what) + " takes exactly one value");
  return v[0];
}

inline double single_real(const std::string& csv, const char* what) {
  const auto v = real_list(csv, what);
  if (v.size() != 1) throw ParseError(std::string(what) + " takes exactly one value");
  return v[0];
}

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open input: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline int emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(output_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output: " << output_path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

inline const std::vector<std::string>& formula_ids() {
  static const std::vector<std::string> ids = {
      "interRecords", "lawRtimes", "lrecMarkov", "gamma", "ADR1", "ADR2", "ADR3",
      "DDR2",         "DDR3",      "PEX1",       "GRDMR", "nrec03", "gs21"};
  return ids;
}

struct LawArgs {
  std::string formula, dist_text, k, ell, n, x, y;
  double z = 0;
  std::int64_t j = 0;
  bool has_z = false, has_j = false;
  std::uint64_t horizon = 200;

  DistributionSpec dist() const {
    if (dist_text.empty()) throw ParseError("--dist is required for " + formula);
    return io::parse_distribution_text(dist_text);
  }
};

inline io::json eval_formula(const LawArgs& a) {
  io::json inputs = io::json::object();
  io::json out;
  const auto finish = [&](const laws::LawValue& v) {
    out = {{"formula", v.formula_id},
           {"inputs", inputs},
           {"value", v.value},
           {"support", v.support_flag}};
  };

  if (a.formula == "interRecords") {
    const auto k = int_list(a.k, "--k");
    inputs["k"] = k;
    finish(laws::interrecord_joint_pmf(k));
  } else if (a.formula == "lawRtimes") {
    const auto ell = int_list(a.ell, "--ell");
    inputs["ell"] = ell;
    finish(laws::record_times_joint_pmf(ell));
  } else if (a.formula == "lrecMarkov") {
    if (!a.has_j) throw ParseError("lrecMarkov needs --k and --j");
    const auto k = single_int(a.k, "--k");
    inputs["k"] = k;
    inputs["j"] = a.j;
    finish(laws::record_time_transition_pmf(k, a.j));
  } else if (a.formula == "gamma") {
    const auto k = int_list(a.k, "--k");
    inputs["k"] = k;
    finish(laws::gamma_integral(k));
  } else if (a.formula == "ADR1") {
    const auto xs = real_list(a.x, "--x");
    inputs["x"] = xs;
    finish(laws::record_value_joint_pdf(a.dist(), xs));
  } else if (a.formula == "ADR2") {
    const auto ns = int_list(a.n, "--n");
    const auto xs = real_list(a.x, "--x");
    inputs["n"] = ns;
    inputs["x"] = xs;
    std::vector<std::size_t> idx;
    for (std::int64_t v : ns) {
      if (v < 1) throw ParseError("--n ordinals start at 1");
      idx.push_back(static_cast<std::size_t>(v));
    }
    finish(laws::record_value_subvector_pdf(a.dist(), laws::IndexTuple(idx), xs));
  } else if (a.formula == "ADR3") {
    const auto n = single_int(a.n, "--n");
    const auto x = single_real(a.x, "--x");
    inputs["n"] = n;
    inputs["x"] = x;
    if (n < 1) throw ParseError("--n starts at 1");
    finish(laws::record_value_marginal_pdf(a.dist(), static_cast<std::size_t>(n), x));
  } else if (a.formula == "DDR2") {
    const auto ys = real_list(a.y, "--y");
    inputs["y"] = ys;
    finish(laws::discrete_record_joint_pmf(a.dist(), ys));
  } else if (a.formula == "DDR3") {
    const auto n = single_int(a.n, "--n");
    const auto y = single_real(a.y, "--y");
    inputs["n"] = n;
    inputs["y"] = y;
    if (n < 1) throw ParseError("--n starts at 1");
    finish(laws::discrete_record_pmf(a.dist(), static_cast<std::size_t>(n), y));
  } else if (a.formula == "PEX1") {
    const auto ys = real_list(a.y, "--y");
    inputs["y"] = ys;
    finish(laws::joint_max_cdf(a.dist(), ys));
  } else if (a.formula == "GRDMR") {
    const auto ys = real_list(a.y, "--y");
    inputs["y"] = ys;
    inputs["horizon"] = a.horizon;
    const auto r = laws::record_joint_cdf_truncated(a.dist(), ys, a.horizon);
    finish(r.law);
    out["truncation_mass"] = r.truncation_mass;
  } else if (a.formula == "nrec03") {
    finish(laws::prob_no_further_record(a.dist()));
  } else if (a.formula == "gs21") {
    const auto n = single_int(a.n, "--n");
    const auto y = single_real(a.y, "--y");
    if (!a.has_z) throw ParseError("gs21 needs --z");
    inputs["n"] = n;
    inputs["z"] = a.z;
    inputs["y"] = y;
    if (n < 1) throw ParseError("--n starts at 1");
    finish(laws::hazard_simplex_integral(a.dist(), static_cast<std::size_t>(n), a.z, y));
  } else {
    throw ParseError("unknown formula id: " + a.formula + " (see law --list)");
  }
  if (!a.dist_text.empty()) out["inputs"]["dist"] = io::distribution_to_json(a.dist());
  return out;
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"record-value and record-time laws: extraction, closed forms, oracles, MC"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "extract record events from a sequence file");
  std::string ex_input, ex_kind = "strong-upper", ex_format = "json", ex_output;
  extract->add_option("--input", ex_input, "sequence file (CSV rows or JSON array), - for stdin")
      ->required();
  extract->add_option("--kind", ex_kind,
                      "record kind: strong-upper|weak-upper|strong-lower|weak-lower");
  extract->add_option("--format", ex_format, "output format: json|csv");
  extract->add_option("--output", ex_output, "output path (default stdout)");

  // law
  auto* law = app.add_subcommand("law", "evaluate a closed-form law by formula id");
  detail::LawArgs la;
  bool law_list = false;
  law->add_flag("--list", law_list, "list formula ids and exit");
  law->add_option("--formula", la.formula, "formula id (see --list)");
  law->add_option("--dist", la.dist_text, "distribution JSON or shorthand (exp:1.0, unif:0,1, geom:0.5)");
  law->add_option("--k", la.k, "integer tuple, comma separated");
  law->add_option("--ell", la.ell, "record-time tuple l_2<l_3<..., comma separated");
  law->add_option("--n", la.n, "record ordinal or ordinal tuple");
  law->add_option("--x", la.x, "real point or tuple");
  law->add_option("--y", la.y, "real point or tuple");
  law->add_option("--z", la.z, "lower bound")->each([&](const std::string&) { la.has_z = true; });
  law->add_option("--j", la.j, "next record time")->each([&](const std::string&) { la.has_j = true; });
  law->add_option("--horizon", la.horizon, "record-time horizon for truncated sums");
  std::string law_output;
  law->add_option("--output", law_output, "output path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo estimate of a record event");
  std::string sim_dist, sim_target = "at-least", sim_kind = "strong-upper", sim_y, sim_output;
  std::uint64_t sim_trials = 100000, sim_horizon = 10000, sim_seed = 0, sim_k = 1, sim_j = 0,
                sim_dim = 1;
  std::int64_t sim_n = 2;
  sim->add_option("--dist", sim_dist, "distribution JSON or shorthand")->required();
  sim->add_option("--target", sim_target,
                  "at-least | delta | no-further | max-cdf | transition");
  sim->add_option("--kind", sim_kind, "record kind for at-least");
  sim->add_option("--n", sim_n, "record count for at-least");
  sim->add_option("--k", sim_k, "gap value (delta) or conditioning record time (transition)");
  sim->add_option("--j", sim_j, "next record time (transition)");
  sim->add_option("--y", sim_y, "bounds tuple for max-cdf");
  sim->add_option("--dim", sim_dim, "product-order dimension (transition)");
  sim->add_option("--trials", sim_trials, "number of trials");
  sim->add_option("--horizon", sim_horizon, "max observations per trial");
  sim->add_option("--seed", sim_seed, "RNG seed (required)")->required();
  sim->add_option("--output", sim_output, "output path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run the acceptance suite; nonzero exit on failure");
  std::string ver_suite = "core", ver_output;
  std::uint64_t ver_seed = 0;
  ver->add_option("--suite", ver_suite, "core | quick");
  ver->add_option("--seed", ver_seed, "RNG seed (required)")->required();
  ver->add_option("--output", ver_output, "output path (default stdout)");

  // table
  auto* tab = app.add_subcommand("table", "acceptance checks as CSV");
  std::string tab_suite = "core", tab_output;
  std::uint64_t tab_seed = 0;
  tab->add_option("--suite", tab_suite, "core | quick");
  tab->add_option("--seed", tab_seed, "RNG seed (required)")->required();
  tab->add_option("--output", tab_output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (extract->parsed()) {
      const auto rows = io::read_sequence(detail::read_input(ex_input));
      const RecordKind kind = parse_record_kind(ex_kind);
      if (ex_format != "json" && ex_format != "csv") throw ParseError("--format must be json or csv");
      std::string text;
      if (rows.empty()) throw EmptyInput("sequence file holds no observations");
      if (rows.front().size() == 1) {
        std::vector<double> seq;
        for (const auto& r : rows) seq.push_back(r[0]);
        const auto rs = extract_all(seq, kind);
        text = ex_format == "json" ? io::record_sequence_to_json(rs).dump(2) + "\n"
                                   : io::record_sequence_to_csv(rs);
      } else {
        const VectorSpace space{rows.front().size()};
        const auto rs = extract_all(rows, kind, space);
        text = ex_format == "json" ? io::record_sequence_to_json(rs).dump(2) + "\n"
                                   : io::record_sequence_to_csv(rs);
      }
      return detail::emit(text, ex_output);
    }

    if (law->parsed()) {
      if (law_list) {
        std::string text;
        for (const auto& id : detail::formula_ids()) text += id + "\n";
        return detail::emit(text, law_output);
      }
      if (la.formula.empty()) throw ParseError("law needs --formula or --list");
      return detail::emit(detail::eval_formula(la).dump(2) + "\n", law_output);
    }

    if (sim->parsed()) {
      const auto d = io::parse_distribution_text(sim_dist);
      const mc::McConfig cfg{sim_trials, sim_horizon, sim_seed, {}};
      mc::McReport rep;
      if (sim_target == "at-least") {
        if (sim_n < 1) throw ParseError("--n must be >= 1");
        const RecordKind kind = parse_record_kind(sim_kind);
        const auto want = static_cast<std::size_t>(sim_n);
        rep = mc::estimate_event(cfg, [&](mc::TrialRng& rng) -> std::optional<bool> {
          Extractor<RealSpace> ex(RealSpace{}, kind);
          std::size_t seen = 0;
          for (std::uint64_t i = 0; i < cfg.horizon; ++i) {
            if (ex.feed(mc::draw(d, rng))) ++seen;
            if (seen >= want) return true;
          }
          return false;  // horizon-scoped event: fewer than n records within horizon
        });
      } else if (sim_target == "delta") {
        if (sim_k < 1) throw ParseError("--k must be >= 1");
        if (sim_horizon < sim_k + 1) throw ParseError("--horizon must be >= k + 1");
        rep = mc::estimate_event(cfg, [&](mc::TrialRng& rng) -> std::optional<bool> {
          const double x1 = mc::draw(d, rng);
          for (std::uint64_t g = 1; g <= sim_k; ++g)
            if (mc::draw(d, rng) > x1) return g == sim_k;
          return false;  // gap exceeds k
        });
      } else if (sim_target == "no-further") {
        rep = mc::estimate_no_further_record(d, cfg);
      } else if (sim_target == "max-cdf") {
        rep = mc::estimate_max_cdf_event(d, detail::real_list(sim_y, "--y"), cfg);
      } else if (sim_target == "transition") {
        const std::vector<DistributionSpec> marginals(sim_dim, d);
        rep = mc::estimate_poset_transition(marginals, sim_k, sim_j, cfg);
      } else {
        throw ParseError("unknown --target: " + sim_target);
      }
      io::json j = io::to_json(rep);
      j["target"] = sim_target;
      return detail::emit(j.dump(2) + "\n", sim_output);
    }

    if (ver->parsed()) {
      const auto rep = verify::run_suite(ver_suite, ver_seed);
      const int rc = detail::emit(verify::suite_report_to_json(rep).dump(2) + "\n", ver_output);
      if (rc != 0) return rc;
      return rep.all_pass() ? 0 : 1;
    }

    if (tab->parsed()) {
      const auto rep = verify::run_suite(tab_suite, tab_seed);
      std::ostringstream os;
      os << "criterion,check,pass,detail\n";
      for (const auto& c : rep.checks) {
        std::string detail_quoted = c.detail;
        for (auto& ch : detail_quoted)
          if (ch == ',') ch = ';';
        os << c.criterion << ',' << c.id << ',' << (c.pass ? "true" : "false") << ','
           << detail_quoted << '\n';
      }
      return detail::emit(os.str(), tab_output);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace recordkit::cli
