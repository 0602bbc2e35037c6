#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "recordkit/dist.hpp"
#include "recordkit/errors.hpp"
#include "recordkit/extract.hpp"
#include "recordkit/mc.hpp"

namespace recordkit::io {

using nlohmann::json;

// --- DistributionSpec ---

inline json distribution_to_json(const DistributionSpec& d) {
  json j;
  if (const auto* e = std::get_if<Exponential>(&d.variant())) {
    j = {{"dist", "exponential"}, {"theta", e->theta}};
  } else if (const auto* u = std::get_if<UniformCont>(&d.variant())) {
    j = {{"dist", "uniform"}, {"a", u->a}, {"b", u->b}};
  } else if (const auto* g = std::get_if<Geometric>(&d.variant())) {
    j = {{"dist", "geometric"}, {"p", g->p}};
  } else if (const auto* f = std::get_if<FiniteDiscrete>(&d.variant())) {
    j = {{"dist", "finite"}, {"support", f->support}, {"probs", f->probs}};
  } else if (const auto* t = std::get_if<TabulatedContinuous>(&d.variant())) {
    j = {{"dist", "tabulated"}, {"grid", t->grid}, {"cdf", t->cdf}};
  }
  return j;
}

inline DistributionSpec parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("dist") || !j["dist"].is_string())
    throw ParseError("distribution JSON needs a \"dist\" tag");
  const std::string tag = j["dist"].get<std::string>();
  try {
    if (tag == "exponential") return DistributionSpec::exponential(j.at("theta").get<double>());
    if (tag == "uniform")
      return DistributionSpec::uniform(j.at("a").get<double>(), j.at("b").get<double>());
    if (tag == "geometric") return DistributionSpec::geometric(j.at("p").get<double>());
    if (tag == "finite")
      return DistributionSpec::finite(j.at("support").get<std::vector<double>>(),
                                      j.at("probs").get<std::vector<double>>());
    if (tag == "tabulated")
      return DistributionSpec::tabulated(j.at("grid").get<std::vector<double>>(),
                                         j.at("cdf").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad distribution JSON: ") + e.what());
  }
  throw ParseError("unknown distribution tag: " + tag);
}

namespace detail {

inline std::vector<double> split_numbers(const std::string& s, char sep) {
  std::vector<double> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, sep)) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw ParseError("trailing junk in number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Accepts either inline JSON ({"dist":...}) or the shorthand grammar
/// exp:THETA | unif:A,B | geom:P | finite:V=P,V=P,... .
inline DistributionSpec parse_distribution_text(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string s = text.substr(b, e - b);
  if (s.empty()) throw ParseError("empty distribution");
  if (s.front() == '{') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& ex) {
      throw ParseError(std::string("bad distribution JSON: ") + ex.what());
    }
    return parse_distribution(j);
  }
  const std::size_t colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("shorthand needs NAME:ARGS, got '" + s + "'");
  const std::string name = s.substr(0, colon);
  const std::string args = s.substr(colon + 1);
  if (name == "exp" || name == "exponential") {
    const auto v = detail::split_numbers(args, ',');
    if (v.size() != 1) throw ParseError("exp takes one parameter");
    return DistributionSpec::exponential(v[0]);
  }
  if (name == "unif" || name == "uniform") {
    const auto v = detail::split_numbers(args, ',');
    if (v.size() != 2) throw ParseError("unif takes two parameters");
    return DistributionSpec::uniform(v[0], v[1]);
  }
  if (name == "geom" || name == "geometric") {
    const auto v = detail::split_numbers(args, ',');
    if (v.size() != 1) throw ParseError("geom takes one parameter");
    return DistributionSpec::geometric(v[0]);
  }
  if (name == "finite") {
    std::vector<double> support, probs;
    std::string tok;
    std::istringstream in(args);
    while (std::getline(in, tok, ',')) {
      const std::size_t eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError("finite atoms use VALUE=PROB");
      support.push_back(detail::split_numbers(tok.substr(0, eq), ',').at(0));
      probs.push_back(detail::split_numbers(tok.substr(eq + 1), ',').at(0));
    }
    return DistributionSpec::finite(std::move(support), std::move(probs));
  }
  throw ParseError("unknown distribution shorthand: " + name);
}

// --- observation sequences ---

/// CSV: one observation per row, d columns for d-dimensional values. Empty
/// lines are skipped; a leading "n,t,value"-style header is not expected
/// here (input sequences are raw observations).
inline std::vector<std::vector<double>> read_sequence_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    rows.push_back(detail::split_numbers(line, ','));
    if (rows.back().size() != rows.front().size())
      throw ParseError("inconsistent column count in sequence CSV");
  }
  return rows;
}

/// JSON: an array of numbers (d=1) or an array of equal-length arrays.
inline std::vector<std::vector<double>> read_sequence_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw ParseError(std::string("bad sequence JSON: ") + ex.what());
  }
  if (!j.is_array()) throw ParseError("sequence JSON must be an array");
  std::vector<std::vector<double>> rows;
  for (const auto& el : j) {
    if (el.is_number()) {
      rows.push_back({el.get<double>()});
    } else if (el.is_array()) {
      rows.push_back(el.get<std::vector<double>>());
    } else {
      throw ParseError("sequence entries must be numbers or arrays");
    }
    if (rows.back().size() != rows.front().size())
      throw ParseError("inconsistent dimension in sequence JSON");
  }
  return rows;
}

/// Sniffs JSON (leading '[') vs CSV.
inline std::vector<std::vector<double>> read_sequence(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '[' ? read_sequence_json(text) : read_sequence_csv(text);
  }
  throw ParseError("empty sequence input");
}

// --- RecordSequence ---

namespace detail {

inline json value_to_json(double v) { return v; }
inline json value_to_json(const std::vector<double>& v) { return v; }

inline void value_to_csv(std::ostream& os, double v) { os << v; }
inline void value_to_csv(std::ostream& os, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
}

inline std::size_t value_width(double) { return 1; }
inline std::size_t value_width(const std::vector<double>& v) { return v.size(); }

}  // namespace detail

template <class Element>
json record_sequence_to_json(const RecordSequence<Element>& rs) {
  json events = json::array();
  for (const auto& ev : rs.events)
    events.push_back(
        {{"n", ev.ordinal}, {"t", ev.time_index}, {"value", detail::value_to_json(ev.value)}});
  return {{"kind", to_string(rs.kind)},
          {"events", events},
          {"deltas", rs.deltas()},
          {"count", rs.count()}};
}

template <class Element>
std::string record_sequence_to_csv(const RecordSequence<Element>& rs) {
  std::ostringstream os;
  os.precision(17);
  const std::size_t width = rs.events.empty() ? 1 : detail::value_width(rs.events.front().value);
  os << "n,t,";
  if (width == 1) {
    os << "value";
  } else {
    for (std::size_t i = 0; i < width; ++i) os << (i ? "," : "") << "value_" << (i + 1);
  }
  os << '\n';
  for (const auto& ev : rs.events) {
    os << ev.ordinal << ',' << ev.time_index << ',';
    detail::value_to_csv(os, ev.value);
    os << '\n';
  }
  return os.str();
}

// --- reports ---

inline json to_json(const mc::McReport& r) {
  return {{"estimate", r.estimate},
          {"std_error", r.std_error},
          {"trials_used", r.trials_used},
          {"truncation_mass", r.truncation_mass},
          {"seed", r.seed}};
}

inline json to_json(const mc::GofReport& r) {
  return {{"test", mc::to_string(r.test)},
          {"statistic", r.statistic},
          {"threshold", r.threshold},
          {"pass", r.pass},
          {"cells_or_n", r.cells_or_n}};
}

}  // namespace recordkit::io
