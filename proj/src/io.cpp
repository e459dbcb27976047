#include "ffconv/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <sstream>

#include "ffconv/error.hpp"

namespace ffconv {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.dump());
  throw ParseError("expected a rational string or an integer, got " + v.dump());
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

MonicPoly parse_polynomial_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("polynomial JSON must be an object");
  if (j.contains("coeffs_monic_desc")) {
    const json& c = j.at("coeffs_monic_desc");
    if (!c.is_array() || c.size() < 2) throw ParseError("coeffs_monic_desc must list at least two coefficients");
    std::vector<Rational> coeffs;
    for (const auto& v : c) coeffs.push_back(rational_from_json(v));
    if (coeffs.front() != 1) throw ParseError("coeffs_monic_desc must start with 1");
    return MonicPoly(std::move(coeffs));
  }
  if (j.contains("roots")) {
    const json& r = j.at("roots");
    if (!r.is_array() || r.empty()) throw ParseError("roots must be a nonempty array");
    std::vector<Rational> roots;
    for (const auto& v : r) roots.push_back(rational_from_json(v));
    if (j.contains("degree")) {
      if (!j.at("degree").is_number_integer() || j.at("degree").get<long long>() != static_cast<long long>(roots.size())) {
        throw ParseError("degree does not match the number of roots");
      }
    }
    return MonicPoly::from_roots(std::span<const Rational>(roots));
  }
  throw ParseError("polynomial JSON needs \"roots\" or \"coeffs_monic_desc\"");
}

std::string polynomial_to_json(const MonicPoly& p) {
  json c = json::array();
  for (const auto& v : p.coeffs()) c.push_back(to_string(v));
  return json{{"coeffs_monic_desc", c}}.dump();
}

std::string location_to_string(const Location& x) {
  if (x.exact) return to_string(*x.exact);
  std::string s = format_double(x.approx);
  if (s.find_first_of(".eEin") == std::string::npos) s += ".0";
  return s;
}

Location parse_location(std::string_view text) {
  // Exact values are written as integers or p/q; anything decimal is an approximation.
  if (text.find_first_of(".eEin") != std::string_view::npos) return Location::of(parse_double(text));
  return Location::of(parse_rational(text));
}

std::string measure_to_json(const EmpiricalMeasure& m) {
  json arr = json::array();
  for (const auto& e : m.entries()) arr.push_back({{"root", location_to_string(e.location)}, {"mult", e.multiplicity}});
  return arr.dump();
}

EmpiricalMeasure parse_measure_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ParseError("measure JSON must be an array");
  std::vector<MeasureEntry> entries;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("root") || !e.contains("mult") || !e.at("root").is_string() ||
        !e.at("mult").is_number_integer()) {
      throw ParseError("measure entries need a string \"root\" and an integer \"mult\"");
    }
    entries.push_back({parse_location(e.at("root").get<std::string>()), e.at("mult").get<int>()});
  }
  try {
    return EmpiricalMeasure(std::move(entries));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string step_cdf_to_csv(const StepCDF& f) {
  std::string out = "x,F\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out += location_to_string(f.breakpoints()[i]) + "," + to_string(f.values()[i]) + "\n";
  }
  return out;
}

StepCDF parse_step_cdf_csv(std::string_view text) {
  auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "x,F") throw ParseError("step CDF CSV must start with header x,F");
  std::vector<Location> xs;
  std::vector<Rational> vs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split(lines[i], ',');
    if (cells.size() != 2) throw ParseError("step CDF CSV rows need two cells");
    xs.push_back(parse_location(cells[0]));
    vs.push_back(parse_rational(cells[1]));
  }
  try {
    return StepCDF(std::move(xs), std::move(vs));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

DiscreteMeasure parse_discrete_measure(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string& name = parts.front();
  if (name == "bernoulli_pm1" && parts.size() == 1) return *reference_cdf(name, {}).as_discrete();
  if (name == "point" && parts.size() == 2) return DiscreteMeasure({{parse_rational(parts[1]), Rational(1)}});
  if (name == "discrete" && parts.size() >= 2) {
    std::vector<Atom> atoms;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto at = parts[i].find('@');
      if (at == std::string::npos) throw ParseError("discrete atoms are written location@mass");
      atoms.push_back({parse_rational(std::string_view(parts[i]).substr(0, at)),
                       parse_rational(std::string_view(parts[i]).substr(at + 1))});
    }
    try {
      return DiscreteMeasure(std::move(atoms));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("not an atomic law: '" + std::string(spec) + "'");
}

AnalyticCDF parse_target(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string& name = parts.front();
  if (name == "discrete") return AnalyticCDF::discrete(parse_discrete_measure(spec));
  std::vector<Rational> params;
  for (std::size_t i = 1; i < parts.size(); ++i) params.push_back(parse_rational(parts[i]));
  return reference_cdf(name, params);
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "degree,d_K,d_L,runtime_ms\n";
  for (const auto& r : rows) {
    out += std::to_string(r.degree) + "," + format_double(r.d_K) + "," + format_double(r.d_L) + "," +
           std::to_string(r.runtime_ms) + "\n";
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "degree,d_K,d_L,runtime_ms") {
    throw ParseError("sweep CSV must start with header degree,d_K,d_L,runtime_ms");
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split(lines[i], ',');
    if (cells.size() != 4) throw ParseError("sweep CSV rows need four cells");
    SweepRow r;
    r.degree = static_cast<int>(parse_double(cells[0]));
    r.d_K = parse_double(cells[1]);
    r.d_L = parse_double(cells[2]);
    r.runtime_ms = static_cast<long long>(parse_double(cells[3]));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ffconv
