#include "ffconv/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ffconv/convolve.hpp"
#include "ffconv/error.hpp"
#include "ffconv/io.hpp"
#include "ffconv/measures.hpp"
#include "ffconv/metrics.hpp"
#include "ffconv/rmt_mc.hpp"

namespace ffconv::cli {

namespace {

using nlohmann::json;

std::string read_source(const std::string& arg) {
  // Inline JSON is accepted in place of a file name.
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot read '" + arg + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MonicPoly load_poly(const std::string& arg) { return parse_polynomial_json(read_source(arg)); }

ConvKind parse_kind(const std::string& op) {
  if (op == "boxplus") return ConvKind::additive;
  if (op == "boxtimes" || op == "boxtimes-diffop") return ConvKind::multiplicative;
  throw ParseError("unknown --op '" + op + "'");
}

json distance_json(const DistanceResult& r) {
  json j;
  j["value"] = r.value;
  j["exact_value"] = r.exact_value ? json(to_string(*r.exact_value)) : json(nullptr);
  j["exact"] = r.exact;
  j["witness"] = r.witness;
  j["error_bound"] = r.error_bound;
  return j;
}

/// Monic polynomial whose roots are the squares of the roots of p:
/// (-1)^d p(x) p(-x) is a polynomial in x^2.
MonicPoly squared_roots(const MonicPoly& p) {
  const int d = p.degree();
  std::vector<Rational> asc(p.coeffs().rbegin(), p.coeffs().rend());
  std::vector<Rational> neg(asc);
  for (int i = 1; i <= d; i += 2) neg[i] = -neg[i];
  std::vector<Rational> prod(2 * d + 1);
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) prod[i + j] += asc[i] * neg[j];
  }
  std::vector<Rational> out(d + 1);
  for (int k = 0; k <= d; ++k) out[d - k] = (d % 2 == 0) ? prod[2 * k] : Rational(-prod[2 * k]);
  return MonicPoly(std::move(out));
}

std::vector<double> approx_roots(const MonicPoly& p) {
  std::vector<double> out;
  for (const auto& x : roots_with_multiplicity(p).sorted_roots()) out.push_back(x.approx);
  return out;
}

std::vector<int> parse_degrees(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(item, &used);
      if (used != item.size() || d < 1) throw std::invalid_argument(item);
      out.push_back(d);
    } catch (const std::exception&) {
      throw ParseError("bad degree '" + item + "' in --degrees");
    }
  }
  if (out.empty()) throw ParseError("--degrees is empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw ParseError("--degrees must be strictly increasing");
  }
  return out;
}

/// The quantile polynomial of an atomic law, which must reproduce it exactly at degree d.
MonicPoly realize_exactly(const DiscreteMeasure& mu, int d, const char* which) {
  const StepCDF target = mu.step_cdf();
  MonicPoly p = quantile_poly(target, d);
  const DistanceResult r = kolmogorov(empirical_cdf(p), target);
  if (!r.exact_value || *r.exact_value != 0) {
    throw DomainError(std::string(which) + " is not realized exactly at degree " + std::to_string(d) +
                      " (d_K = " + to_string(*r.exact_value) + ")");
  }
  return p;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite free convolutions of real-rooted polynomials in exact arithmetic", "ffconv"};
  app.require_subcommand(1);

  std::string op = "boxplus";
  std::string a_src, b_src, target_spec, mu_spec, nu_spec, degrees = "8,32,128,512", out_path;
  double tol = kDefaultRootTol;
  bool as_cdf = false, use_mc = false;
  int l = 0, degree = 0, matrix_dim = 1000;
  long long samples = 100000;
  long long sweep_samples = 20;
  std::uint64_t seed = 1;

  auto* convolve_cmd = app.add_subcommand("convolve", "Convolve two polynomials");
  convolve_cmd->add_option("--op", op, "boxplus, boxtimes or boxtimes-diffop")
      ->check(CLI::IsMember({"boxplus", "boxtimes", "boxtimes-diffop"}));
  convolve_cmd->add_option("a", a_src, "Polynomial JSON (file or inline)")->required();
  convolve_cmd->add_option("b", b_src, "Polynomial JSON (file or inline)")->required();

  auto* roots_cmd = app.add_subcommand("roots", "Roots with multiplicities, or the step CDF");
  roots_cmd->add_option("p", a_src, "Polynomial JSON")->required();
  roots_cmd->add_option("--tol", tol, "Isolating interval width")->check(CLI::PositiveNumber);
  roots_cmd->add_flag("--cdf", as_cdf, "Print the step CDF as CSV");

  auto* distance_cmd = app.add_subcommand("distance", "Kolmogorov and Lévy distances");
  distance_cmd->add_option("a", a_src, "Polynomial JSON")->required();
  distance_cmd->add_option("b", b_src, "Polynomial JSON");
  distance_cmd->add_option("--target", target_spec, "Reference law instead of b, e.g. arcsine:-2:2");

  auto* atoms_cmd = app.add_subcommand("atoms", "Atom triplets of a convolution");
  atoms_cmd->add_option("--op", op, "boxplus or boxtimes")->check(CLI::IsMember({"boxplus", "boxtimes"}));
  atoms_cmd->add_option("p", a_src, "Polynomial JSON")->required();
  atoms_cmd->add_option("q", b_src, "Polynomial JSON")->required();

  auto* chain_cmd = app.add_subcommand("chain", "Interlacing chain from q towards p");
  chain_cmd->add_option("--l", l, "Chain length")->required();
  chain_cmd->add_option("p", a_src, "Polynomial JSON")->required();
  chain_cmd->add_option("q", b_src, "Polynomial JSON")->required();

  auto* quantile_cmd = app.add_subcommand("quantile", "Quantile polynomial of a reference law");
  quantile_cmd->add_option("--target", target_spec, "Reference law")->required();
  quantile_cmd->add_option("--degree", degree, "Degree")->required()->check(CLI::PositiveNumber);

  auto* mc_cmd = app.add_subcommand("mc-verify", "Compare a convolution with its random-matrix expectation");
  mc_cmd->add_option("--op", op, "boxplus or boxtimes")->check(CLI::IsMember({"boxplus", "boxtimes"}));
  mc_cmd->add_option("a", a_src, "Polynomial JSON (spectrum of A)")->required();
  mc_cmd->add_option("b", b_src, "Polynomial JSON (spectrum of B)")->required();
  mc_cmd->add_option("--samples", samples, "Monte-Carlo samples")->check(CLI::Range(2LL, 1LL << 40));
  mc_cmd->add_option("--seed", seed, "Seed");

  auto* sweep_cmd = app.add_subcommand("sweep", "Distance to the free limit across degrees");
  sweep_cmd->add_option("--mu", mu_spec, "Atomic law, e.g. bernoulli_pm1 or discrete:1@1/2:4@1/2")->required();
  sweep_cmd->add_option("--nu", nu_spec, "Atomic law")->required();
  sweep_cmd->add_option("--op", op, "boxplus or boxtimes")->check(CLI::IsMember({"boxplus", "boxtimes"}));
  auto* target_opt = sweep_cmd->add_option("--target", target_spec, "Reference law for the limit");
  auto* mc_flag = sweep_cmd->add_flag("--mc", use_mc, "Use a random-matrix target");
  target_opt->excludes(mc_flag);
  sweep_cmd->add_option("--degrees", degrees, "Comma separated, increasing");
  sweep_cmd->add_option("--matrix-dim", matrix_dim, "Matrix size for --mc")->check(CLI::Range(2, 100000));
  sweep_cmd->add_option("--samples", sweep_samples, "Matrices for --mc")->check(CLI::Range(1LL, 1LL << 30));
  sweep_cmd->add_option("--seed", seed, "Seed for --mc");
  sweep_cmd->add_option("--out", out_path, "CSV file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*convolve_cmd) {
      const MonicPoly a = load_poly(a_src);
      const MonicPoly b = load_poly(b_src);
      MonicPoly r = op == "boxplus" ? boxplus(a, b) : op == "boxtimes" ? boxtimes(a, b) : boxtimes_via_diffop(a, b);
      out << polynomial_to_json(r) << "\n";
    } else if (*roots_cmd) {
      const EmpiricalMeasure m = roots_with_multiplicity(load_poly(a_src), tol);
      if (as_cdf) {
        out << step_cdf_to_csv(m.cdf());
      } else {
        out << measure_to_json(m) << "\n";
      }
    } else if (*distance_cmd) {
      if (b_src.empty() == target_spec.empty()) throw ParseError("distance needs exactly one of b or --target");
      const AnyCDF f = empirical_cdf(load_poly(a_src));
      const AnyCDF g = target_spec.empty() ? AnyCDF(empirical_cdf(load_poly(b_src))) : AnyCDF(parse_target(target_spec));
      json j;
      j["d_K"] = distance_json(kolmogorov(f, g));
      j["d_L"] = distance_json(levy(f, g));
      out << j.dump() << "\n";
    } else if (*atoms_cmd) {
      json arr = json::array();
      for (const auto& t : atom_triplets(load_poly(a_src), load_poly(b_src), parse_kind(op))) {
        arr.push_back({{"alpha", to_string(t.alpha)},
                       {"beta", to_string(t.beta)},
                       {"gamma", to_string(t.gamma)},
                       {"mult", t.multiplicity},
                       {"mass", to_string(t.mass)},
                       {"cdf", t.cdf_at_gamma ? json(to_string(*t.cdf_at_gamma)) : json(nullptr)}});
      }
      out << arr.dump() << "\n";
    } else if (*chain_cmd) {
      json arr = json::array();
      for (const auto& q : interlacing_chain(load_poly(a_src), load_poly(b_src), l)) {
        arr.push_back(json::parse(polynomial_to_json(q)));
      }
      out << arr.dump() << "\n";
    } else if (*quantile_cmd) {
      out << polynomial_to_json(quantile_poly(parse_target(target_spec), degree)) << "\n";
    } else if (*mc_cmd) {
      const ConvKind kind = parse_kind(op);
      const MonicPoly a = load_poly(a_src);
      const MonicPoly b = load_poly(b_src);
      // E det(xI - A U B U* A) is the convolution of B with the squares of A's spectrum.
      const MonicPoly exact = kind == ConvKind::additive ? boxplus(a, b) : boxtimes(squared_roots(a), b);
      const auto ra = approx_roots(a);
      const auto rb = approx_roots(b);
      const MCEstimate est = expected_charpoly_mc(ra, rb, kind, samples, seed);
      json coeffs = json::array();
      bool pass = true;
      for (int k = 0; k <= exact.degree(); ++k) {
        const double e = to_double(exact.coeffs()[k]);
        const double dev = std::fabs(est.coeff_means[k] - e);
        const bool within = dev <= 4.0 * est.coeff_stderrs[k] + 1e-9 * (1.0 + std::fabs(e));
        pass = pass && within;
        coeffs.push_back({{"k", k},
                          {"exact", to_string(exact.coeffs()[k])},
                          {"mean", est.coeff_means[k]},
                          {"stderr", est.coeff_stderrs[k]},
                          {"within_4se", within}});
      }
      json j{{"op", op}, {"samples", est.samples}, {"seed", est.seed}, {"coefficients", coeffs}, {"pass", pass}};
      out << j.dump() << "\n";
      return pass ? 0 : 1;
    } else if (*sweep_cmd) {
      if (!use_mc && target_spec.empty()) throw ParseError("sweep needs --target or --mc");
      const ConvKind kind = parse_kind(op);
      const DiscreteMeasure mu = parse_discrete_measure(mu_spec);
      const DiscreteMeasure nu = parse_discrete_measure(nu_spec);
      const std::vector<int> ds = parse_degrees(degrees);
      AnyCDF target = use_mc ? AnyCDF(spectral_cdf_mc(mu, nu, kind, matrix_dim, static_cast<int>(sweep_samples), seed).cdf)
                             : AnyCDF(parse_target(target_spec));
      std::vector<SweepRow> rows;
      for (int d : ds) {
        const auto start = std::chrono::steady_clock::now();
        const MonicPoly p = realize_exactly(mu, d, "mu");
        const MonicPoly q = realize_exactly(nu, d, "nu");
        const AnyCDF f = empirical_cdf(convolve(p, q, kind));
        SweepRow row;
        row.degree = d;
        row.d_K = kolmogorov(f, target).value;
        row.d_L = levy(f, target).value;
        row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(row);
      }
      const std::string csv = sweep_to_csv(rows);
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream file(out_path);
        if (!file) throw ParseError("cannot write '" + out_path + "'");
        file << csv;
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace ffconv::cli
