// Command-line surface for the residua library: the canonical circle and
// cone experiments, emitting machine-readable reports and plot data.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "residua/io/json.hpp"
#include "residua/io/uspec.hpp"
#include "residua/residua.hpp"

namespace circ = residua::circle;
namespace cone = residua::cone;
namespace num = residua::numerics;
namespace rad = residua::radul;
namespace zt = residua::zeta;
using residua::cplx;
using residua::io::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_assertion = 1;
constexpr int exit_input = 2;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  int truncation = 256;
  unsigned long long seed = 1;
  double tolerance = 1e-6;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON configuration file");
  cmd->add_option("--out", opt.out_path, "output path (stdout when omitted)");
  cmd->add_option("--format", opt.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--truncation", opt.truncation, "Fourier truncation N");
  cmd->add_option("--seed", opt.seed, "random seed recorded in reports");
  cmd->add_option("--tolerance", opt.tolerance, "agreement tolerance");
}

// The output path is invocation metadata, not experiment configuration, and
// embedding it would break byte-identical reruns.
json resolved_config(const std::string& command, const CommonOptions& opt) {
  return json{{"command", command},
              {"config", opt.config_path},
              {"format", opt.format},
              {"truncation", opt.truncation},
              {"seed", opt.seed},
              {"tolerance", opt.tolerance}};
}

// temp file plus rename so readers never see a torn report
void atomic_write(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw residua::invalid_input("cannot open output file: " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

json load_config(const CommonOptions& opt) {
  if (opt.config_path.empty()) throw residua::invalid_input("--config is required here");
  std::ifstream in(opt.config_path);
  if (!in) throw residua::invalid_input("cannot open config file: " + opt.config_path);
  return json::parse(in);  // parse errors carry byte positions
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

json cocycle_to_json(const rad::CocycleReport& rep) {
  json breakdown = json::array();
  for (const auto& term : rep.breakdown)
    breakdown.push_back(
        {{"p", term.p}, {"contribution", residua::io::complex_to_json(term.contribution)}});
  return json{{"method", rep.method},
              {"value", residua::io::complex_to_json(rep.value)},
              {"raw_cocycle", residua::io::complex_to_json(rep.raw_cocycle)},
              {"calibration", rep.calibration},
              {"breakdown", breakdown}};
}

int run_noether(const CommonOptions& opt, const std::string& uspec) {
  const auto u = residua::io::parse_uspec(uspec);
  const auto rep = rad::index_pairing_toeplitz(u, opt.truncation);
  json out{{"config", resolved_config("noether", opt)},
           {"u", uspec},
           {"winding", rep.winding},
           {"kernel_count_index", rep.kernel_count_index},
           {"symbolic", cocycle_to_json(rep.symbolic)},
           {"spectral", cocycle_to_json(rep.spectral)},
           {"stabilized_commutator_trace",
            residua::io::complex_to_json(rep.spectral.raw_cocycle)},
           {"calibration", rad::pairing_calibration},
           {"max_deviation", rep.max_deviation},
           {"within_tolerance", rep.max_deviation <= opt.tolerance}};
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return rep.max_deviation <= opt.tolerance ? exit_ok : exit_assertion;
}

int run_zeta(const CommonOptions& opt, const std::string& uspec) {
  circ::CircleSymbol symbol;
  json echo;
  if (!uspec.empty()) {
    const auto u = residua::io::parse_uspec(uspec);
    symbol = circ::CircleSymbol::two_sheet(u, circ::TrigPolynomial::constant(1.0));
    echo = uspec;
  } else {
    const json cfg = load_config(opt);
    symbol = residua::io::symbol_from_json(cfg.at("symbol"));
    echo = cfg;
  }
  const auto model = zt::SpectralModel::circle(8);
  const auto zs = zt::zeta_from_symbol(symbol, model);
  json poles = json::array();
  for (const auto& pole : zs.pole_report())
    poles.push_back({{"z", pole.location},
                     {"order", pole.order},
                     {"leading", residua::io::complex_to_json(pole.leading)}});
  json out{{"config", resolved_config("zeta", opt)},
           {"input", echo},
           {"poles", poles},
           {"window_at_zero", residua::io::to_json(zs.laurent_at(0.0))},
           {"wodzicki_residue", residua::io::complex_to_json(circ::wodzicki_residue(symbol))},
           {"residue_at_zero", residua::io::complex_to_json(zt::higher_residue(zs, 1))},
           {"partie_finie", residua::io::complex_to_json(zt::partie_finie(zs))}};
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return exit_ok;
}

std::vector<std::pair<double, cplx>> load_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw residua::invalid_input("cannot open samples file: " + path);
  std::vector<std::pair<double, cplx>> samples;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const bool header =
        first && line.find_first_of("abcdfghijklmnopqrstuvwxyz") != std::string::npos;
    first = false;
    if (header) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 2) throw residua::invalid_input("samples: need rows of t,value");
    samples.emplace_back(row[0], cplx(row[1], row.size() > 2 ? row[2] : 0.0));
  }
  return samples;
}

int run_heat_fit(const CommonOptions& opt, const std::string& samples_path) {
  const json cfg = load_config(opt);
  if (!cfg.contains("terms")) throw residua::invalid_input("heat-fit config needs a terms array");
  std::vector<num::FitTerm> terms;
  for (const auto& t : cfg["terms"])
    terms.push_back({t.at("alpha").get<double>(), t.at("logpow").get<int>()});
  const num::FitTermSpec spec(terms);
  const auto samples = load_samples_csv(samples_path);
  const auto fit = num::fit_log_expansion(samples, spec);

  json coeffs = json::array();
  cplx log2_at_zero = 0.0;
  bool has_log2 = false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    coeffs.push_back({{"alpha", terms[i].exponent},
                      {"logpow", terms[i].log_power},
                      {"coeff", residua::io::complex_to_json(fit.coefficients[i])}});
    if (terms[i].exponent == 0.0 && terms[i].log_power == 2) {
      log2_at_zero = fit.coefficients[i];
      has_log2 = true;
    }
  }
  json out{{"config", resolved_config("heat-fit", opt)},
           {"samples", samples_path},
           {"coefficients", coeffs},
           {"residual_norm", fit.residual_norm},
           {"condition_estimate", fit.condition_estimate}};
  // the (log t)^2 coefficient at t^0 is -(1/4) Tr_{d,s}(P)
  out["recovered_tr_partial_sigma"] =
      has_log2 ? residua::io::complex_to_json(-4.0 * log2_at_zero) : json(nullptr);
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return exit_ok;
}

int run_b_residue(const CommonOptions& opt) {
  const json cfg = load_config(opt);
  const auto density = residua::io::bdensity_from_json(cfg);
  const auto window = cone::b_regularize(density, cone::BRegularizeMode::laurent_window);
  const cplx via_contour = window.coeff(-1);
  const cplx via_boundary =
      cone::b_regularize(density, cone::BRegularizeMode::residue_only).coeff(-1);
  const double disagreement = std::abs(via_contour - via_boundary);
  json out{{"config", resolved_config("b-residue", opt)},
           {"window_at_zero", residua::io::to_json(window)},
           {"residue_partial_fractions", residua::io::complex_to_json(via_contour)},
           {"residue_boundary_formula", residua::io::complex_to_json(via_boundary)},
           {"disagreement", disagreement},
           {"agree", disagreement <= opt.tolerance}};
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return disagreement <= opt.tolerance ? exit_ok : exit_assertion;
}

int run_cone_traces(const CommonOptions& opt) {
  const json cfg = load_config(opt);
  const auto spec = residua::io::cone_heat_spec_from_json(cfg);
  const auto h = cone::heat_expansion_model(spec);
  const auto report = cone::conic_zeta_poles(h);

  if (opt.format == "csv") {
    std::string csv = "re_z,order,abs_leading\n";
    for (const auto& pole : report.poles)
      csv += shortest(pole.location) + "," + std::to_string(pole.order) + "," +
             shortest(std::abs(pole.leading)) + "\n";
    atomic_write(opt.out_path, csv);
    return report.zero_bound_ok ? exit_ok : exit_assertion;
  }
  json poles = json::array();
  for (const auto& pole : report.poles)
    poles.push_back({{"z", pole.location},
                     {"order", pole.order},
                     {"leading", residua::io::complex_to_json(pole.leading)}});
  json out{{"config", resolved_config("cone-traces", opt)},
           {"expansion", residua::io::to_json(h)},
           {"poles", poles},
           {"order_at_zero", report.order_at_zero},
           {"zero_bound_ok", report.zero_bound_ok}};
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return report.zero_bound_ok ? exit_ok : exit_assertion;
}

int run_radul(const CommonOptions& opt, const std::string& uspec, int p_max) {
  const auto u = residua::io::parse_uspec(uspec);
  const auto u_inv = circ::inverse_fourier_truncation(u);
  const auto one = circ::TrigPolynomial::constant(1.0);
  const auto rep = rad::generalized_radul(circ::CircleSymbol::two_sheet(u_inv, one),
                                          circ::CircleSymbol::two_sheet(u, one), p_max);
  json out{{"config", resolved_config("radul", opt)},
           {"u", uspec},
           {"p_max", p_max},
           {"winding", circ::winding_number(u)},
           {"report", cocycle_to_json(rep)}};
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return exit_ok;
}

int run_cm_check(const CommonOptions& opt, const std::string& uspec, int n_max, double z_re,
                 double z_im) {
  const auto u = residua::io::parse_uspec(uspec);
  const int N = opt.truncation;
  const auto model = zt::SpectralModel::circle(N);
  const auto q = circ::quantize(circ::CircleSymbol::multiplication(u), N);
  const cplx z(z_re, z_im);

  json orders = json::array();
  double previous = 0.0;
  bool drops_ok = true;
  for (int terms = 1; terms <= n_max; ++terms) {
    auto r = zt::cm_remainder(q.matrix, model, z, terms);
    circ::CircleOperator rem{N, std::move(r), std::nullopt};
    const double est = circ::estimate_order(rem);
    orders.push_back({{"n", terms}, {"estimated_order", est}});
    if (terms > 1 && previous - est < 0.9) drops_ok = false;
    previous = est;
  }
  const double zero_case = zt::cm_remainder(q.matrix, model, cplx(0.0), n_max).max_abs();
  json out{{"config", resolved_config("cm-check", opt)},
           {"u", uspec},
           {"z", residua::io::complex_to_json(z)},
           {"orders", orders},
           {"order_drops_per_step", drops_ok},
           {"remainder_at_z0", zero_case},
           {"remainder_at_z0_exactly_zero", zero_case == 0.0}};
  atomic_write(opt.out_path, out.dump(2) + "\n");
  return (drops_ok && zero_case == 0.0) ? exit_ok : exit_assertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"residua: spectral residues, Toeplitz indices and conic traces at desk scale"};
  app.require_subcommand(1);

  CommonOptions noether_opt, zeta_opt, heat_opt, bres_opt, cone_opt, radul_opt, cm_opt;
  std::string noether_u, zeta_u, radul_u, cm_u = "1 + 0.3*exp(i t)";
  std::string heat_samples;
  int radul_pmax = 2, cm_nmax = 4;
  double cm_z_re = 1.0, cm_z_im = 0.0;

  auto* noether = app.add_subcommand("noether", "three-way Toeplitz index verification");
  add_common(noether, noether_opt);
  noether->add_option("--u", noether_u, "circle function, e.g. \"exp(i t)\"")->required();

  auto* zeta_cmd = app.add_subcommand("zeta", "zeta structure of a circle symbol");
  add_common(zeta_cmd, zeta_opt);
  zeta_cmd->add_option("--u", zeta_u, "Toeplitz symbol shortcut");

  auto* heat = app.add_subcommand("heat-fit", "fit a heat trace on a log grid");
  add_common(heat, heat_opt);
  heat->add_option("--samples", heat_samples, "CSV of t,value samples")->required();

  auto* bres = app.add_subcommand("b-residue", "b-regularization of a collar density");
  add_common(bres, bres_opt);
  bres_opt.tolerance = 1e-8;

  auto* cone_cmd = app.add_subcommand("cone-traces", "conic zeta pole diagram");
  add_common(cone_cmd, cone_opt);

  auto* radul_cmd = app.add_subcommand("radul", "generalized residue cocycle of a Toeplitz pair");
  add_common(radul_cmd, radul_opt);
  radul_cmd->add_option("--u", radul_u, "circle function")->required();
  radul_cmd->add_option("--p-max", radul_pmax, "highest residue order");

  auto* cm = app.add_subcommand("cm-check", "commutator expansion remainder orders");
  add_common(cm, cm_opt);
  cm->add_option("--u", cm_u, "circle function");
  cm->add_option("--n-max", cm_nmax, "expansion terms to sweep");
  cm->add_option("--z-re", cm_z_re, "real part of z");
  cm->add_option("--z-im", cm_z_im, "imaginary part of z");

  CLI11_PARSE(app, argc, argv);

  try {
    if (noether->parsed()) return run_noether(noether_opt, noether_u);
    if (zeta_cmd->parsed()) return run_zeta(zeta_opt, zeta_u);
    if (heat->parsed()) return run_heat_fit(heat_opt, heat_samples);
    if (bres->parsed()) return run_b_residue(bres_opt);
    if (cone_cmd->parsed()) return run_cone_traces(cone_opt);
    if (radul_cmd->parsed()) return run_radul(radul_opt, radul_u, radul_pmax);
    if (cm->parsed()) return run_cm_check(cm_opt, cm_u, cm_nmax, cm_z_re, cm_z_im);
  } catch (const residua::numeric_error& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return exit_assertion;
  } catch (const residua::invalid_input& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
