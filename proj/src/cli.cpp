#include "pontryagin/cli.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "pontryagin/charfun.hpp"
#include "pontryagin/coupling.hpp"
#include "pontryagin/io.hpp"
#include "pontryagin/kernels.hpp"
#include "pontryagin/realization.hpp"
#include "pontryagin/sys2d.hpp"

namespace pontryagin::cli {

namespace {

using io::Json;

struct Globals {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int samples = 30;
  bool csv = false;
};

struct Outcome {
  Json report;
  int code = kExitOk;
};

Complex parse_complex(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  if (!(ss >> re)) throw Error(Errc::InvalidInput, "cannot parse complex value '" + text + "'");
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw Error(Errc::InvalidInput, "complex values are written re,im");
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw Error(Errc::InvalidInput, "non-finite complex value");
  return {re, im};
}

Json residuals(const VesselCheck& c) {
  return Json{{"commutator", c.commutator}, {"coll1", c.coll1},   {"coll2", c.coll2},
              {"input", c.input},           {"output", c.output}, {"linkage", c.linkage},
              {"maxResidual", c.max_residual()}, {"pass", c.pass}, {"singularSigmas", c.singular_sigmas}};
}

Json points_json(const std::vector<CurvePoint>& pts) {
  Json out = Json::array();
  for (const CurvePoint& p : pts) out.push_back(Json::array({io::to_json(p.l1), io::to_json(p.l2)}));
  return out;
}

Outcome cmd_check_vessel(const std::string& file, const Globals& g) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  const VesselCheck c = check_vessel(v, g.tol);
  return {residuals(c), c.pass ? kExitOk : kExitFailed};
}

Outcome cmd_check_colligation(const std::string& file, const Globals& g) {
  const Colligation c = io::colligation_from_json(io::read_file(file));
  const ResidualCheck r = check_colligation(c, g.tol);
  return {Json{{"residual", r.residual}, {"pass", r.pass}}, r.pass ? kExitOk : kExitFailed};
}

Outcome cmd_ccf_eval(const std::string& file, double xi1, double xi2, const std::string& z_text, bool tilde) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  const Complex z = parse_complex(z_text);
  const Matrix w = tilde ? ccf_tilde_eval(v, xi1, xi2, z) : ccf_eval(v, xi1, xi2, z);
  return {Json{{"W", io::to_json(w)}, {"xi", Json::array({xi1, xi2})}, {"z", io::to_json(z)}}};
}

Outcome cmd_jcf_eval(const std::string& file, const std::string& l1, const std::string& l2, double xi1, double xi2,
                     const Globals& g) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  const CurvePoint pt{parse_complex(l1), parse_complex(l2)};
  const JcfValue s = jcf_eval(v, pt, {xi1, xi2}, g.tol);
  return {Json{{"matrix", io::to_json(s.matrix)},
               {"inputBasis", io::to_json(s.input_basis)},
               {"outputBasis", io::to_json(s.output_basis)},
               {"residual", s.residual}}};
}

Outcome cmd_restore(const std::string& file, std::optional<double> xi1, std::optional<double> xi2,
                    const std::string& z_text, double max_defect, const Globals& g) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  if (!z_text.empty()) {
    const double a = xi1.value_or(1.0);
    const double b = xi2.value_or(1.0);
    const Complex z = parse_complex(z_text);
    const RestorationResult r = restoration(v, a, b, z, g.tol);
    const bool pass = r.defect <= max_defect;
    return {Json{{"W", io::to_json(ccf_eval(v, a, b, z))},
                 {"reconstructed", io::to_json(r.reconstructed)},
                 {"defect", r.defect},
                 {"condition", r.condition},
                 {"points", points_json(r.points)},
                 {"pass", pass}},
            pass ? kExitOk : kExitFailed};
  }
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_real_distribution<double> im(0.5, 3.0);
  Json rows = Json::array();
  double worst = 0.0;
  int attempts = 0;
  while (static_cast<int>(rows.size()) < g.samples) {
    if (++attempts > 20 * std::max(g.samples, 1)) throw Error(Errc::SpectrumHit, "could not find admissible samples");
    const double th = angle(rng);
    const double a = std::cos(th);
    const double b = std::sin(th);
    const Complex z{re(rng), im(rng)};
    try {
      const RestorationResult r = restoration(v, a, b, z, g.tol);
      worst = std::max(worst, r.defect);
      rows.push_back(Json{{"xi1", a}, {"xi2", b}, {"zRe", z.real()}, {"zIm", z.imag()}, {"defect", r.defect},
                          {"condition", r.condition}});
    } catch (const Error& e) {
      if (e.code() != Errc::MultipleRoots && e.code() != Errc::SpectrumHit) throw;
    }
  }
  const bool pass = worst <= max_defect;
  return {Json{{"columns", Json::array({"xi1", "xi2", "zRe", "zIm", "defect", "condition"})},
               {"rows", rows},
               {"maxDefect", worst},
               {"pass", pass}},
          pass ? kExitOk : kExitFailed};
}

Outcome cmd_neg_squares(const std::string& file, int trials, const Globals& g) {
  const Colligation c = io::colligation_from_json(io::read_file(file));
  const KernelEvaluator k = schur_kernel(char_fn(c), c.sigma, g.tol);
  const NegSquaresEstimate est = estimate_neg_squares(k, trials, g.samples, Region{}, g.seed, g.tol);
  const int kappa = c.state.neg_index();
  Json eig = Json::array();
  for (Eigen::Index i = 0; i < est.eigenvalues.size(); ++i) eig.push_back(est.eigenvalues(i));
  const bool pass = est.estimate <= kappa;
  return {Json{{"estimate", est.estimate},
               {"stabilized", est.stabilized},
               {"trials", est.trials},
               {"points", est.points},
               {"stateNegIndex", kappa},
               {"eigenvalues", eig},
               {"pass", pass}},
          pass ? kExitOk : kExitFailed};
}

Outcome cmd_realize(const std::string& file, const Globals& g) {
  const Json doc = io::read_file(file);
  const Json& j = io::payload(doc);
  if (!j.contains("J")) throw Error(Errc::InvalidInput, "missing field \"J\"");
  const Matrix jm = io::matrix_from_json(j.at("J"), "J");
  const Realization schur = j.contains("schurPart") && !j.at("schurPart").is_null()
                                ? io::realization_from_json(j.at("schurPart"))
                                : Realization::identity(jm.rows());
  std::vector<Complex> zeros;
  if (j.contains("zeros")) {
    if (!j.at("zeros").is_array()) throw Error(Errc::InvalidInput, "zeros must be an array");
    for (const Json& z : j.at("zeros")) zeros.push_back(io::complex_from_json(z, "zeros"));
  }
  std::vector<Vector> dirs;
  if (j.contains("directions")) {
    if (!j.at("directions").is_array()) throw Error(Errc::InvalidInput, "directions must be an array");
    for (const Json& d : j.at("directions")) dirs.push_back(io::vector_from_json(d, "directions"));
  }
  const JUnitaryRealization r = realize_junitary(schur, zeros, jm, dirs, g.seed, g.tol);
  const auto& rep = r.report;
  const bool pass = rep.colligation_residual <= g.tol && rep.real_line_defect <= g.tol && rep.transform_defect <= g.tol;
  return {Json{{"colligation", io::to_json(r.colligation)},
               {"sigmaRealization", io::to_json(r.sigma)},
               {"report",
                Json{{"colligationResidual", rep.colligation_residual},
                     {"realLineDefect", rep.real_line_defect},
                     {"transformDefect", rep.transform_defect}}},
               {"pass", pass}},
          pass ? kExitOk : kExitFailed};
}

Outcome cmd_couple(const std::string& first, const std::string& second, const Globals& g) {
  const Vessel v1 = io::vessel_from_json(io::read_file(first));
  const Vessel v2 = io::vessel_from_json(io::read_file(second));
  const Vessel v = couple(v1, v2, g.tol);
  const VesselCheck c = check_vessel(v, g.tol);
  return {Json{{"vessel", io::to_json(v)}, {"check", residuals(c)}, {"negIndex", v.state.neg_index()}},
          c.pass ? kExitOk : kExitFailed};
}

Outcome cmd_decompose(const std::string& file, const std::string& basis_file, int last, const Globals& g) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  Matrix basis;
  if (!basis_file.empty()) {
    basis = io::matrix_from_json(io::payload(io::read_file(basis_file)).value("basis", Json::array()), "basis");
    if (basis.size() == 0) basis = Matrix(v.state_dim(), 0);
  } else {
    if (last < 0 || last > v.state_dim()) throw Error(Errc::InvalidInput, "--last exceeds the state dimension");
    basis = Matrix::Identity(v.state_dim(), v.state_dim()).rightCols(last);
  }
  const Decomposition d = decompose(v, basis, g.tol);
  const VesselCheck c1 = check_vessel(d.v1, g.tol);
  const VesselCheck c2 = check_vessel(d.v2, g.tol);
  const bool pass = c1.pass && c2.pass;
  return {Json{{"v1", io::to_json(d.v1)},
               {"v2", io::to_json(d.v2)},
               {"check1", residuals(c1)},
               {"check2", residuals(c2)},
               {"transform", io::to_json(d.transform)},
               {"pass", pass}},
          pass ? kExitOk : kExitFailed};
}

Outcome cmd_simulate(const std::string& file, const std::string& h_text, double t_max, int steps, const Globals& g) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  Vector h = Vector::Ones(v.state_dim());
  if (!h_text.empty()) h = io::vector_from_json(io::parse_text(h_text, "--state"), "--state");
  if (h.size() != v.state_dim()) throw Error(Errc::DimensionMismatch, "--state has the wrong length");
  if (steps < 1) throw Error(Errc::InvalidInput, "--steps must be positive");
  Json columns = Json::array({"t1", "t2"});
  for (Eigen::Index k = 0; k < v.outer_dim(); ++k) {
    columns.push_back("out" + std::to_string(k) + "Re");
    columns.push_back("out" + std::to_string(k) + "Im");
  }
  columns.push_back("pdeResidual");
  Json rows = Json::array();
  double worst = 0.0;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; b <= steps; ++b) {
      const double t1 = t_max * a / steps;
      const double t2 = t_max * b / steps;
      const ZeroInputSample s = evolve_zero_input(v, h, t1, t2);
      const double res = output_pde_residual(v, h, t1, t2);
      worst = std::max(worst, res);
      Json row{{"t1", t1}, {"t2", t2}, {"pdeResidual", res}};
      for (Eigen::Index k = 0; k < v.outer_dim(); ++k) {
        row["out" + std::to_string(k) + "Re"] = s.output(k).real();
        row["out" + std::to_string(k) + "Im"] = s.output(k).imag();
      }
      rows.push_back(row);
    }
  const bool pass = worst <= std::max(g.tol, 1e-10);
  return {Json{{"columns", columns}, {"rows", rows}, {"maxPdeResidual", worst}, {"pass", pass}},
          pass ? kExitOk : kExitFailed};
}

Outcome cmd_discriminant(const std::string& file, const std::string& side) {
  const Vessel v = io::vessel_from_json(io::read_file(file));
  if (side != "input" && side != "output") throw Error(Errc::InvalidInput, "--side is input or output");
  const BivariatePoly p = discriminant_polynomial(v, side == "input" ? Side::Input : Side::Output);
  Json out = Json::object();
  for (const auto& [key, c] : p.coeffs())
    out["(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")"] = io::to_json(c);
  return {out};
}

Json error_json(std::string_view code, const std::string& detail) {
  return Json{{"error", code}, {"detail", detail}};
}

// Keeps only the ordered columns for CSV output when the report lists them.
std::string render(const Json& report, bool csv) {
  if (!csv) return io::emit_report(report, "json");
  if (!report.contains("columns") || !report.contains("rows")) return io::emit_report(report, "csv");
  std::string out;
  const Json& cols = report.at("columns");
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i].get<std::string>();
  out += "\r\n";
  for (const Json& row : report.at("rows")) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      const std::string key = cols[i].get<std::string>();
      if (row.contains(key)) out += io::emit_json(row.at(key));
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commuting non-selfadjoint operators over Pontryagin spaces", "pontryagin"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "verification tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--samples", g.samples, "sample count")->capture_default_str();
  app.add_flag("--csv", g.csv, "emit CSV instead of JSON");

  std::function<Outcome()> action;
  std::string file;
  std::string file2;
  std::string z_text;
  std::string l1 = "0";
  std::string l2 = "0";
  std::string side = "input";
  std::string basis_file;
  std::string h_text;
  std::optional<double> xi1_opt;
  std::optional<double> xi2_opt;
  double xi1 = 1.0;
  double xi2 = 0.0;
  double max_defect = 1e-8;
  double t_max = 1.0;
  int steps = 4;
  int trials = 5;
  int last = 0;
  bool tilde = false;

  auto* check_v = app.add_subcommand("check-vessel", "verify the vessel conditions");
  check_v->add_option("file", file)->required();
  check_v->callback([&] { action = [&] { return cmd_check_vessel(file, g); }; });

  auto* check_c = app.add_subcommand("check-colligation", "verify the colligation identity");
  check_c->add_option("file", file)->required();
  check_c->callback([&] { action = [&] { return cmd_check_colligation(file, g); }; });

  auto* ccf = app.add_subcommand("ccf-eval", "evaluate the complete characteristic function");
  ccf->add_option("file", file)->required();
  ccf->add_option("--xi1", xi1)->capture_default_str();
  ccf->add_option("--xi2", xi2)->capture_default_str();
  ccf->add_option("--z", z_text, "re,im")->required();
  ccf->add_flag("--tilde", tilde, "evaluate the output-side function");
  ccf->callback([&] { action = [&] { return cmd_ccf_eval(file, xi1, xi2, z_text, tilde); }; });

  auto* jcf = app.add_subcommand("jcf-eval", "evaluate the joint characteristic function at a curve point");
  jcf->add_option("file", file)->required();
  jcf->add_option("--l1", l1, "re,im")->required();
  jcf->add_option("--l2", l2, "re,im")->required();
  jcf->add_option("--xi1", xi1)->capture_default_str();
  jcf->add_option("--xi2", xi2)->capture_default_str();
  jcf->callback([&] { action = [&] { return cmd_jcf_eval(file, l1, l2, xi1, xi2, g); }; });

  auto* restore = app.add_subcommand("restore", "rebuild W from joint characteristic function values");
  restore->add_option("file", file)->required();
  restore->add_option("--xi1", xi1_opt);
  restore->add_option("--xi2", xi2_opt);
  restore->add_option("--z", z_text, "re,im; omit for a random sweep of --samples points");
  restore->add_option("--max-defect", max_defect)->capture_default_str();
  restore->callback([&] { action = [&] { return cmd_restore(file, xi1_opt, xi2_opt, z_text, max_defect, g); }; });

  auto* neg = app.add_subcommand("neg-squares", "estimate negative squares of the Schur kernel");
  neg->add_option("file", file)->required();
  neg->add_option("--trials", trials)->capture_default_str();
  neg->callback([&] { action = [&] { return cmd_neg_squares(file, trials, g); }; });

  auto* realize = app.add_subcommand("realize", "realize a J-unitary rational function");
  realize->add_option("file", file)->required();
  realize->callback([&] { action = [&] { return cmd_realize(file, g); }; });

  auto* cpl = app.add_subcommand("couple", "couple two vessels");
  cpl->add_option("first", file)->required();
  cpl->add_option("second", file2)->required();
  cpl->callback([&] { action = [&] { return cmd_couple(file, file2, g); }; });

  auto* dec = app.add_subcommand("decompose", "split a vessel along an invariant subspace");
  dec->add_option("file", file)->required();
  auto* basis_opt = dec->add_option("--basis", basis_file, "JSON file {\"basis\": matrix}, columns span the subspace");
  dec->add_option("--last", last, "use the last k coordinate vectors")->excludes(basis_opt);
  dec->callback([&] { action = [&] { return cmd_decompose(file, basis_file, last, g); }; });

  auto* sim = app.add_subcommand("simulate", "zero-input trajectories on a (t1, t2) grid");
  sim->add_option("file", file)->required();
  sim->add_option("--state", h_text, "initial state as a JSON array");
  sim->add_option("--t-max", t_max)->capture_default_str();
  sim->add_option("--steps", steps)->capture_default_str();
  sim->callback([&] { action = [&] { return cmd_simulate(file, h_text, t_max, steps, g); }; });

  auto* disc = app.add_subcommand("discriminant", "discriminant polynomial coefficients");
  disc->add_option("file", file)->required();
  disc->add_option("--side", side)->capture_default_str();
  disc->callback([&] { action = [&] { return cmd_discriminant(file, side); }; });

  std::vector<const char*> argv{"pontryagin"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << io::emit_json(error_json(to_string(Errc::InvalidInput), e.what())) << "\n";
    err << app.help();
    return kExitInput;
  }

  try {
    const Outcome result = action();
    out << render(result.report, g.csv);
    return result.code;
  } catch (const Error& e) {
    out << io::emit_json(error_json(to_string(e.code()), e.detail())) << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    out << io::emit_json(error_json(to_string(Errc::InvalidInput), e.what())) << "\n";
    return kExitInput;
  }
}

}  // namespace pontryagin::cli
