// Command line front end: geometric phases of geodesic triangles, matrix
// decompositions into two-channel factors, and interferometer netlists.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <sunphase/sunphase.hpp>

namespace {

using namespace sunphase;

std::string fmt6(double v) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.6g", v);
  return b;
}

std::string fmt17(double v) {
  char b[64];
  std::snprintf(b, sizeof(b), "%.17g", v);
  return b;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << content;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TriangleArgs {
  std::string group = "su3";
  double s1 = 0, s2 = 0, alpha = 0, beta = 0, beta1 = 0, beta2 = 0, beta3 = 0;
  bool degrees = false;

  CLI::Option *s1_opt = nullptr, *s2_opt = nullptr;

  void add_to(CLI::App* cmd, bool with_group = true) {
    if (with_group)
      cmd->add_option("--group", group, "Triangle family: su3 or su4")
          ->check(CLI::IsMember({"su3", "su4"}))
          ->capture_default_str();
    s1_opt = cmd->add_option("--s1", s1, "First arc length");
    s2_opt = cmd->add_option("--s2", s2, "Second arc length");
    cmd->add_option("--alpha", alpha, "Relative phase at the second vertex");
    cmd->add_option("--beta", beta, "Tilt angle (su3)");
    cmd->add_option("--beta1", beta1, "First tilt angle (su4)");
    cmd->add_option("--beta2", beta2, "Second tilt angle (su4)");
    cmd->add_option("--beta3", beta3, "Third tilt angle (su4)");
    cmd->add_flag("--degrees", degrees, "Interpret all input angles as degrees");
  }

  void to_radians() {
    if (!degrees) return;
    const double k = std::numbers::pi / 180.0;
    s1 *= k;
    s2 *= k;
    alpha *= k;
    beta *= k;
    beta1 *= k;
    beta2 *= k;
    beta3 *= k;
  }

  void require_arcs() const {
    if (s1_opt->count() == 0 || s2_opt->count() == 0)
      throw std::invalid_argument("--s1 and --s2 are required");
  }

  TriangleParamsSU3 su3() const { return {s1, s2, alpha, beta}; }
  TriangleParamsSU4 su4() const { return {s1, s2, alpha, beta1, beta2, beta3}; }
};

struct PhaseSummary {
  double closed = 0, cycle = 0, barg = 0, residual = 0, disagreement = 0;
};

PhaseSummary compute_phases(const TriangleArgs& a) {
  PhaseSummary s;
  if (a.group == "su3") {
    const GeodesicTriangle t = triangle_su3(a.su3());
    s.closed = phase_closed_form_su3(a.su3()).phi_g;
    const PhaseResult oc = phase_operator_cycle(t);
    s.cycle = oc.phi_g;
    s.residual = oc.residual;
    s.barg = phase_bargmann(t).phi_g;
  } else {
    const GeodesicTriangle t = triangle_su4(a.su4());
    s.closed = phase_closed_form_su4(a.su4()).phi_g;
    const PhaseResult oc = phase_operator_cycle(t);
    s.cycle = oc.phi_g;
    s.residual = oc.residual;
    s.barg = phase_bargmann(t).phi_g;
  }
  s.disagreement = std::max({angle_distance(s.closed, s.cycle), angle_distance(s.closed, s.barg),
                             angle_distance(s.cycle, s.barg)});
  return s;
}

nlohmann::json params_json(const TriangleArgs& a) {
  if (a.group == "su3")
    return {{"s1", a.s1}, {"s2", a.s2}, {"alpha", a.alpha}, {"beta", a.beta}};
  return {{"s1", a.s1},     {"s2", a.s2},     {"alpha", a.alpha},
          {"beta1", a.beta1}, {"beta2", a.beta2}, {"beta3", a.beta3}};
}

int run_phase(const TriangleArgs& args, const std::string& format, const std::string& out,
              double tolerance) {
  args.require_arcs();
  const PhaseSummary s = compute_phases(args);

  std::string content;
  if (format == "json") {
    const nlohmann::json j = {{"group", args.group},
                              {"params", params_json(args)},
                              {"phases",
                               {{"closed_form", s.closed},
                                {"operator_cycle", s.cycle},
                                {"bargmann", s.barg}}},
                              {"cycle_residual", s.residual},
                              {"max_disagreement", s.disagreement}};
    content = j.dump(2) + "\n";
  } else {
    std::ostringstream ss;
    ss << "group: " << args.group << "\n";
    if (args.group == "su3")
      ss << "params: s1=" << fmt6(args.s1) << " s2=" << fmt6(args.s2)
         << " alpha=" << fmt6(args.alpha) << " beta=" << fmt6(args.beta) << "\n";
    else
      ss << "params: s1=" << fmt6(args.s1) << " s2=" << fmt6(args.s2)
         << " alpha=" << fmt6(args.alpha) << " beta1=" << fmt6(args.beta1)
         << " beta2=" << fmt6(args.beta2) << " beta3=" << fmt6(args.beta3) << "\n";
    ss << "closed_form: " << fmt6(s.closed) << "\n";
    ss << "operator_cycle: " << fmt6(s.cycle) << "\n";
    ss << "bargmann: " << fmt6(s.barg) << "\n";
    ss << "cycle_residual: " << fmt6(s.residual) << "\n";
    ss << "max_disagreement: " << fmt6(s.disagreement) << "\n";
    content = ss.str();
  }
  write_output(out, content);
  if (s.disagreement > tolerance)
    throw consistency_error("phase methods disagree beyond tolerance", s.disagreement);
  return 0;
}

void set_param(TriangleArgs& a, const std::string& name, double v) {
  if (name == "s1") a.s1 = v;
  else if (name == "s2") a.s2 = v;
  else if (name == "alpha") a.alpha = v;
  else if (name == "beta") a.beta = v;
  else if (name == "beta1") a.beta1 = v;
  else if (name == "beta2") a.beta2 = v;
  else if (name == "beta3") a.beta3 = v;
  else throw std::invalid_argument("unknown parameter '" + name + "'");
}

int run_sweep(TriangleArgs args, const std::string& vary, double from, double to, int steps,
              const std::string& out) {
  // from/to describe the varied parameter, so they convert with the rest.
  if (args.degrees) {
    const double k = std::numbers::pi / 180.0;
    from *= k;
    to *= k;
  }
  args.to_radians();

  const bool su3_name = vary == "s1" || vary == "s2" || vary == "alpha" || vary == "beta";
  const bool su4_name = vary == "s1" || vary == "s2" || vary == "alpha" || vary == "beta1" ||
                        vary == "beta2" || vary == "beta3";
  if ((args.group == "su3" && !su3_name) || (args.group == "su4" && !su4_name))
    throw std::invalid_argument("cannot vary '" + vary + "' for group " + args.group);
  if (vary != "s1" && args.s1_opt->count() == 0) throw std::invalid_argument("--s1 is required");
  if (vary != "s2" && args.s2_opt->count() == 0) throw std::invalid_argument("--s2 is required");

  std::ostringstream ss;
  ss << "param,phi_closed,phi_operator,phi_bargmann,residual\n";
  for (int k = 0; k < steps; ++k) {
    const double v =
        steps == 1 ? from : from + (to - from) * static_cast<double>(k) / (steps - 1);
    TriangleArgs point = args;
    set_param(point, vary, v);
    const PhaseSummary s = compute_phases(point);
    ss << fmt17(v) << "," << fmt17(s.closed) << "," << fmt17(s.cycle) << "," << fmt17(s.barg)
       << "," << fmt17(s.residual) << "\n";
  }
  write_output(out, ss.str());
  return 0;
}

int run_decompose(const std::string& input, const std::string& pattern, const std::string& format,
                  const std::string& out, double tolerance) {
  const UnitaryMatrix u = matrix_from_text(read_input(input), tolerance);

  FactorChain chain{u.dim(), {}};
  if (pattern == "su3" || (pattern == "auto" && u.dim() == 3)) {
    if (u.dim() != 3) throw std::invalid_argument("su3 pattern needs a 3x3 matrix");
    chain = decompose_su3_pattern(u);
  } else if (pattern == "su4" || (pattern == "auto" && u.dim() == 4)) {
    if (u.dim() != 4) throw std::invalid_argument("su4 pattern needs a 4x4 matrix");
    chain = decompose_su4_pattern(u);
  } else {
    chain = decompose_sun(u);
  }

  std::string content;
  if (format == "json") {
    content = chain_to_json(chain).dump(2) + "\n";
  } else {
    std::ostringstream ss;
    ss << "n: " << chain.n << "\n";
    ss << "factors: " << chain.factors.size() << "\n";
    int idx = 1;
    for (const SU2Factor& f : chain.factors) {
      ss << idx++ << "  (" << f.pair.i << "," << f.pair.j << ")  " << kind_name(f.kind) << "  "
         << fmt6(f.params[0]) << " " << fmt6(f.params[1]) << " " << fmt6(f.params[2]) << "\n";
    }
    ss << "recompose_residual: " << fmt6(max_entry_distance(recompose(chain), u)) << "\n";
    content = ss.str();
  }
  write_output(out, content);
  return 0;
}

int run_circuit(const TriangleArgs& args, std::optional<double> ps1, std::optional<double> ps2,
                std::optional<double> ps3, const std::string& format, const std::string& out) {
  args.require_arcs();
  Circuit c{0, {}, {}, {}};
  if (args.group == "su3") {
    const TriangleParamsSU3 p = args.su3();
    const auto v = triangle_vertices_su3(p);
    const double def3 = std::acos(std::min(std::abs(v[2][0]), 1.0));
    c = build_su3_circuit(p, ps1.value_or(p.s1), ps2.value_or(p.s2), ps3.value_or(def3));
  } else {
    const TriangleParamsSU4 p = args.su4();
    const auto v = triangle_vertices_su4(p);
    const double def3 = std::acos(std::min(std::abs(v[2][0]), 1.0));
    c = build_su4_circuit(p, ps1.value_or(p.s1), ps2.value_or(p.s2), ps3.value_or(def3));
  }

  std::string content;
  if (format == "json") {
    content = netlist_to_json(c).dump(2) + "\n";
  } else {
    std::ostringstream ss;
    ss << "n: " << c.n << "\n";
    ss << "elements: " << c.elements.size() << "\n";
    int idx = 1;
    for (const OpticalElement& e : c.elements) {
      ss << idx++ << "  (" << e.pair.i << "," << e.pair.j << ")  phi_t=" << fmt6(e.params.phi_t)
         << " theta=" << fmt6(e.params.theta) << " phi_r=" << fmt6(e.params.phi_r) << "  "
         << e.label << "\n";
    }
    content = ss.str();
  }
  write_output(out, content);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric phases of geodesic triangles and their interferometer realizations"};
  app.require_subcommand(1);

  // phase
  TriangleArgs phase_args;
  std::string phase_format = "text", phase_out;
  double phase_tol = 1e-9;
  CLI::App* phase_cmd = app.add_subcommand("phase", "Compute the loop's geometric phase");
  phase_args.add_to(phase_cmd);
  phase_cmd->add_option("--format", phase_format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  phase_cmd->add_option("--out", phase_out, "Write output to this file instead of stdout");
  phase_cmd->add_option("--tolerance", phase_tol, "Cross-method agreement tolerance")
      ->capture_default_str();

  // sweep
  TriangleArgs sweep_args;
  std::string sweep_vary, sweep_out;
  double sweep_from = 0, sweep_to = 0;
  int sweep_steps = 0;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Tabulate the phase while one parameter varies (CSV)");
  sweep_args.add_to(sweep_cmd);
  sweep_cmd->add_option("--vary", sweep_vary, "Parameter to vary")->required();
  sweep_cmd->add_option("--from", sweep_from, "First value of the varied parameter")->required();
  sweep_cmd->add_option("--to", sweep_to, "Last value of the varied parameter")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "Number of evenly spaced samples (endpoints included)")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "Write output to this file instead of stdout");

  // decompose
  std::string dec_input = "-", dec_pattern = "auto", dec_format = "json", dec_out;
  double dec_tol = 1e-10;
  CLI::App* dec_cmd =
      app.add_subcommand("decompose", "Factor a special unitary into two-channel blocks");
  dec_cmd->add_option("input", dec_input, "Matrix file in text format ('-' for stdin)")
      ->capture_default_str();
  dec_cmd->add_option("--pattern", dec_pattern, "Factor pattern: auto, su3, su4, or reck")
      ->check(CLI::IsMember({"auto", "su3", "su4", "reck"}))
      ->capture_default_str();
  dec_cmd->add_option("--format", dec_format, "Output format: json or text")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  dec_cmd->add_option("--out", dec_out, "Write output to this file instead of stdout");
  dec_cmd->add_option("--tolerance", dec_tol, "Unitarity tolerance for the input matrix")
      ->capture_default_str();

  // circuit
  TriangleArgs circ_args;
  std::string circ_format = "json", circ_out;
  std::optional<double> circ_ps1, circ_ps2, circ_ps3;
  CLI::App* circ_cmd =
      app.add_subcommand("circuit", "Emit the element sequence that walks the triangle");
  circ_args.add_to(circ_cmd);
  circ_cmd->add_option("--path-s1", circ_ps1, "Partial first arc (default: full leg)");
  circ_cmd->add_option("--path-s2", circ_ps2, "Partial second arc (default: full leg)");
  circ_cmd->add_option("--path-s3", circ_ps3, "Partial closing arc (default: full leg)");
  circ_cmd->add_option("--format", circ_format, "Output format: json or text")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  circ_cmd->add_option("--out", circ_out, "Write output to this file instead of stdout");

  try {
    app.parse(argc, argv);

    if (phase_cmd->parsed()) {
      phase_args.to_radians();
      return run_phase(phase_args, phase_format, phase_out, phase_tol);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_args, sweep_vary, sweep_from, sweep_to, sweep_steps, sweep_out);
    }
    if (dec_cmd->parsed()) {
      return run_decompose(dec_input, dec_pattern, dec_format, dec_out, dec_tol);
    }
    if (circ_cmd->parsed()) {
      circ_args.to_radians();
      if (circ_args.degrees) {
        const double k = std::numbers::pi / 180.0;
        if (circ_ps1) circ_ps1 = *circ_ps1 * k;
        if (circ_ps2) circ_ps2 = *circ_ps2 * k;
        if (circ_ps3) circ_ps3 = *circ_ps3 * k;
      }
      return run_circuit(circ_args, circ_ps1, circ_ps2, circ_ps3, circ_format, circ_out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const sunphase::consistency_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
