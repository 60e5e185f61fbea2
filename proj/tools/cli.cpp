#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "helixlift/helixlift.hpp"

namespace helixlift::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string spec;
  std::size_t samples = 256;
  double constancy = Tolerances{}.constancy;
  double fd_step = Tolerances{}.fd_step;

  Tolerances tolerances() const {
    Tolerances tol;
    tol.constancy = constancy;
    tol.fd_step = fd_step;
    tol.validate();
    return tol;
  }
};

void add_common(CLI::App* app, Common& c, bool with_spec) {
  if (with_spec) app->add_option("--spec", c.spec, "curve-spec file or fixture name")->required();
  app->add_option("--tol", c.constancy, "relative tolerance for 'constant'");
  app->add_option("--fd-step", c.fd_step, "finite-difference step of the oracle");
}

ParamCurve load_curve(const std::string& spec) {
  if (!std::filesystem::exists(spec) && fixtures::is_fixture_name(spec)) return fixtures::by_name(spec);
  std::ifstream in(spec);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read spec file '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_spec(buf.str());
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  file << text;
}

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json stat_json(const ConstancyStat& s) {
  return {{"mean", s.mean}, {"max_abs_dev", s.max_abs_dev}, {"rel_dev", s.rel_dev}, {"grid_size", s.grid_size}};
}

Vec3 parse_vec3(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) fail(ErrorKind::InvalidArgument, "bad vector component '" + item + "'");
    xs.push_back(v);
  }
  if (xs.size() != 3) fail(ErrorKind::InvalidArgument, "expected a vector x,y,z");
  return {xs[0], xs[1], xs[2]};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frenet frames, helix classification and helix lifts of space curves"};
  app.require_subcommand(1);

  Common classify_opts;
  std::string classify_out;
  auto* classify_cmd = app.add_subcommand("classify", "classify a curve as general / circular / slant helix");
  add_common(classify_cmd, classify_opts, true);
  classify_cmd->add_option("--samples", classify_opts.samples, "grid size");
  classify_cmd->add_option("--out", classify_out, "output path (default stdout)");

  Common frenet_opts;
  double frenet_at = 0.0;
  auto* frenet_cmd = app.add_subcommand("frenet", "Frenet apparatus at one parameter");
  add_common(frenet_cmd, frenet_opts, true);
  frenet_cmd->add_option("--at", frenet_at, "parameter value")->required();

  Common lift_opts;
  std::string lift_theta = "auto";
  double lift_s0 = 0.0;
  std::string lift_axis = "unit";
  std::string lift_offset;
  std::string lift_emit;
  bool lift_literal = false;
  auto* lift_cmd = app.add_subcommand("lift", "lift a general helix and emit the lifted curve spec");
  add_common(lift_cmd, lift_opts, true);
  lift_cmd->add_option("--samples", lift_opts.samples, "grid size for helix checks");
  lift_cmd->add_option("--theta", lift_theta, "lift angle in radians, or 'auto' for the helix angle");
  lift_cmd->add_option("--s0", lift_s0, "base parameter");
  lift_cmd->add_option("--axis", lift_axis, "unit | paper | x,y,z");
  lift_cmd->add_option("--offset", lift_offset, "constant offset x,y,z");
  lift_cmd->add_option("--emit", lift_emit, "write the lifted curve spec here");
  lift_cmd->add_flag("--literal", lift_literal, "lift in the curve's own parameter (no arc-length reparameterization)");

  Common sample_opts;
  std::size_t sample_n = 100;
  bool sample_frames = false;
  std::string sample_csv;
  auto* sample_cmd = app.add_subcommand("sample", "export uniform samples as CSV");
  add_common(sample_cmd, sample_opts, true);
  sample_cmd->add_option("--n", sample_n, "number of rows")->required();
  sample_cmd->add_flag("--frames", sample_frames, "include Frenet frame columns");
  sample_cmd->add_option("--csv", sample_csv, "output path (default stdout)");

  Common verify_opts;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify-paper", "reproduce the cubic worked example and theorem checks");
  add_common(verify_cmd, verify_opts, false);
  verify_cmd->add_option("--samples", verify_opts.samples, "theorem grid size");
  verify_cmd->add_option("--out", verify_out, "report path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  try {
    if (*classify_cmd) {
      const Tolerances tol = classify_opts.tolerances();
      const ParamCurve curve = load_curve(classify_opts.spec);
      const HelixClassification c = classify(curve, classify_opts.samples, tol);
      json doc = {{"general_helix", c.is_general_helix},
                  {"circular_helix", c.is_circular_helix},
                  {"slant_helix", c.is_slant_helix},
                  {"theta", c.theta ? json(*c.theta) : json(nullptr)},
                  {"axis", c.axis ? vec(*c.axis) : json(nullptr)},
                  {"ratio_stat", stat_json(c.ratio_stat)},
                  {"sigma_stat", stat_json(c.sigma_stat)},
                  {"kappa_stat", stat_json(c.kappa_stat)},
                  {"tau_stat", stat_json(c.tau_stat)},
                  {"samples", classify_opts.samples}};
      write_output(classify_out, doc.dump(2) + "\n", out);
    } else if (*frenet_cmd) {
      const Tolerances tol = frenet_opts.tolerances();
      const ParamCurve curve = load_curve(frenet_opts.spec);
      const FrenetFrame f = frame_at(curve, frenet_at, tol);
      json doc = {{"t", frenet_at}, {"T", vec(f.T)},         {"N", vec(f.N)},        {"B", vec(f.B)},
                  {"kappa", f.kappa}, {"tau", f.tau}, {"speed", f.speed}};
      out << doc.dump(2) << '\n';
    } else if (*lift_cmd) {
      const Tolerances tol = lift_opts.tolerances();
      const ParamCurve curve = load_curve(lift_opts.spec);
      LiftSpec spec;
      spec.s0 = lift_s0;
      if (!lift_offset.empty()) spec.offset = parse_vec3(lift_offset);
      if (lift_axis == "unit") {
        spec.axis_mode = AxisMode::unit;
      } else if (lift_axis == "paper") {
        spec.axis_mode = AxisMode::paper_printed;
      } else {
        spec.axis_mode = AxisMode::explicit_axis;
        spec.axis = parse_vec3(lift_axis);
      }
      if (lift_theta == "auto") {
        spec.theta = lancret_test(curve, lift_opts.samples, tol).theta;
      } else {
        std::size_t used = 0;
        try {
          spec.theta = std::stod(lift_theta, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != lift_theta.size()) fail(ErrorKind::InvalidArgument, "bad --theta '" + lift_theta + "'");
      }
      ParamCurve lifted = curve;
      bool reparameterized = false;
      if (lift_literal) {
        lifted = lift_curve_literal(curve, spec, lift_opts.samples, tol);
      } else {
        LiftResult r = lift_helix(curve, spec, lift_opts.samples, tol);
        lifted = r.lifted;
        reparameterized = r.reparameterized;
      }
      const std::string text = serialize_curve(lifted);
      if (lift_emit.empty()) {
        out << text;
      } else {
        write_output(lift_emit, text, out);
        const auto& shape = std::get<LiftedShape>(lifted.shape());
        json summary = {{"emit", lift_emit},
                        {"reparameterized", reparameterized},
                        {"theta", shape.spec.theta},
                        {"axis", vec(shape.axis)},
                        {"domain", json::array({lifted.domain().lo, lifted.domain().hi})}};
        out << summary.dump(2) << '\n';
      }
    } else if (*sample_cmd) {
      const Tolerances tol = sample_opts.tolerances();
      const ParamCurve curve = load_curve(sample_opts.spec);
      write_output(sample_csv, export_samples(curve, sample_n, sample_frames, tol), out);
    } else if (*verify_cmd) {
      const Tolerances tol = verify_opts.tolerances();
      const VerificationReport report = run_paper_suite(tol, verify_opts.samples);
      write_output(verify_out, to_json(report).dump(2) + "\n", out);
      if (!report.passed()) {
        err << "theorem invariants failed\n";
        return 3;
      }
    }
  } catch (const GeometryError& e) {
    err << e.what() << '\n';
    return is_geometric(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace helixlift::cli
