#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "emch/cli.hpp"

namespace emch::cli {
namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::SchemaError, "cannot write " + path);
  f << text;
}

struct Overrides {
  std::optional<double> geo, quad, close;

  void add(CLI::App* cmd) {
    cmd->add_option("--geo", geo, "Geometric tolerance");
    cmd->add_option("--quad", quad, "Quadrature tolerance");
    cmd->add_option("--close", close, "Closure tolerance");
  }
  void apply(SceneFile& s) const {
    if (geo) s.scene.tol.geo = *geo;
    if (quad) s.scene.tol.quad = *quad;
    if (close) s.scene.tol.close = *close;
    const Tolerances& t = s.scene.tol;
    if (!(t.geo > 0 && t.quad > 0 && t.close > 0)) throw Error(ErrorCode::SchemaError, "tolerances must be positive");
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Emch circular series toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  std::string scene_path;
  Overrides over;

  auto* run_cmd = app.add_subcommand("run", "Build a circular series and write its report");
  int steps = 50;
  std::string out_path, svg_path;
  run_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  run_cmd->add_option("--steps", steps, "Number of circles")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", out_path, "Report JSON (stdout when omitted)");
  run_cmd->add_option("--svg", svg_path, "Figure SVG");
  over.add(run_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::string table_path;
  verify_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  verify_cmd->add_option("--suite", suite, "measure, prop1, signed, pencil, quadric or cyclic")->required();
  verify_cmd->add_option("--out", table_path, "Table file (stdout when omitted)");
  over.add(verify_cmd);

  auto* scan_cmd = app.add_subcommand("scan", "Scan a scene parameter and tabulate rotation numbers");
  ScanOptions scan_opt;
  std::string csv_path;
  int target = 0;
  scan_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  scan_cmd->add_option("--vary", scan_opt.vary, "Parameter such as delta.radius");
  scan_cmd->add_option("--from", scan_opt.from, "Start of the range")->required();
  scan_cmd->add_option("--to", scan_opt.to, "End of the range")->required();
  scan_cmd->add_option("--samples", scan_opt.samples, "Number of samples")->required();
  scan_cmd->add_option("--target-n", target, "Find parameters with rotation number 1/n")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--steps", scan_opt.steps, "Circles per closure run")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--threads", scan_opt.threads, "Worker threads (0: all cores)");
  scan_cmd->add_option("--out", csv_path, "CSV file (stdout when omitted)");
  over.add(scan_cmd);

  auto* render_cmd = app.add_subcommand("render", "Draw a run report as SVG");
  std::string report_path;
  render_cmd->add_option("report", report_path, "Report JSON")->required();
  render_cmd->add_option("--svg", svg_path, "Figure SVG (stdout when omitted)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scene and print its normalized form");
  validate_cmd->add_option("scene", scene_path, "Scene JSON")->required();
  over.add(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return Schema;
  }

  auto emit = [&](const std::string& path, const std::string& text) {
    if (path.empty()) {
      out << text;
    } else {
      write_file(path, text);
    }
  };

  try {
    if (*render_cmd) {
      std::ifstream in(report_path);
      if (!in) throw Error(ErrorCode::SchemaError, "cannot read " + report_path);
      json report;
      try {
        report = json::parse(in);
        emit(svg_path, render_svg(report));
      } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, report_path + ": " + e.what());
      }
      return Ok;
    }

    SceneFile scene = load_scene(scene_path, default_tolerances());
    over.apply(scene);
    validate(scene);

    if (*validate_cmd) {
      out << dump(scene_to_json(scene));
      return Ok;
    }
    if (*run_cmd) {
      RunOutcome r;
      try {
        r = run_report(scene, steps);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SeriesBlocked) throw;
        // The very first circle already fails to continue.
        r = run_report(scene, 0);
        r.report["closure"]["stop"] = "blocked";
        r.report["closure"]["message"] = e.what();
        r.blocked = true;
      }
      emit(out_path, dump(r.report));
      if (!svg_path.empty()) write_file(svg_path, render_svg(r.report));
      if (r.blocked) {
        err << "series blocked: " << r.report["closure"]["message"].get<std::string>() << "\n";
        return Blocked;
      }
      return Ok;
    }
    if (*verify_cmd) {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw Error(ErrorCode::SchemaError, "unknown suite " + suite);
      }
      std::vector<CheckRow> rows;
      try {
        rows = run_suite(suite, scene);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        rows.push_back({"suite", 0.0, 0.0, false, e.what()});
      }
      emit(table_path, format_table(rows));
      const bool pass = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
      return pass ? Ok : SuiteFailed;
    }
    if (*scan_cmd) {
      if (target > 0) scan_opt.target_n = target;
      const std::vector<ScanRow> rows = scan(scene, scan_opt);
      emit(csv_path, format_csv(rows));
      if (scan_opt.target_n &&
          std::none_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.kind == "target"; })) {
        err << "no parameter in range has rotation number 1/" << *scan_opt.target_n << "\n";
      }
      return Ok;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Schema;
  }
  return Schema;
}

}  // namespace emch::cli
