#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "emch/series.hpp"

namespace emch::cli {

using json = nlohmann::json;

enum ExitCode { Ok = 0, Schema = 1, Blocked = 2, SuiteFailed = 3 };

/// Named tolerance sets; throws SchemaError for unknown names.
Tolerances tolerance_profile(std::string_view name);
/// The profile named by EMCH_TOLERANCE_PROFILE, "default" when unset.
Tolerances default_tolerances();

struct StartSpec {
  enum class Kind { Angle, Point, Circle };
  Kind kind = Kind::Angle;
  double angle = 0.0;
  Point point;
  Circle circle;
};

struct PencilSpec {
  std::vector<double> t0;
  std::vector<double> t1;
};

struct SceneFile {
  Scene scene;
  Direction direction = Direction::Ccw;
  StartSpec start;
  std::optional<PencilSpec> pencil;
};

/// Throws Error(SchemaError) with the offending key in the message.
SceneFile parse_scene(const json& j, const Tolerances& defaults);
SceneFile load_scene(const std::string& path, const Tolerances& defaults);
/// Canonical form: every field present, defaults filled in.
json scene_to_json(const SceneFile& s);

json circle_json(const Circle& c);
json point_json(Point p);

/// Fixed formatting shared by every JSON file the tool writes.
std::string dump(const json& j);
std::uint64_t fnv1a(std::string_view bytes);
std::string scene_hash(const SceneFile& s);
std::string version();

/// Start angle on delta.
double start_angle(const SceneFile& s);
/// The first circle of the series; NotTangent for a start circle of the wrong family.
SeriesStep first_series_step(const SceneFile& s, const RestrictedDensity& density);
void validate(const SceneFile& s);

struct RunOutcome {
  json report;
  bool blocked = false;
};

/// `steps` counts circles; zero gives an empty series.
RunOutcome run_report(const SceneFile& s, int steps);

/// SVG drawing of a run report; uses nothing but the report.
std::string render_svg(const json& report);

struct CheckRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;  // NaN for informational rows
  bool pass = true;
  std::string note;
};

const std::vector<std::string>& suite_names();
/// Throws SchemaError for unknown suites or scenes missing what the suite needs.
std::vector<CheckRow> run_suite(const std::string& suite, const SceneFile& s);
std::string format_table(const std::vector<CheckRow>& rows);

struct ScanOptions {
  std::string vary = "delta.radius";
  double from = 0.0;
  double to = 0.0;
  int samples = 0;
  std::optional<int> target_n;
  int steps = 64;
  int threads = 0;  // 0: hardware concurrency
};

struct ScanRow {
  std::string kind;  // "sample" or "target"
  double parameter = 0.0;
  double rotation = 0.0;
  bool closed = false;
  int n = 0;
  int winding = 0;
  std::string status;
};

/// Sets a numeric scene field such as "delta.radius" or "alpha0.center.x".
void set_parameter(SceneFile& s, const std::string& path, double value);
std::vector<ScanRow> scan(const SceneFile& s, const ScanOptions& opt);
std::string format_csv(const std::vector<ScanRow>& rows);

/// Entry point of the command-line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emch::cli
