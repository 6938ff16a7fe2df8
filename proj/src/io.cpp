#include "sac/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <string_view>
#include <system_error>

#include "json.hpp"
#include "sac/version.hpp"

namespace sac {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

template <typename Int>
std::optional<Int> parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, ptr);
}

std::string format_double_2dp(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", x);
  return std::string(buffer);
}

// ---------------------------------------------------------------------------
// Correspondence files
// ---------------------------------------------------------------------------

CorrespondenceFileData read_correspondence_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }

  std::optional<int> width, height;
  std::optional<RotationAxis> axis;
  std::optional<double> degrees;
  std::vector<Correspondence> rows;

  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) continue;

    if (s.front() == '#') {
      const std::size_t eq = s.find('=');
      if (eq == std::string_view::npos) continue;  // plain comment
      const std::string_view key = trim(s.substr(1, eq - 1));
      const std::string_view value = trim(s.substr(eq + 1));
      if (key == "width" || key == "height") {
        const auto parsed = parse_integer<int>(value);
        if (!parsed || *parsed <= 0) {
          throw ParseError(path.string(), lineno,
                           std::string(key) + " must be a positive integer");
        }
        auto& slot = key == "width" ? width : height;
        if (slot) {
          throw ParseError(path.string(), lineno, "duplicate header key: " + std::string(key));
        }
        slot = *parsed;
      } else if (key == "axis") {
        if (axis) {
          throw ParseError(path.string(), lineno, "duplicate header key: axis");
        }
        if (value == "pan") {
          axis = RotationAxis::Pan;
        } else if (value == "tilt") {
          axis = RotationAxis::Tilt;
        } else {
          throw ParseError(path.string(), lineno,
                           "axis must be 'pan' or 'tilt', got '" + std::string(value) + "'");
        }
      } else if (key == "degrees") {
        if (degrees) {
          throw ParseError(path.string(), lineno, "duplicate header key: degrees");
        }
        const auto parsed = parse_double(value);
        if (!parsed) {
          throw ParseError(path.string(), lineno, "degrees must be a number");
        }
        degrees = *parsed;
      } else {
        throw ParseError(path.string(), lineno,
                         "unknown header key: " + std::string(key));
      }
      continue;
    }

    const auto fields = split(s, ',');
    if (fields.size() != 4) {
      throw ParseError(path.string(), lineno,
                       "expected 4 comma-separated values v,u,v_prime,u_prime, got " +
                           std::to_string(fields.size()));
    }
    double coords[4];
    for (int i = 0; i < 4; ++i) {
      const auto parsed = parse_double(fields[i]);
      if (!parsed || !std::isfinite(*parsed)) {
        throw ParseError(path.string(), lineno,
                         "field " + std::to_string(i + 1) + " is not a finite number");
      }
      coords[i] = *parsed;
    }
    rows.push_back({{coords[0], coords[1]}, {coords[2], coords[3]}});
  }

  if (!width) throw ParseError(path.string(), 0, "missing header key: width");
  if (!height) throw ParseError(path.string(), 0, "missing header key: height");
  if (!axis) throw ParseError(path.string(), 0, "missing header key: axis");
  if (!degrees) throw ParseError(path.string(), 0, "missing header key: degrees");
  if (*degrees == 0.0) {
    throw ParseError(path.string(), 0, "rotation degrees must be nonzero");
  }
  if (!(std::abs(*degrees) < 90.0)) {
    throw ParseError(path.string(), 0, "rotation degrees must satisfy |deg| < 90");
  }
  if (rows.empty()) {
    throw ParseError(path.string(), 0, "file contains no correspondence rows");
  }

  return {ImageSize(*width, *height), RotationAngle(*degrees, *axis), std::move(rows)};
}

void write_correspondence_file(const std::filesystem::path& path,
                               const CorrespondenceFileData& data) {
  std::ofstream out = open_output(path);
  out << "# width=" << data.size.width << "\n";
  out << "# height=" << data.size.height << "\n";
  out << "# axis=" << to_string(data.rotation.axis()) << "\n";
  out << "# degrees=" << format_double(data.rotation.degrees()) << "\n";
  out << "# columns: v,u,v_prime,u_prime\n";
  for (const Correspondence& c : data.rows) {
    out << format_double(c.reference.v) << ',' << format_double(c.reference.u)
        << ',' << format_double(c.transformed.v) << ','
        << format_double(c.transformed.u) << "\n";
  }
}

CorrespondenceFileData correspondence_data_from_pair(const ViewPair& pair,
                                                     ImageSize size) {
  return {size, pair.rotation, pair.correspondences};
}

// ---------------------------------------------------------------------------
// Campaign configs
// ---------------------------------------------------------------------------

CampaignConfig CampaignConfig::defaults() {
  CampaignConfig cfg;
  cfg.angles = {0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0, 5.0, -5.0, 10.0, -10.0};
  cfg.offsets_deg.push_back(0.0);
  for (int k = 1; k <= 20; ++k) {
    cfg.offsets_deg.push_back(0.01 * k);
    cfg.offsets_deg.push_back(-0.01 * k);
  }
  cfg.base_angles = {0.5, 1.0, 2.0, 5.0};
  cfg.sigmas = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  return cfg;
}

namespace {

std::optional<std::vector<double>> parse_double_list(std::string_view value) {
  std::vector<double> out;
  for (const std::string_view item : split(value, ',')) {
    const auto parsed = parse_double(item);
    if (!parsed || !std::isfinite(*parsed)) return std::nullopt;
    out.push_back(*parsed);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace

CampaignConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }

  CampaignConfig cfg = CampaignConfig::defaults();
  std::vector<std::string> problems;
  std::set<std::string> seen;

  const auto problem = [&problems, &path](long lineno, const std::string& message) {
    problems.push_back(path.string() + ":" + std::to_string(lineno) + ": " + message);
  };

  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;

    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(path.string(), lineno, "expected key = value");
    }
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view value = trim(s.substr(eq + 1));

    if (!seen.insert(key).second) {
      problem(lineno, "duplicate key: " + key);
      continue;
    }

    const auto set_double = [&](double& slot) {
      const auto parsed = parse_double(value);
      if (parsed && std::isfinite(*parsed)) {
        slot = *parsed;
      } else {
        problem(lineno, key + " must be a finite number");
      }
    };
    const auto set_int = [&](int& slot) {
      const auto parsed = parse_integer<int>(value);
      if (parsed) {
        slot = *parsed;
      } else {
        problem(lineno, key + " must be an integer");
      }
    };
    const auto set_list = [&](std::vector<double>& slot) {
      const auto parsed = parse_double_list(value);
      if (parsed) {
        slot = *parsed;
      } else {
        problem(lineno, key + " must be a nonempty comma-separated number list");
      }
    };

    if (key == "f_true") {
      set_double(cfg.experiment.f_true);
    } else if (key == "image_width") {
      set_int(cfg.experiment.image_size.width);
    } else if (key == "image_height") {
      set_int(cfg.experiment.image_size.height);
    } else if (key == "n_points") {
      set_int(cfg.experiment.n_points);
    } else if (key == "n_runs") {
      set_int(cfg.experiment.n_runs);
    } else if (key == "pan_deg") {
      set_double(cfg.experiment.pan_deg);
    } else if (key == "tilt_deg") {
      set_double(cfg.experiment.tilt_deg);
    } else if (key == "master_seed") {
      const auto parsed = parse_integer<std::uint64_t>(value);
      if (parsed) {
        cfg.experiment.master_seed = *parsed;
        cfg.master_seed_from_config = true;
      } else {
        problem(lineno, "master_seed must be an unsigned 64-bit integer");
      }
    } else if (key == "aggregation") {
      if (value == "mean") {
        cfg.experiment.aggregation = Aggregation::Mean;
      } else if (value == "median") {
        cfg.experiment.aggregation = Aggregation::Median;
      } else {
        problem(lineno, "aggregation must be 'mean' or 'median'");
      }
    } else if (key == "selection") {
      if (value == "center") {
        cfg.experiment.selection = Selection::CenterOnly;
      } else if (value == "all") {
        cfg.experiment.selection = Selection::All;
      } else {
        problem(lineno, "selection must be 'center' or 'all'");
      }
    } else if (key == "scene") {
      if (value == "frustum") {
        cfg.experiment.scene = SceneKind::RandomFrustum;
      } else if (value == "grid") {
        cfg.experiment.scene = SceneKind::GridSurface;
      } else {
        problem(lineno, "scene must be 'frustum' or 'grid'");
      }
    } else if (key == "fov_fill") {
      set_double(cfg.experiment.fov_fill);
    } else if (key == "z_min") {
      set_double(cfg.experiment.z_min);
    } else if (key == "z_max") {
      set_double(cfg.experiment.z_max);
    } else if (key == "angles") {
      set_list(cfg.angles);
    } else if (key == "offsets") {
      set_list(cfg.offsets_deg);
    } else if (key == "base_angles") {
      set_list(cfg.base_angles);
    } else if (key == "sigmas") {
      set_list(cfg.sigmas);
    } else {
      problem(lineno, "unknown key: " + key);
    }
  }

  try {
    cfg.experiment.validate();
  } catch (const ValidationError& e) {
    for (const auto& p : e.problems()) {
      problems.push_back(path.string() + ": " + p);
    }
  }

  if (!problems.empty()) {
    throw ValidationError(std::move(problems));
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Result files
// ---------------------------------------------------------------------------

namespace {

json config_to_json(const ExperimentConfig& cfg) {
  return {{"f_true", cfg.f_true},
          {"image_width", cfg.image_size.width},
          {"image_height", cfg.image_size.height},
          {"n_points", cfg.n_points},
          {"n_runs", cfg.n_runs},
          {"pan_deg", cfg.pan_deg},
          {"tilt_deg", cfg.tilt_deg},
          {"master_seed", cfg.master_seed},
          {"aggregation", to_string(cfg.aggregation)},
          {"selection", to_string(cfg.selection)},
          {"scene", to_string(cfg.scene)},
          {"fov_fill", cfg.fov_fill},
          {"z_min", cfg.z_min},
          {"z_max", cfg.z_max}};
}

json axis_to_json(const AxisStatistics& stats) {
  json per_run_value = json::array();
  json per_run_magnitude = json::array();
  json per_run_n_points = json::array();
  for (const FocalEstimate& e : stats.per_run) {
    per_run_value.push_back(e.value);
    per_run_magnitude.push_back(e.magnitude);
    per_run_n_points.push_back(e.n_points);
  }
  return {{"rotation_deg", stats.rotation_deg},
          {"mean", stats.mean},
          {"sd", stats.sd},
          {"error", stats.error},
          {"per_run_value", per_run_value},
          {"per_run_magnitude", per_run_magnitude},
          {"per_run_n_points", per_run_n_points}};
}

void dump_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << "\n";
}

// "mean,sd,error" column groups for the wide per-cell summary tables.
std::string full_stats(const AxisStatistics& stats) {
  return format_double(stats.mean) + "," + format_double(stats.sd) + "," +
         format_double(stats.error);
}

std::string short_stats(const AxisStatistics& stats) {
  return format_double_2dp(stats.mean) + "," + format_double_2dp(stats.sd) + "," +
         format_double_2dp(stats.error);
}

void write_axis_summary_row(std::ofstream& out, const AxisStatistics& stats,
                            const ExperimentConfig& cfg) {
  out << to_string(stats.axis) << ',' << format_double(stats.rotation_deg) << ','
      << format_double(cfg.f_true) << ',' << cfg.n_runs << ',' << cfg.n_points
      << ',' << to_string(cfg.selection) << ',' << to_string(cfg.aggregation)
      << ',' << format_double(stats.mean) << ',' << format_double(stats.sd)
      << ',' << format_double(stats.error) << ',' << format_double_2dp(stats.mean)
      << ',' << format_double_2dp(stats.sd) << ',' << format_double_2dp(stats.error)
      << "\n";
}

void write_axis_runs(std::ofstream& out, const std::string& prefix,
                     const AxisStatistics& stats) {
  for (std::size_t r = 0; r < stats.per_run.size(); ++r) {
    out << prefix << to_string(stats.axis) << ',' << r << ','
        << format_double(stats.per_run[r].value) << ','
        << format_double(stats.per_run[r].magnitude) << "\n";
  }
}

}  // namespace

std::vector<std::string> write_simulate_outputs(const std::filesystem::path& dir,
                                                const ExperimentReport& report,
                                                OutputFormat format) {
  std::vector<std::string> outputs;

  if (format != OutputFormat::Json) {
    {
      std::ofstream out = open_output(dir / "report.csv");
      out << "axis,rotation_deg,ground_truth,n_runs,n_points,selection,aggregation,"
             "mean,sd,error,mean_2dp,sd_2dp,error_2dp\n";
      write_axis_summary_row(out, report.fv, report.config);
      write_axis_summary_row(out, report.fu, report.config);
    }
    outputs.push_back("report.csv");

    {
      std::ofstream out = open_output(dir / "runs.csv");
      out << "run,axis,value,magnitude\n";
      for (std::size_t r = 0; r < report.fv.per_run.size(); ++r) {
        out << r << ",fv," << format_double(report.fv.per_run[r].value) << ','
            << format_double(report.fv.per_run[r].magnitude) << "\n";
        out << r << ",fu," << format_double(report.fu.per_run[r].value) << ','
            << format_double(report.fu.per_run[r].magnitude) << "\n";
      }
    }
    outputs.push_back("runs.csv");
  }

  if (format != OutputFormat::Csv) {
    const json j = {{"library_version", kLibraryVersion},
                    {"config", config_to_json(report.config)},
                    {"results",
                     {{"fv", axis_to_json(report.fv)}, {"fu", axis_to_json(report.fu)}}}};
    dump_json(dir / "report.json", j);
    outputs.push_back("report.json");
  }
  return outputs;
}

std::vector<std::string> write_angle_sweep_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    std::span<const AngleSweepCell> cells, OutputFormat format) {
  std::vector<std::string> outputs;

  if (format != OutputFormat::Json) {
    {
      std::ofstream out = open_output(dir / "angle_summary.csv");
      out << "angle_deg,status,fv_mean,fv_sd,fv_error,fu_mean,fu_sd,fu_error,"
             "fv_mean_2dp,fv_sd_2dp,fv_error_2dp,fu_mean_2dp,fu_sd_2dp,fu_error_2dp\n";
      for (const AngleSweepCell& cell : cells) {
        out << format_double(cell.angle_deg) << ','
            << (cell.degenerate ? "degenerate" : "ok");
        if (cell.degenerate) {
          out << ",,,,,,,,,,,,\n";
        } else {
          out << ',' << full_stats(*cell.fv) << ',' << full_stats(*cell.fu) << ','
              << short_stats(*cell.fv) << ',' << short_stats(*cell.fu) << "\n";
        }
      }
    }
    outputs.push_back("angle_summary.csv");

    {
      std::ofstream out = open_output(dir / "angle_runs.csv");
      out << "angle_deg,axis,run,value,magnitude\n";
      for (const AngleSweepCell& cell : cells) {
        if (cell.degenerate) continue;
        const std::string prefix = format_double(cell.angle_deg) + ",";
        write_axis_runs(out, prefix, *cell.fv);
        write_axis_runs(out, prefix, *cell.fu);
      }
    }
    outputs.push_back("angle_runs.csv");
  }

  if (format != OutputFormat::Csv) {
    json jcells = json::array();
    for (const AngleSweepCell& cell : cells) {
      json jc = {{"angle_deg", cell.angle_deg},
                 {"status", cell.degenerate ? "degenerate" : "ok"}};
      if (!cell.degenerate) {
        jc["fv"] = axis_to_json(*cell.fv);
        jc["fu"] = axis_to_json(*cell.fu);
      }
      jcells.push_back(std::move(jc));
    }
    const json j = {{"library_version", kLibraryVersion},
                    {"config", config_to_json(cfg)},
                    {"cells", jcells}};
    dump_json(dir / "angle_sweep.json", j);
    outputs.push_back("angle_sweep.json");
  }
  return outputs;
}

std::vector<std::string> write_angular_noise_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    const AngularNoiseResult& result, OutputFormat format) {
  std::vector<std::string> outputs;

  const auto slope_for = [&result](double base, FocalAxis axis) {
    for (const AngularNoiseSlope& s : result.slopes) {
      if (s.base_deg == base) {
        return axis == FocalAxis::V ? s.slope_fv : s.slope_fu;
      }
    }
    return 0.0;
  };

  if (format != OutputFormat::Json) {
    {
      std::ofstream out = open_output(dir / "angular_noise_summary.csv");
      out << "base_deg,offset_deg,status,fv_mean,fv_sd,fv_error,fu_mean,fu_sd,"
             "fu_error,fv_fitted_slope,fu_fitted_slope,"
             "fv_mean_2dp,fv_sd_2dp,fv_error_2dp,fu_mean_2dp,fu_sd_2dp,fu_error_2dp\n";
      for (const AngularNoiseCell& cell : result.cells) {
        out << format_double(cell.base_deg) << ',' << format_double(cell.offset_deg)
            << ',' << (cell.degenerate ? "degenerate" : "ok");
        if (cell.degenerate) {
          out << ",,,,,,,"
              << format_double(slope_for(cell.base_deg, FocalAxis::V)) << ','
              << format_double(slope_for(cell.base_deg, FocalAxis::U))
              << ",,,,,,\n";
        } else {
          out << ',' << full_stats(*cell.fv) << ',' << full_stats(*cell.fu) << ','
              << format_double(slope_for(cell.base_deg, FocalAxis::V)) << ','
              << format_double(slope_for(cell.base_deg, FocalAxis::U)) << ','
              << short_stats(*cell.fv) << ',' << short_stats(*cell.fu) << "\n";
        }
      }
    }
    outputs.push_back("angular_noise_summary.csv");

    {
      std::ofstream out = open_output(dir / "angular_noise_runs.csv");
      out << "base_deg,offset_deg,axis,run,value,magnitude,abs_error\n";
      for (const AngularNoiseCell& cell : result.cells) {
        if (cell.degenerate) continue;
        for (const auto* stats : {&*cell.fv, &*cell.fu}) {
          for (std::size_t r = 0; r < stats->per_run.size(); ++r) {
            out << format_double(cell.base_deg) << ',' << format_double(cell.offset_deg)
                << ',' << to_string(stats->axis) << ',' << r << ','
                << format_double(stats->per_run[r].value) << ','
                << format_double(stats->per_run[r].magnitude) << ','
                << format_double(std::abs(stats->per_run[r].magnitude - cfg.f_true))
                << "\n";
          }
        }
      }
    }
    outputs.push_back("angular_noise_runs.csv");
  }

  if (format != OutputFormat::Csv) {
    json jcells = json::array();
    for (const AngularNoiseCell& cell : result.cells) {
      json jc = {{"base_deg", cell.base_deg},
                 {"offset_deg", cell.offset_deg},
                 {"status", cell.degenerate ? "degenerate" : "ok"}};
      if (!cell.degenerate) {
        jc["fv"] = axis_to_json(*cell.fv);
        jc["fu"] = axis_to_json(*cell.fu);
      }
      jcells.push_back(std::move(jc));
    }
    json jslopes = json::array();
    for (const AngularNoiseSlope& s : result.slopes) {
      jslopes.push_back({{"base_deg", s.base_deg},
                         {"slope_fv", s.slope_fv},
                         {"slope_fu", s.slope_fu}});
    }
    const json j = {{"library_version", kLibraryVersion},
                    {"config", config_to_json(cfg)},
                    {"cells", jcells},
                    {"slopes", jslopes}};
    dump_json(dir / "angular_noise.json", j);
    outputs.push_back("angular_noise.json");
  }
  return outputs;
}

std::vector<std::string> write_pixel_noise_outputs(
    const std::filesystem::path& dir, const ExperimentConfig& cfg,
    std::span<const PixelNoiseCell> cells, OutputFormat format) {
  std::vector<std::string> outputs;

  if (format != OutputFormat::Json) {
    {
      std::ofstream out = open_output(dir / "pixel_noise_summary.csv");
      out << "base_deg,sigma,fv_mean,fv_sd,fv_error,fv_abs_error_mean,"
             "fv_abs_error_sd,fu_mean,fu_sd,fu_error,fu_abs_error_mean,"
             "fu_abs_error_sd,"
             "fv_mean_2dp,fv_sd_2dp,fv_error_2dp,fu_mean_2dp,fu_sd_2dp,fu_error_2dp\n";
      for (const PixelNoiseCell& cell : cells) {
        out << format_double(cell.base_deg) << ',' << format_double(cell.sigma) << ','
            << full_stats(cell.fv) << ',' << format_double(cell.fv_abs_error_mean)
            << ',' << format_double(cell.fv_abs_error_sd) << ','
            << full_stats(cell.fu) << ',' << format_double(cell.fu_abs_error_mean)
            << ',' << format_double(cell.fu_abs_error_sd) << ','
            << short_stats(cell.fv) << ',' << short_stats(cell.fu) << "\n";
      }
    }
    outputs.push_back("pixel_noise_summary.csv");

    {
      std::ofstream out = open_output(dir / "pixel_noise_runs.csv");
      out << "base_deg,sigma,axis,run,value,magnitude,abs_error\n";
      for (const PixelNoiseCell& cell : cells) {
        for (const AxisStatistics* stats : {&cell.fv, &cell.fu}) {
          for (std::size_t r = 0; r < stats->per_run.size(); ++r) {
            out << format_double(cell.base_deg) << ',' << format_double(cell.sigma)
                << ',' << to_string(stats->axis) << ',' << r << ','
                << format_double(stats->per_run[r].value) << ','
                << format_double(stats->per_run[r].magnitude) << ','
                << format_double(std::abs(stats->per_run[r].magnitude - cfg.f_true))
                << "\n";
          }
        }
      }
    }
    outputs.push_back("pixel_noise_runs.csv");
  }

  if (format != OutputFormat::Csv) {
    json jcells = json::array();
    for (const PixelNoiseCell& cell : cells) {
      jcells.push_back({{"base_deg", cell.base_deg},
                        {"sigma", cell.sigma},
                        {"fv", axis_to_json(cell.fv)},
                        {"fu", axis_to_json(cell.fu)},
                        {"fv_abs_error_mean", cell.fv_abs_error_mean},
                        {"fv_abs_error_sd", cell.fv_abs_error_sd},
                        {"fu_abs_error_mean", cell.fu_abs_error_mean},
                        {"fu_abs_error_sd", cell.fu_abs_error_sd}});
    }
    const json j = {{"library_version", kLibraryVersion},
                    {"config", config_to_json(cfg)},
                    {"cells", jcells}};
    dump_json(dir / "pixel_noise.json", j);
    outputs.push_back("pixel_noise.json");
  }
  return outputs;
}

namespace {

json calibration_axis_to_json(const CalibrationAxisResult& axis) {
  json j = {{"rotation_deg", axis.rotation_deg},
            {"n_correspondences", axis.n_correspondences},
            {"value", axis.estimate.value},
            {"magnitude", axis.estimate.magnitude},
            {"n_points_used", axis.estimate.n_points}};
  j["ground_truth"] = axis.ground_truth ? json(*axis.ground_truth) : json(nullptr);
  j["delta_pct"] = axis.delta_pct ? json(*axis.delta_pct) : json(nullptr);
  return j;
}

void write_calibration_csv_row(std::ofstream& out, const char* axis_name,
                               const CalibrationAxisResult& axis,
                               const CalibrationSummary& summary) {
  out << axis_name << ',' << format_double(axis.rotation_deg) << ','
      << axis.n_correspondences << ',' << to_string(summary.selection) << ','
      << to_string(summary.aggregation) << ',' << format_double(axis.estimate.value)
      << ',' << format_double(axis.estimate.magnitude) << ',';
  if (axis.ground_truth) out << format_double(*axis.ground_truth);
  out << ',';
  if (axis.delta_pct) out << format_double(*axis.delta_pct);
  out << "\n";
}

}  // namespace

std::vector<std::string> write_calibrate_outputs(const std::filesystem::path& dir,
                                                 const CalibrationSummary& summary,
                                                 OutputFormat format) {
  std::vector<std::string> outputs;

  if (format != OutputFormat::Json) {
    std::ofstream out = open_output(dir / "calibration.csv");
    out << "axis,rotation_deg,n_correspondences,selection,aggregation,"
           "value,magnitude,ground_truth,delta_pct\n";
    if (summary.fv) write_calibration_csv_row(out, "fv", *summary.fv, summary);
    if (summary.fu) write_calibration_csv_row(out, "fu", *summary.fu, summary);
    outputs.push_back("calibration.csv");
  }

  if (format != OutputFormat::Csv) {
    json results = json::object();
    if (summary.fv) results["fv"] = calibration_axis_to_json(*summary.fv);
    if (summary.fu) results["fu"] = calibration_axis_to_json(*summary.fu);
    const json j = {{"library_version", kLibraryVersion},
                    {"selection", to_string(summary.selection)},
                    {"aggregation", to_string(summary.aggregation)},
                    {"results", results}};
    dump_json(dir / "calibration.json", j);
    outputs.push_back("calibration.json");
  }
  return outputs;
}

void write_simulation_manifest(const std::filesystem::path& dir,
                               const std::string& command,
                               const CampaignConfig& config,
                               const std::vector<std::string>& outputs,
                               double duration_seconds) {
  const json j = {{"command", command},
                  {"library_version", kLibraryVersion},
                  {"master_seed", config.experiment.master_seed},
                  {"config",
                   {{"experiment", config_to_json(config.experiment)},
                    {"angles", config.angles},
                    {"offsets_deg", config.offsets_deg},
                    {"base_angles", config.base_angles},
                    {"sigmas", config.sigmas}}},
                  {"outputs", outputs},
                  {"duration_seconds", duration_seconds}};
  dump_json(dir / "manifest.json", j);
}

void write_calibration_manifest(const std::filesystem::path& dir,
                                const std::optional<std::string>& pan_file,
                                const std::optional<std::string>& tilt_file,
                                const CalibrationSummary& summary,
                                const std::vector<std::string>& outputs,
                                double duration_seconds) {
  json inputs = json::object();
  inputs["pan_file"] = pan_file ? json(*pan_file) : json(nullptr);
  inputs["tilt_file"] = tilt_file ? json(*tilt_file) : json(nullptr);
  const json j = {{"command", "calibrate"},
                  {"library_version", kLibraryVersion},
                  {"inputs", inputs},
                  {"selection", to_string(summary.selection)},
                  {"aggregation", to_string(summary.aggregation)},
                  {"outputs", outputs},
                  {"duration_seconds", duration_seconds}};
  dump_json(dir / "manifest.json", j);
}

}  // namespace sac
