#include "anisospec/cli.hpp"

#include "anisospec/area.hpp"
#include "anisospec/io.hpp"
#include "anisospec/spectrum.hpp"
#include "anisospec/subdivision.hpp"
#include "anisospec/topology.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace anisospec {

namespace {

using nlohmann::json;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw MeshError("cannot open '" + path + "' for writing");
  body(file);
  if (!file) throw MeshError("write to '" + path + "' failed");
}

// Fills options not given on the command line from a JSON object keyed by long option name.
void apply_config(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw MeshError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw MeshError("config: expected a JSON object");
  auto as_string = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw MeshError("config: unsupported value " + v.dump());
  };
  for (CLI::Option* opt : cmd.get_options()) {
    if (opt->count() > 0) continue;
    for (const auto& name : opt->get_lnames()) {
      if (name == "config" || !j.contains(name)) continue;
      const json& v = j.at(name);
      if (v.is_array()) {
        for (const auto& x : v) opt->add_result(as_string(x));
      } else {
        opt->add_result(as_string(v));
      }
      try {
        opt->run_callback();
      } catch (const CLI::Error& e) {
        throw MeshError("config field '" + name + "': " + e.what());
      }
      break;
    }
  }
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto modes = parse_modes(cfg.modes);
  if (cfg.bins < 2) throw std::invalid_argument("--bins must be at least 2");
  SpectrumSource src(read_mesh(cfg.input), cfg.workers);
  const auto thresholds = uniform_thresholds(src.max_value(), cfg.bins);
  std::vector<ContourSpectrum> spectra;
  for (Mode m : modes) spectra.push_back(cumulative_histogram(src, m, thresholds));
  const bool as_json = cfg.format == "json" || (cfg.format.empty() && ends_with(cfg.output, ".json"));
  write_output(cfg.output, out, [&](std::ostream& os) {
    if (as_json) {
      os << spectra_to_json(spectra).dump() << '\n';
    } else {
      write_spectra_csv(os, spectra);
    }
  });
  for (const auto& s : spectra) {
    const double total = s.cumulative.back();
    const double rel = std::abs(total - s.total_area) / s.total_area;
    err << "conservation [" << mode_letter(s.mode) << "]: cumulative " << format_double(total) << ", mesh area "
        << format_double(s.total_area) << ", relative difference " << format_double(rel) << '\n';
    for (const auto& w : s.warnings) err << "warning [" << mode_letter(s.mode) << "]: " << w << '\n';
  }
  return kExitOk;
}

int cmd_tree(const RunConfig& cfg, std::ostream& out) {
  const auto modes = parse_modes(cfg.modes);
  SpectrumSource src(read_mesh(cfg.input), cfg.workers);
  json j = json::object();
  for (Mode m : modes) {
    json entry{{"join", tree_to_json(join_tree(src, m))}};
    if (cfg.split) entry["split"] = tree_to_json(split_tree(src, m));
    j[std::string(1, mode_letter(m))] = entry;
  }
  write_output(cfg.output, out, [&](std::ostream& os) { os << j.dump() << '\n'; });
  return kExitOk;
}

int cmd_subdivide(const RunConfig& cfg, std::ostream& out) {
  SpectrumSource src(read_mesh(cfg.input), cfg.workers);
  const auto& sub = src.subdivided();
  write_output(cfg.output, out, [&](std::ostream& os) { write_subdivided_json(os, sub); });
  if (!cfg.quadrics.empty()) write_output(cfg.quadrics, out, [&](std::ostream& os) { write_quadrics_csv(os, sub); });
  return kExitOk;
}

int cmd_contours(const RunConfig& cfg, std::ostream& out) {
  const auto modes = parse_modes(cfg.modes);
  if (modes.size() != 1) throw std::invalid_argument("contours takes exactly one mode");
  if (cfg.isovalues.empty()) throw std::invalid_argument("contours needs at least one --isovalue");
  SpectrumSource src(read_mesh(cfg.input), cfg.workers);
  ContourOptions opts;
  opts.chordal_tolerance = cfg.tolerance;
  std::vector<ContourSet> sets;
  for (double iso : cfg.isovalues) sets.push_back(extract_contours(src, modes.front(), iso, opts));
  write_output(cfg.output, out, [&](std::ostream& os) { write_contours_csv(os, sets); });
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  if (cfg.grid < 2) throw std::invalid_argument("--grid must be at least 2");
  TensorMesh mesh;
  if (cfg.random) {
    mesh = generate_random(cfg.grid, cfg.seed);
  } else {
    SyntheticOptions opts;
    opts.grid_n = cfg.grid;
    opts.seed = cfg.seed;
    opts.perturb_directions = cfg.perturb;
    opts.perturb_amplitude = cfg.amplitude;
    mesh = generate_synthetic(opts);
  }
  write_output(cfg.output, out, [&](std::ostream& os) { write_mesh_json(os, mesh); });
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto modes = parse_modes(cfg.modes);
  if (modes.size() != 1) throw std::invalid_argument("oracle takes exactly one mode");
  TensorMesh mesh = read_mesh(cfg.input);
  require_valid(mesh);
  if (cfg.tri < 0 || static_cast<std::size_t>(cfg.tri) >= mesh.triangles.size()) {
    throw std::invalid_argument("--tri out of range");
  }
  const auto corners = mesh.corners(cfg.tri);
  McEstimate est;
  if (modes.front() == Mode::QuadraticExact) {
    const auto field = tensor_field_coeffs(mesh, cfg.tri);
    est = mc_sublevel_area([&](const Point2& p) { return anisotropy(field(p)); }, corners, cfg.value, cfg.samples,
                           cfg.seed);
  } else {
    if (modes.front() == Mode::LinearMonotone) throw std::invalid_argument("oracle supports modes a and c");
    const auto& t = mesh.triangles[cfg.tri];
    const auto lin = linear_coeffs(corners[0], corners[1], corners[2], anisotropy(mesh.tensors[t[0]]),
                                   anisotropy(mesh.tensors[t[1]]), anisotropy(mesh.tensors[t[2]]));
    est = mc_sublevel_area(lin, corners, cfg.value, cfg.samples, cfg.seed);
  }
  write_output(cfg.output, out, [&](std::ostream& os) {
    os << "estimate,std_error\n" << format_double(est.estimate) << ',' << format_double(est.std_error) << '\n';
  });
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::map<std::string, std::string> mode_defaults;
  CLI::App app{"Exact contour spectra and join trees of 2D tensor-field anisotropy", "anisospec"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* c, bool with_modes, const std::string& default_modes) {
    c->add_option("--config", cfg.config, "JSON file with default option values");
    c->add_option("--output,-o", cfg.output, "Output path, - for stdout");
    c->add_option("--seed", cfg.seed, "Random seed");
    c->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    if (with_modes) {
      mode_defaults[c->get_name()] = default_modes;
      c->add_option("--modes", cfg.modes, "Interpolation modes, e.g. a,b,c")->default_str(default_modes);
    }
  };

  auto* spectrum = app.add_subcommand("spectrum", "Cumulative histograms and densities");
  common(spectrum, true, "a,b,c");
  spectrum->add_option("--input,-i", cfg.input, "Input mesh (.json or .csv)");
  spectrum->add_option("--bins", cfg.bins, "Number of bins");
  spectrum->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* tree = app.add_subcommand("tree", "Join (and split) trees per mode");
  common(tree, true, "a,b,c");
  tree->add_option("--input,-i", cfg.input, "Input mesh (.json or .csv)");
  tree->add_flag("--split", cfg.split, "Also compute split trees");

  auto* subdivide = app.add_subcommand("subdivide", "Export the monotone subdivision");
  common(subdivide, false, "");
  subdivide->add_option("--input,-i", cfg.input, "Input mesh (.json or .csv)");
  subdivide->add_option("--quadrics", cfg.quadrics, "Per-triangle quadric CSV path");

  auto* contours = app.add_subcommand("contours", "Contour polylines at isovalues");
  common(contours, true, "c");
  contours->add_option("--input,-i", cfg.input, "Input mesh (.json or .csv)");
  contours->add_option("--isovalue", cfg.isovalues, "Isovalues")->delimiter(',');
  contours->add_option("--tolerance", cfg.tolerance, "Chordal tolerance (default 1e-3 of the bbox diagonal)");

  auto* synth = app.add_subcommand("synth", "Synthetic meshes");
  common(synth, false, "");
  synth->add_option("--grid", cfg.grid, "Vertices per side");
  synth->add_flag("--perturb", cfg.perturb, "Randomise eigenvector directions");
  synth->add_option("--amplitude", cfg.amplitude, "Perturbation amplitude in units of pi/2");
  synth->add_flag("--random", cfg.random, "Random tensors on a jittered grid");

  auto* oracle = app.add_subcommand("oracle", "Monte-Carlo sublevel area of one triangle");
  common(oracle, true, "c");
  oracle->add_option("--input,-i", cfg.input, "Input mesh (.json or .csv)");
  oracle->add_option("--tri", cfg.tri, "Triangle index");
  oracle->add_option("--value", cfg.value, "Threshold");
  oracle->add_option("--samples", cfg.samples, "Sample count");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    cfg.command = cmd->get_name();
    if (!cfg.config.empty()) apply_config(*cmd, cfg.config);
    // required options may come from the config file, so they are checked after it is applied
    for (const char* name : {"--input", "--tri", "--value"}) {
      const CLI::Option* opt = cmd->get_option_no_throw(name);
      if (opt && opt->count() == 0) throw MeshError(std::string(name) + " is required");
    }
    if (mode_defaults.count(cfg.command) && cmd->get_option("--modes")->count() == 0) {
      cfg.modes = mode_defaults[cfg.command];
    }
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out, err);
    if (cfg.command == "tree") return cmd_tree(cfg, out);
    if (cfg.command == "subdivide") return cmd_subdivide(cfg, out);
    if (cfg.command == "contours") return cmd_contours(cfg, out);
    if (cfg.command == "synth") return cmd_synth(cfg, out);
    if (cfg.command == "oracle") return cmd_oracle(cfg, out);
    return kExitInput;
  } catch (const MeshError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const TriangleError& e) {
    err << "numerical error in " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace anisospec
