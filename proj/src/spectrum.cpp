#include "anisospec/spectrum.hpp"

#include "anisospec/area.hpp"
#include "anisospec/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace anisospec {

char mode_letter(Mode m) {
  switch (m) {
    case Mode::LinearOriginal: return 'a';
    case Mode::LinearMonotone: return 'b';
    case Mode::QuadraticExact: return 'c';
  }
  return '?';
}

Mode mode_from_letter(char c) {
  switch (c) {
    case 'a': return Mode::LinearOriginal;
    case 'b': return Mode::LinearMonotone;
    case 'c': return Mode::QuadraticExact;
    default: throw std::invalid_argument(std::string("unknown mode '") + c + "'");
  }
}

std::vector<Mode> parse_modes(const std::string& list) {
  std::vector<Mode> modes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.empty()) continue;
    if (item.size() != 1) throw std::invalid_argument("unknown mode '" + item + "'");
    const Mode m = mode_from_letter(item[0]);
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
  }
  if (modes.empty()) throw std::invalid_argument("no interpolation mode given");
  std::sort(modes.begin(), modes.end());
  return modes;
}

SpectrumSource::SpectrumSource(TensorMesh mesh, int workers) : mesh_(std::move(mesh)), workers_(std::max(workers, 1)) {
  require_valid(mesh_);
  vertex_values_.reserve(mesh_.num_vertices());
  for (const auto& t : mesh_.tensors) vertex_values_.push_back(anisotropy(t));
  total_area_ = mesh_area(mesh_);
  // sqanis is convex on every triangle, so its maximum over the mesh (and over any
  // subdivision of it) is attained at an input vertex
  max_value_ = vertex_values_.empty() ? 0.0 : *std::max_element(vertex_values_.begin(), vertex_values_.end());
  for (std::size_t v = 0; v < vertex_values_.size(); ++v) {
    if (!std::isfinite(vertex_values_[v])) {
      throw NumericalError("vertex " + std::to_string(v) + ": anisotropy overflows");
    }
  }
}

const SubdividedMesh& SpectrumSource::subdivided() const {
  if (!sub_) sub_ = subdivide_mesh(mesh_, workers_);
  return *sub_;
}

std::vector<double> uniform_thresholds(double max_value, int bins) {
  if (bins < 2) throw std::invalid_argument("bins must be >= 2");
  const double top = max_value > 0.0 ? max_value : 1.0;
  std::vector<double> t(static_cast<std::size_t>(bins) + 1);
  for (int j = 0; j <= bins; ++j) t[static_cast<std::size_t>(j)] = (j * top) / bins;
  t.back() = top;
  return t;
}

ContourSpectrum cumulative_histogram(const SpectrumSource& src, Mode mode, const std::vector<double>& thresholds) {
  if (src.mesh().triangles.empty()) throw MeshError("cumulative_histogram: empty mesh");
  ContourSpectrum spec;
  spec.mode = mode;
  spec.bin_values = thresholds;
  spec.total_area = src.total_area();
  spec.cumulative.assign(thresholds.size(), 0.0);

  const TensorMesh& mesh = src.mesh();
  const SubdividedMesh* sub = mode == Mode::LinearOriginal ? nullptr : &src.subdivided();

  std::function<double(std::size_t, double)> area_of;
  std::size_t count = 0;
  if (mode == Mode::LinearOriginal) {
    count = mesh.num_triangles();
    area_of = [&](std::size_t t, double v) {
      const auto& tri = mesh.triangles[t];
      const auto& vals = src.vertex_values();
      return linear_sublevel_area(mesh.corners(t), {vals[tri[0]], vals[tri[1]], vals[tri[2]]}, v);
    };
  } else if (mode == Mode::LinearMonotone) {
    count = sub->mesh.num_triangles();
    area_of = [sub](std::size_t t, double v) {
      const auto& tri = sub->mesh.triangles[t];
      return linear_sublevel_area(sub->mesh.corners(t), {sub->values[tri[0]], sub->values[tri[1]], sub->values[tri[2]]},
                                  v);
    };
  } else {
    count = sub->monotone.size();
    area_of = [sub](std::size_t t, double v) {
      const auto& mt = sub->monotone[t];
      return sublevel_area(mt, sub->parents[mt.parent], v);
    };
  }

  parallel_for(thresholds.size(), src.workers(), [&](std::size_t j) {
    const double v = thresholds[j];
    spec.cumulative[j] = pairwise_sum(0, count, [&](std::size_t t) {
      const double a = area_of(t, v);
      if (!std::isfinite(a)) {
        const int parent = sub ? sub->provenance[t] : static_cast<int>(t);
        throw TriangleError(parent, "non-finite sublevel area");
      }
      return a;
    });
  });

  for (std::size_t j = 1; j < spec.cumulative.size(); ++j) {
    if (spec.cumulative[j] < spec.cumulative[j - 1]) {
      spec.max_correction = std::max(spec.max_correction, spec.cumulative[j - 1] - spec.cumulative[j]);
      spec.cumulative[j] = spec.cumulative[j - 1];
    }
  }
  if (spec.max_correction > 1e-7 * spec.total_area) {
    std::ostringstream os;
    os << "mode " << mode_letter(mode) << ": monotonicity repair of " << spec.max_correction;
    spec.warnings.push_back(os.str());
  }
  density(spec);
  return spec;
}

ContourSpectrum cumulative_histogram(const SpectrumSource& src, Mode mode, int bins) {
  return cumulative_histogram(src, mode, uniform_thresholds(src.max_value(), bins));
}

ContourSpectrum cumulative_histogram(const TensorMesh& mesh, Mode mode, int bins, int workers) {
  const SpectrumSource src(mesh, workers);
  return cumulative_histogram(src, mode, bins);
}

ContourSpectrum& density(ContourSpectrum& spec) {
  const std::size_t n = spec.bins();
  spec.density.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double width = spec.bin_values[j + 1] - spec.bin_values[j];
    if (!(width > 0.0)) throw std::invalid_argument("density: zero-width bin");
    spec.density[j] = (spec.cumulative[j + 1] - spec.cumulative[j]) / width;
  }
  return spec;
}

double density_mean(const ContourSpectrum& spec) {
  double mass = 0.0, moment = 0.0;
  for (std::size_t j = 0; j < spec.density.size(); ++j) {
    const double width = spec.bin_values[j + 1] - spec.bin_values[j];
    const double mid = 0.5 * (spec.bin_values[j] + spec.bin_values[j + 1]);
    mass += spec.density[j] * width;
    moment += spec.density[j] * width * mid;
  }
  return mass > 0.0 ? moment / mass : 0.0;
}

ComparisonReport compare_modes(const SpectrumSource& src, int bins) {
  ComparisonReport r;
  const auto thresholds = uniform_thresholds(src.max_value(), bins);
  for (std::size_t m = 0; m < 3; ++m) {
    r.spectra[m] = cumulative_histogram(src, kAllModes[m], thresholds);
    r.density_means[m] = density_mean(r.spectra[m]);
  }
  const auto& a = r.spectra[0].cumulative;
  const auto& b = r.spectra[1].cumulative;
  const auto& c = r.spectra[2].cumulative;
  r.max_b_over_c = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    r.diff_b_minus_c.push_back(b[j] - c[j]);
    r.diff_a_minus_c.push_back(a[j] - c[j]);
    r.max_b_over_c = std::max(r.max_b_over_c, b[j] - c[j]);
  }
  return r;
}

}  // namespace anisospec
