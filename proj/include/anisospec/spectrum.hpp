#ifndef ANISOSPEC_SPECTRUM_HPP
#define ANISOSPEC_SPECTRUM_HPP

#include "anisospec/mesh.hpp"
#include "anisospec/subdivision.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace anisospec {

/// Interpolation of the anisotropy: [a] linear on the input mesh, [b] linear on the monotone
/// subdivision, [c] quadratic from linearly interpolated tensor components.
enum class Mode { LinearOriginal, LinearMonotone, QuadraticExact };

inline constexpr std::array<Mode, 3> kAllModes{Mode::LinearOriginal, Mode::LinearMonotone, Mode::QuadraticExact};

char mode_letter(Mode m);
Mode mode_from_letter(char c);
/// Parses "a,b,c" style lists; throws std::invalid_argument on unknown letters or an empty list.
std::vector<Mode> parse_modes(const std::string& list);

/// Cumulative histogram CH(v) = Area(sqanis <= v) sampled at bin_values, and its derivative.
struct ContourSpectrum {
  Mode mode = Mode::QuadraticExact;
  std::vector<double> bin_values;  ///< B + 1 thresholds
  std::vector<double> cumulative;  ///< B + 1 areas
  std::vector<double> density;     ///< B values, one per bin
  double total_area = 0.0;         ///< shoelace area of the input mesh
  double max_correction = 0.0;     ///< largest monotonicity repair applied
  std::vector<std::string> warnings;

  std::size_t bins() const { return bin_values.empty() ? 0 : bin_values.size() - 1; }
};

/// Mesh plus its (lazily built) monotone subdivision; shared by all modes.
class SpectrumSource {
 public:
  /// The mesh is validated and reoriented; throws MeshError when invalid.
  explicit SpectrumSource(TensorMesh mesh, int workers = 1);

  const TensorMesh& mesh() const { return mesh_; }
  const SubdividedMesh& subdivided() const;
  const std::vector<double>& vertex_values() const { return vertex_values_; }
  double total_area() const { return total_area_; }
  double max_value() const { return max_value_; }
  int workers() const { return workers_; }

 private:
  TensorMesh mesh_;
  std::vector<double> vertex_values_;
  double total_area_ = 0.0;
  double max_value_ = 0.0;
  int workers_ = 1;
  mutable std::optional<SubdividedMesh> sub_;
};

/// Uniform thresholds j * max / bins, j = 0..bins. A non-positive max is replaced by 1.
std::vector<double> uniform_thresholds(double max_value, int bins);

/// Sums per-triangle sublevel areas at each threshold in canonical triangle order, then repairs
/// monotonicity (repairs above 1e-7 of the total area are reported as warnings).
ContourSpectrum cumulative_histogram(const SpectrumSource& src, Mode mode, const std::vector<double>& thresholds);
ContourSpectrum cumulative_histogram(const SpectrumSource& src, Mode mode, int bins);
ContourSpectrum cumulative_histogram(const TensorMesh& mesh, Mode mode, int bins, int workers = 1);

/// Forward-difference density on each bin; throws std::invalid_argument on zero-width bins.
ContourSpectrum& density(ContourSpectrum& spec);

/// Mean anisotropy under the density (bin midpoints).
double density_mean(const ContourSpectrum& spec);

struct ComparisonReport {
  std::array<ContourSpectrum, 3> spectra;  ///< indexed a, b, c
  std::vector<double> diff_b_minus_c;      ///< cumulative difference per threshold
  std::vector<double> diff_a_minus_c;
  double max_b_over_c = 0.0;  ///< max(CH_b - CH_c); non-positive up to rounding
  std::array<double, 3> density_means{};
};

ComparisonReport compare_modes(const SpectrumSource& src, int bins);

}  // namespace anisospec

#endif  // ANISOSPEC_SPECTRUM_HPP
