#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "salaffect/types.hpp"

namespace salaffect {

enum class Connectivity { Four = 4, Eight = 8 };

/// Binarisation and region-counting parameters.
struct FeatureConfig {
  double threshold = 0.5;
  Connectivity connectivity = Connectivity::Eight;
  double min_region_fraction = 0.001;

  /// Throws InvalidArgument unless 0 <= threshold <= 1 and
  /// 0 <= min_region_fraction < 1.
  void validate() const;
};

Connectivity connectivity_from_int(int value);

/// Connected components of a mask. Label 0 is background; regions are
/// numbered 1..R in raster-scan order of first encounter.
struct RegionLabeling {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> region_sizes;  // region_sizes[id - 1] = pixel count

  std::size_t region_count() const noexcept { return region_sizes.size(); }
};

/// bit = intensity >= threshold
BinaryMask binarize(const SaliencyMap& map, double threshold);

RegionLabeling label_regions(const BinaryMask& mask, Connectivity connectivity);

/// Drops regions smaller than min_region_fraction * (width*height) and
/// renumbers the survivors densely, preserving their order.
RegionLabeling filter_small_regions(const RegionLabeling& labeling, double min_region_fraction);

/// Foreground pixel count over frame area.
double saliency_area(const RegionLabeling& labeling);

FrameFeatures extract_frame_features(const SaliencyMap& map, const FeatureConfig& config, std::size_t frame_index,
                                     double timestamp);

/// Arithmetic means over the frames. Throws EmptyTrial on an empty sequence
/// and InvalidArgument if frame indices are not strictly increasing.
TrialFeatures aggregate_trial(std::string trial_id, std::vector<FrameFeatures> frames);

}  // namespace salaffect
