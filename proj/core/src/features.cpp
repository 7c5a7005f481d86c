#include "salaffect/features.hpp"

#include <cmath>
#include <numeric>

namespace salaffect {

void FeatureConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0,1]");
  }
  if (!(min_region_fraction >= 0.0 && min_region_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "min_region_fraction must lie in [0,1)");
  }
  if (connectivity != Connectivity::Four && connectivity != Connectivity::Eight) {
    throw Error(ErrorCode::InvalidArgument, "connectivity must be 4 or 8");
  }
}

Connectivity connectivity_from_int(int value) {
  if (value == 4) return Connectivity::Four;
  if (value == 8) return Connectivity::Eight;
  throw Error(ErrorCode::InvalidArgument, "connectivity must be 4 or 8, got " + std::to_string(value));
}

BinaryMask binarize(const SaliencyMap& map, double threshold) {
  const auto values = map.intensities();
  std::vector<std::uint8_t> bits(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) bits[i] = values[i] >= threshold ? 1 : 0;
  return BinaryMask(map.width(), map.height(), std::move(bits));
}

namespace {

class DisjointSet {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

RegionLabeling label_regions(const BinaryMask& mask, Connectivity connectivity) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  RegionLabeling out{w, h, std::vector<std::uint32_t>(w * h, 0), {}};

  // first pass: provisional labels (1-based; 0 is background) against the
  // already-visited neighbours
  DisjointSet sets;
  sets.make();  // slot 0 = background
  std::vector<std::uint32_t>& lab = out.labels;
  const bool eight = connectivity == Connectivity::Eight;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      std::uint32_t neighbours[4];
      std::size_t count = 0;
      if (x > 0 && lab[y * w + x - 1]) neighbours[count++] = lab[y * w + x - 1];
      if (y > 0) {
        if (lab[(y - 1) * w + x]) neighbours[count++] = lab[(y - 1) * w + x];
        if (eight && x > 0 && lab[(y - 1) * w + x - 1]) neighbours[count++] = lab[(y - 1) * w + x - 1];
        if (eight && x + 1 < w && lab[(y - 1) * w + x + 1]) neighbours[count++] = lab[(y - 1) * w + x + 1];
      }
      if (count == 0) {
        lab[y * w + x] = sets.make();
        continue;
      }
      std::uint32_t smallest = neighbours[0];
      for (std::size_t i = 1; i < count; ++i) smallest = std::min(smallest, neighbours[i]);
      lab[y * w + x] = smallest;
      for (std::size_t i = 0; i < count; ++i) sets.unite(smallest, neighbours[i]);
    }
  }

  // second pass: final ids in raster order of first encounter
  std::vector<std::uint32_t> final_id;
  for (std::size_t i = 0; i < lab.size(); ++i) {
    if (!lab[i]) continue;
    const std::uint32_t root = sets.find(lab[i]);
    if (root >= final_id.size()) final_id.resize(root + 1, 0);
    if (!final_id[root]) {
      out.region_sizes.push_back(0);
      final_id[root] = static_cast<std::uint32_t>(out.region_sizes.size());
    }
    lab[i] = final_id[root];
    ++out.region_sizes[lab[i] - 1];
  }
  return out;
}

RegionLabeling filter_small_regions(const RegionLabeling& labeling, double min_region_fraction) {
  const double cutoff = min_region_fraction * static_cast<double>(labeling.width * labeling.height);
  std::vector<std::uint32_t> remap(labeling.region_count() + 1, 0);
  RegionLabeling out{labeling.width, labeling.height, labeling.labels, {}};
  for (std::size_t r = 0; r < labeling.region_count(); ++r) {
    if (static_cast<double>(labeling.region_sizes[r]) < cutoff) continue;
    out.region_sizes.push_back(labeling.region_sizes[r]);
    remap[r + 1] = static_cast<std::uint32_t>(out.region_sizes.size());
  }
  for (auto& l : out.labels) l = remap[l];
  return out;
}

double saliency_area(const RegionLabeling& labeling) {
  const std::size_t total = labeling.width * labeling.height;
  if (total == 0) return 0.0;
  const std::size_t covered = std::accumulate(labeling.region_sizes.begin(), labeling.region_sizes.end(), std::size_t{0});
  return static_cast<double>(covered) / static_cast<double>(total);
}

FrameFeatures extract_frame_features(const SaliencyMap& map, const FeatureConfig& config, std::size_t frame_index,
                                     double timestamp) {
  config.validate();
  const auto labeling =
      filter_small_regions(label_regions(binarize(map, config.threshold), config.connectivity), config.min_region_fraction);
  return FrameFeatures{frame_index, timestamp, saliency_area(labeling), labeling.region_count()};
}

TrialFeatures aggregate_trial(std::string trial_id, std::vector<FrameFeatures> frames) {
  if (frames.empty()) throw Error(ErrorCode::EmptyTrial, "trial '" + trial_id + "' has no frames");
  double area = 0.0;
  double regions = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i > 0 && frames[i].frame_index <= frames[i - 1].frame_index) {
      throw Error(ErrorCode::InvalidArgument, "trial '" + trial_id + "': frame indices must be strictly increasing");
    }
    area += frames[i].saliency_area;
    regions += static_cast<double>(frames[i].region_count);
  }
  const double n = static_cast<double>(frames.size());
  TrialFeatures out;
  out.trial_id = std::move(trial_id);
  out.frames = std::move(frames);
  out.mean_saliency_area = area / n;
  out.mean_region_count = regions / n;
  return out;
}

}  // namespace salaffect
