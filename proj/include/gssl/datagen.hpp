#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gssl/tensor.hpp"

namespace gssl {

// Label value for pixels outside the defined class set. Such pixels are
// excluded from supervised losses but still participate in misclassification
// detection as forced-inaccurate pixels.
constexpr int kIgnoreLabel = 255;

struct ClassAppearance {
  double r = 0, g = 0, b = 0;  // base color in [0,1]
  double texture = 0;          // per-pixel texture noise amplitude in [0,1]
};

struct DomainShift {
  double hue = 0;          // rotation around the gray axis, radians
  double brightness = 0;   // additive offset in [-0.5, 0.5]
  double noise_sigma = 0;  // gaussian pixel noise in [0, 0.3]
};

struct DomainSpec {
  std::string domain_id;
  int num_classes = 6;  // K, includes background class 0
  std::vector<ClassAppearance> palette;
  DomainShift shift;
  double ood_rate = 0;  // probability a scene contains an undefined-class object
  uint64_t seed = 0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct LabeledSample {
  int height = 0, width = 0;
  Tensor image;                   // [H, W, 3], values in [0,1]
  std::vector<int> labels;        // H*W, class id or kIgnoreLabel
  std::vector<uint8_t> ood_mask;  // H*W, 1 where the pixel belongs to no known class
};

std::vector<ClassAppearance> default_palette(int num_classes);

// Built-in shift presets: "source", "near", "far".
DomainSpec domain_preset(const std::string& id, int num_classes = 6, uint64_t seed = 0);

// Sample i is a pure function of (spec, i); generation is order independent.
LabeledSample generate_sample(const DomainSpec& spec, uint64_t index, int image_size = 64);
std::vector<LabeledSample> generate_domain(const DomainSpec& spec, int count, int image_size = 64);

// Weighted euclidean distance over (hue, brightness, noise_sigma, ood_rate).
// Zero iff the shift parameters coincide.
double shift_distance(const DomainSpec& a, const DomainSpec& b);

struct DatasetInfo {
  std::string domain_id;
  int count = 0;
  int train_count = 0;
  int image_size = 0;
  int num_classes = 0;
};

// Datasets persist as a directory of per-sample tensor archives plus a
// manifest. Existing non-empty directories are rejected unless overwrite.
void save_dataset(const std::string& dir, const DomainSpec& spec, const std::vector<LabeledSample>& samples,
                  int train_count, bool overwrite);
DatasetInfo read_manifest(const std::string& dir);
std::vector<LabeledSample> load_dataset(const std::string& dir);

}  // namespace gssl
