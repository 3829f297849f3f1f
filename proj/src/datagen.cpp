#include "gssl/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gssl/archive.hpp"
#include "gssl/config.hpp"
#include "gssl/errors.hpp"
#include "gssl/rng.hpp"

namespace fs = std::filesystem;

namespace gssl {

namespace {

// Appearance family reserved for undefined-class objects: a coarse
// two-color checker never used by any known class.
constexpr ClassAppearance kOodColorA = {0.95, 0.08, 0.85, 0.08};
constexpr ClassAppearance kOodColorB = {0.30, 0.02, 0.35, 0.08};

struct Shape {
  enum Kind { kRect, kEllipse, kBand } kind;
  // rect/ellipse: center and half sizes; band: angle, offset, half width
  double cx, cy, ax, ay;
  double angle, offset, halfwidth;

  bool covers(int x, int y) const {
    switch (kind) {
      case kRect:
        return std::abs(x - cx) <= ax && std::abs(y - cy) <= ay;
      case kEllipse: {
        const double dx = (x - cx) / ax, dy = (y - cy) / ay;
        return dx * dx + dy * dy <= 1.0;
      }
      case kBand: {
        const double d = std::cos(angle) * x + std::sin(angle) * y - offset;
        return std::abs(d) <= halfwidth;
      }
    }
    return false;
  }
};

Shape random_known_shape(Rng& rng, int size) {
  Shape s{};
  const int kind = rng.uniform_int(3);
  if (kind == 2) {
    s.kind = Shape::kBand;
    s.angle = rng.uniform(0.0, 3.14159265358979323846);
    const double cx = rng.uniform(0.0, size - 1.0);
    const double cy = rng.uniform(0.0, size - 1.0);
    s.offset = std::cos(s.angle) * cx + std::sin(s.angle) * cy;
    s.halfwidth = rng.uniform(2.5, 7.0);
  } else {
    s.kind = kind == 0 ? Shape::kRect : Shape::kEllipse;
    s.cx = rng.uniform(4.0, size - 4.0);
    s.cy = rng.uniform(4.0, size - 4.0);
    s.ax = rng.uniform(4.0, size * 0.28);
    s.ay = rng.uniform(4.0, size * 0.28);
  }
  return s;
}

// Undefined-class objects are drawn last and kept fully inside the frame so
// every scene that contains one exposes at least one pixel of it.
Shape random_ood_shape(Rng& rng, int size) {
  Shape s{};
  s.kind = rng.uniform_int(2) == 0 ? Shape::kRect : Shape::kEllipse;
  s.ax = rng.uniform(4.0, size * 0.18);
  s.ay = rng.uniform(4.0, size * 0.18);
  s.cx = rng.uniform(s.ax, size - 1.0 - s.ax);
  s.cy = rng.uniform(s.ay, size - 1.0 - s.ay);
  return s;
}

struct HueMatrix {
  double m[3][3];
};

// Rotation of RGB space around the gray axis (1,1,1)/sqrt(3).
HueMatrix hue_rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  const double k = (1.0 - c) / 3.0;
  const double t = s / std::sqrt(3.0);
  HueMatrix h;
  h.m[0][0] = c + k;
  h.m[0][1] = k - t;
  h.m[0][2] = k + t;
  h.m[1][0] = k + t;
  h.m[1][1] = c + k;
  h.m[1][2] = k - t;
  h.m[2][0] = k - t;
  h.m[2][1] = k + t;
  h.m[2][2] = c + k;
  return h;
}

std::string sample_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "sample_%05d.gsslt", index);
  return buf;
}

}  // namespace

void DomainSpec::validate() const {
  if (num_classes < 2) throw ConfigError("domain " + domain_id + ": num_classes must be >= 2");
  if (static_cast<int>(palette.size()) != num_classes)
    throw ConfigError("domain " + domain_id + ": palette must have one entry per class");
  for (const ClassAppearance& a : palette) {
    if (a.r < 0 || a.r > 1 || a.g < 0 || a.g > 1 || a.b < 0 || a.b > 1)
      throw ConfigError("domain " + domain_id + ": palette base color out of [0,1]");
    if (a.texture < 0 || a.texture > 1)
      throw ConfigError("domain " + domain_id + ": palette texture out of [0,1]");
  }
  if (shift.brightness < -0.5 || shift.brightness > 0.5)
    throw ConfigError("domain " + domain_id + ": shift.brightness out of [-0.5,0.5]");
  if (shift.noise_sigma < 0 || shift.noise_sigma > 0.3)
    throw ConfigError("domain " + domain_id + ": shift.noise_sigma out of [0,0.3]");
  if (ood_rate < 0 || ood_rate > 1) throw ConfigError("domain " + domain_id + ": ood_rate out of [0,1]");
}

std::vector<ClassAppearance> default_palette(int num_classes) {
  static const ClassAppearance base[] = {
      {0.35, 0.35, 0.38, 0.06},  // background
      {0.85, 0.15, 0.15, 0.10},  // red
      {0.15, 0.75, 0.20, 0.08},  // green
      {0.15, 0.25, 0.85, 0.12},  // blue
      {0.90, 0.80, 0.15, 0.08},  // yellow
      {0.10, 0.80, 0.80, 0.10},  // cyan
      {0.95, 0.55, 0.10, 0.08},  // orange
      {0.60, 0.60, 0.25, 0.10},  // olive
  };
  std::vector<ClassAppearance> p;
  for (int i = 0; i < num_classes; ++i) p.push_back(base[i % 8]);
  return p;
}

DomainSpec domain_preset(const std::string& id, int num_classes, uint64_t seed) {
  DomainSpec spec;
  spec.domain_id = id;
  spec.num_classes = num_classes;
  spec.palette = default_palette(num_classes);
  spec.seed = seed;
  if (id == "source") {
    spec.shift = {0.0, 0.0, 0.02};
    spec.ood_rate = 0.0;
  } else if (id == "near") {
    spec.shift = {0.35, 0.08, 0.05};
    spec.ood_rate = 0.1;
  } else if (id == "far") {
    spec.shift = {1.2, -0.25, 0.12};
    spec.ood_rate = 0.5;
  } else {
    throw ConfigError("unknown domain preset: " + id);
  }
  return spec;
}

LabeledSample generate_sample(const DomainSpec& spec, uint64_t index, int image_size) {
  spec.validate();
  if (image_size < 16) throw ConfigError("image_size must be >= 16");

  Rng rng(spec.seed ^ hash_mix(index + 1));
  const int size = image_size;
  LabeledSample out;
  out.height = size;
  out.width = size;
  out.labels.assign(static_cast<size_t>(size) * size, 0);
  out.ood_mask.assign(static_cast<size_t>(size) * size, 0);
  out.image = Tensor({size, size, 3});

  // Scene: background plus 2..6 known-class objects, painter's order.
  const int num_objects = 2 + rng.uniform_int(5);
  for (int o = 0; o < num_objects; ++o) {
    const int cls = 1 + rng.uniform_int(spec.num_classes - 1);
    const Shape sh = random_known_shape(rng, size);
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x)
        if (sh.covers(x, y)) {
          out.labels[static_cast<size_t>(y) * size + x] = cls;
          out.ood_mask[static_cast<size_t>(y) * size + x] = 0;
        }
  }

  const bool has_ood = rng.uniform() < spec.ood_rate;
  if (has_ood) {
    const Shape sh = random_ood_shape(rng, size);
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x)
        if (sh.covers(x, y)) {
          out.labels[static_cast<size_t>(y) * size + x] = kIgnoreLabel;
          out.ood_mask[static_cast<size_t>(y) * size + x] = 1;
        }
  }

  // Appearance: base color + texture, then the domain's global shift.
  const HueMatrix hue = hue_rotation(spec.shift.hue);
  double* img = out.image.data();
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const size_t p = static_cast<size_t>(y) * size + x;
      const double tex_u = rng.uniform() - 0.5;
      const double n0 = rng.gaussian(), n1 = rng.gaussian(), n2 = rng.gaussian();
      ClassAppearance app;
      if (out.ood_mask[p]) {
        app = ((x / 3 + y / 3) % 2 == 0) ? kOodColorA : kOodColorB;
      } else {
        app = spec.palette[static_cast<size_t>(out.labels[p])];
      }
      double c[3] = {app.r + app.texture * tex_u, app.g + app.texture * tex_u, app.b + app.texture * tex_u};
      double rot[3];
      for (int i = 0; i < 3; ++i)
        rot[i] = hue.m[i][0] * c[0] + hue.m[i][1] * c[1] + hue.m[i][2] * c[2];
      const double noise[3] = {n0, n1, n2};
      for (int i = 0; i < 3; ++i) {
        double v = rot[i] + spec.shift.brightness + spec.shift.noise_sigma * noise[i];
        img[p * 3 + i] = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return out;
}

std::vector<LabeledSample> generate_domain(const DomainSpec& spec, int count, int image_size) {
  if (count < 1) throw ConfigError("generate_domain: count must be >= 1");
  spec.validate();
  std::vector<LabeledSample> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(generate_sample(spec, static_cast<uint64_t>(i), image_size));
  return out;
}

double shift_distance(const DomainSpec& a, const DomainSpec& b) {
  const double dh = a.shift.hue - b.shift.hue;
  const double db = a.shift.brightness - b.shift.brightness;
  const double dn = a.shift.noise_sigma - b.shift.noise_sigma;
  const double doo = a.ood_rate - b.ood_rate;
  return std::sqrt(0.5 * dh * dh + 2.0 * db * db + 5.0 * dn * dn + doo * doo);
}

void save_dataset(const std::string& dir, const DomainSpec& spec, const std::vector<LabeledSample>& samples,
                  int train_count, bool overwrite) {
  if (samples.empty()) throw UsageError("save_dataset: empty sample list");
  if (train_count < 0 || train_count > static_cast<int>(samples.size()))
    throw UsageError("save_dataset: train_count out of range");
  const fs::path root(dir);
  if (fs::exists(root) && !fs::is_empty(root)) {
    if (!overwrite) throw IoError("dataset directory exists and is not empty: " + dir + " (pass overwrite)");
    fs::remove_all(root);
  }
  fs::create_directories(root);

  const int size = samples.front().height;
  Config manifest;
  manifest.set("domain_id", spec.domain_id);
  manifest.set_int("count", static_cast<int64_t>(samples.size()));
  manifest.set_int("train_count", train_count);
  manifest.set_int("image_size", size);
  manifest.set_int("num_classes", spec.num_classes);
  manifest.set_num("shift.hue", spec.shift.hue);
  manifest.set_num("shift.brightness", spec.shift.brightness);
  manifest.set_num("shift.noise_sigma", spec.shift.noise_sigma);
  manifest.set_num("ood_rate", spec.ood_rate);
  manifest.set_int("seed", static_cast<int64_t>(spec.seed));
  manifest.save((root / "manifest.txt").string());

  for (size_t i = 0; i < samples.size(); ++i) {
    const LabeledSample& s = samples[i];
    TensorArchive a;
    a.add("image", s.image);
    std::vector<double> lab(s.labels.begin(), s.labels.end());
    a.add("labels", Tensor({s.height, s.width}, lab));
    std::vector<double> ood(s.ood_mask.begin(), s.ood_mask.end());
    a.add("ood_mask", Tensor({s.height, s.width}, ood));
    a.save((root / sample_file_name(static_cast<int>(i))).string());
  }
}

DatasetInfo read_manifest(const std::string& dir) {
  const fs::path path = fs::path(dir) / "manifest.txt";
  if (!fs::exists(path)) throw IoError("missing manifest: " + path.string());
  const Config m = Config::parse_file(path.string());
  m.validate_keys({"domain_id", "count", "train_count", "image_size", "num_classes", "shift.hue",
                   "shift.brightness", "shift.noise_sigma", "ood_rate", "seed"});
  DatasetInfo info;
  info.domain_id = m.get_str("domain_id");
  info.count = static_cast<int>(m.get_int("count"));
  info.train_count = static_cast<int>(m.get_int("train_count"));
  info.image_size = static_cast<int>(m.get_int("image_size"));
  info.num_classes = static_cast<int>(m.get_int("num_classes"));
  if (info.count < 1) throw IoError(path.string() + ": count must be >= 1");
  if (info.train_count < 0 || info.train_count > info.count)
    throw IoError(path.string() + ": train_count out of range");
  return info;
}

std::vector<LabeledSample> load_dataset(const std::string& dir) {
  const DatasetInfo info = read_manifest(dir);
  std::vector<LabeledSample> out;
  out.reserve(static_cast<size_t>(info.count));
  for (int i = 0; i < info.count; ++i) {
    const std::string file = (fs::path(dir) / sample_file_name(i)).string();
    const TensorArchive a = TensorArchive::load(file);
    LabeledSample s;
    s.image = a.get("image");
    if (s.image.rank() != 3 || s.image.dim(2) != 3) throw IoError(file + ": image must be HxWx3");
    s.height = s.image.dim(0);
    s.width = s.image.dim(1);
    const Tensor lab = a.get("labels");
    const Tensor ood = a.get("ood_mask");
    if (lab.numel() != s.image.dim(0) * s.image.dim(1) || ood.numel() != lab.numel())
      throw IoError(file + ": labels/ood_mask shape mismatch");
    s.labels.resize(static_cast<size_t>(lab.numel()));
    s.ood_mask.resize(static_cast<size_t>(ood.numel()));
    for (int64_t p = 0; p < lab.numel(); ++p) {
      s.labels[static_cast<size_t>(p)] = static_cast<int>(lab[p]);
      s.ood_mask[static_cast<size_t>(p)] = ood[p] != 0.0 ? 1 : 0;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gssl
