#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gssl/tensor.hpp"

namespace gssl {

// Flat named-tensor archive. On-disk layout, all integers little-endian:
//   magic "GSSL1"
//   u32 entry count
//   per entry: u32 name length, name bytes, u8 dtype tag (0 = f32),
//              u32 rank, u32 dims[rank], f32 payload
// Values are held as f32 internally so write -> read -> write is
// byte-identical.
class TensorArchive {
 public:
  struct Entry {
    std::string name;
    std::vector<int> shape;
    std::vector<float> values;
  };

  void add(const std::string& name, const Tensor& t);
  void add_scalars(const std::string& name, const std::vector<double>& values);

  bool has(const std::string& name) const;
  // Throws IoError if the entry is missing.
  Tensor get(const std::string& name) const;
  const std::vector<Entry>& entries() const { return entries_; }

  void save(const std::string& path) const;
  static TensorArchive load(const std::string& path);

  std::vector<uint8_t> serialize() const;
  static TensorArchive deserialize(const std::vector<uint8_t>& bytes, const std::string& origin = "<memory>");

 private:
  const Entry* find(const std::string& name) const;
  std::vector<Entry> entries_;
};

}  // namespace gssl
