#include "gssl/archive.hpp"

#include <cstring>
#include <fstream>

#include "gssl/errors.hpp"

namespace gssl {

namespace {

constexpr char kMagic[5] = {'G', 'S', 'S', 'L', '1'};

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

struct Reader {
  const std::vector<uint8_t>& buf;
  size_t pos = 0;
  std::string origin;

  void need(size_t n, const char* what) const {
    if (pos + n > buf.size())
      throw IoError(origin + ": truncated archive while reading " + what + " at byte " + std::to_string(pos));
  }
  uint8_t u8(const char* what) {
    need(1, what);
    return buf[pos++];
  }
  uint32_t u32(const char* what) {
    need(4, what);
    uint32_t v = static_cast<uint32_t>(buf[pos]) | (static_cast<uint32_t>(buf[pos + 1]) << 8) |
                 (static_cast<uint32_t>(buf[pos + 2]) << 16) | (static_cast<uint32_t>(buf[pos + 3]) << 24);
    pos += 4;
    return v;
  }
};

}  // namespace

const TensorArchive::Entry* TensorArchive::find(const std::string& name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

void TensorArchive::add(const std::string& name, const Tensor& t) {
  if (name.empty()) throw UsageError("archive entry name must be non-empty");
  if (find(name)) throw UsageError("archive entry name already present: " + name);
  Entry e;
  e.name = name;
  e.shape = t.shape();
  e.values.resize(static_cast<size_t>(t.numel()));
  for (int64_t i = 0; i < t.numel(); ++i) e.values[static_cast<size_t>(i)] = static_cast<float>(t[i]);
  entries_.push_back(std::move(e));
}

void TensorArchive::add_scalars(const std::string& name, const std::vector<double>& values) {
  add(name, Tensor({static_cast<int>(values.size())}, values));
}

bool TensorArchive::has(const std::string& name) const { return find(name) != nullptr; }

Tensor TensorArchive::get(const std::string& name) const {
  const Entry* e = find(name);
  if (!e) throw IoError("archive entry not found: " + name);
  Tensor t(e->shape);
  for (size_t i = 0; i < e->values.size(); ++i) t[static_cast<int64_t>(i)] = static_cast<double>(e->values[i]);
  return t;
}

std::vector<uint8_t> TensorArchive::serialize() const {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 5);
  put_u32(out, static_cast<uint32_t>(entries_.size()));
  for (const Entry& e : entries_) {
    put_u32(out, static_cast<uint32_t>(e.name.size()));
    out.insert(out.end(), e.name.begin(), e.name.end());
    out.push_back(0);  // dtype tag: f32
    put_u32(out, static_cast<uint32_t>(e.shape.size()));
    for (int d : e.shape) put_u32(out, static_cast<uint32_t>(d));
    const size_t byte_count = e.values.size() * sizeof(float);
    const size_t off = out.size();
    out.resize(off + byte_count);
    static_assert(sizeof(float) == 4);
    std::memcpy(out.data() + off, e.values.data(), byte_count);
  }
  return out;
}

TensorArchive TensorArchive::deserialize(const std::vector<uint8_t>& bytes, const std::string& origin) {
  Reader r{bytes, 0, origin};
  r.need(5, "magic");
  if (std::memcmp(bytes.data(), kMagic, 5) != 0) throw IoError(origin + ": bad magic, not a GSSL1 archive");
  r.pos = 5;
  const uint32_t count = r.u32("entry count");
  TensorArchive a;
  for (uint32_t i = 0; i < count; ++i) {
    Entry e;
    const uint32_t name_len = r.u32("name length");
    r.need(name_len, "name");
    e.name.assign(reinterpret_cast<const char*>(bytes.data() + r.pos), name_len);
    r.pos += name_len;
    const uint8_t dtype = r.u8("dtype tag");
    if (dtype != 0) throw IoError(origin + ": unsupported dtype tag " + std::to_string(dtype) + " in entry " + e.name);
    const uint32_t rank = r.u32("rank");
    int64_t n = 1;
    for (uint32_t d = 0; d < rank; ++d) {
      const uint32_t dim = r.u32("dim");
      e.shape.push_back(static_cast<int>(dim));
      n *= dim;
    }
    r.need(static_cast<size_t>(n) * sizeof(float), "payload");
    e.values.resize(static_cast<size_t>(n));
    std::memcpy(e.values.data(), bytes.data() + r.pos, static_cast<size_t>(n) * sizeof(float));
    r.pos += static_cast<size_t>(n) * sizeof(float);
    if (a.find(e.name)) throw IoError(origin + ": duplicate entry name " + e.name);
    a.entries_.push_back(std::move(e));
  }
  if (r.pos != bytes.size()) throw IoError(origin + ": trailing bytes after last entry");
  return a;
}

void TensorArchive::save(const std::string& path) const {
  const std::vector<uint8_t> bytes = serialize();
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path);
}

TensorArchive TensorArchive::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return deserialize(bytes, path);
}

}  // namespace gssl
