#include "hwcl/index_io.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <unordered_map>

namespace hwcl {

namespace {

constexpr std::array<char, 4> kMagic{'H', 'W', 'C', 'L'};
constexpr std::uint16_t kWideUnreachable = 0xFFFF;

class ByteWriter {
 public:
  explicit ByteWriter(std::size_t reserve) { bytes_.reserve(reserve); }

  void u8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void raw(const char* p, std::size_t len) { bytes_.append(p, len); }

  const std::string& bytes() const noexcept { return bytes_; }

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string bytes) : bytes_(std::move(bytes)) {}

  std::uint64_t offset() const noexcept { return pos_; }

  void need(std::uint64_t len, const char* what) const {
    const std::uint64_t available = bytes_.size() - pos_;
    if (available < len) {
      throw LoadError("truncated " + std::string(what) + ": expected " +
                          std::to_string(len) + " bytes, " +
                          std::to_string(available) + " available",
                      pos_);
    }
  }

  std::uint8_t u8(const char* what) { return static_cast<std::uint8_t>(get(1, what)); }
  std::uint16_t u16(const char* what) { return static_cast<std::uint16_t>(get(2, what)); }
  std::uint32_t u32(const char* what) { return static_cast<std::uint32_t>(get(4, what)); }
  std::uint64_t u64(const char* what) { return get(8, what); }

  bool at_end() const noexcept { return pos_ == bytes_.size(); }
  const char* data() const noexcept { return bytes_.data() + pos_; }
  void skip(std::size_t len) { pos_ += len; }

 private:
  std::uint64_t get(int width, const char* what) {
    need(static_cast<std::uint64_t>(width), what);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += static_cast<std::uint64_t>(width);
    return v;
  }

  std::string bytes_;
  std::uint64_t pos_ = 0;
};

void check_bounds(const HighwayCoverLabelling& labelling, const Highway& highway,
                  const IndexMetadata& meta, IndexFormat format) {
  const std::size_t k = highway.size();
  if (meta.landmark_original_ids.size() != k) {
    throw FormatError("metadata landmark count does not match highway");
  }
  if (meta.num_vertices != labelling.num_vertices()) {
    throw FormatError("metadata vertex count does not match labelling");
  }
  if (k > std::numeric_limits<std::uint16_t>::max()) {
    throw FormatError("k=" + std::to_string(k) + " exceeds 16-bit header field");
  }
  const bool compressed = format == IndexFormat::kCompressed;
  if (compressed && k > 255) {
    throw FormatError("compressed format supports at most 255 landmarks (k=" +
                      std::to_string(k) + ")");
  }
  const Hops max_cell = compressed ? kMaxLabelDistance : kWideUnreachable - 1;
  for (Hops d : highway.matrix()) {
    if (d != kInfinity && d > max_cell) {
      throw FormatError("highway distance " + std::to_string(d) +
                        " exceeds the format limit of " + std::to_string(max_cell));
    }
  }
  for (VertexId v = 0; v < labelling.num_vertices(); ++v) {
    auto label = labelling.label_unchecked(v);
    if (label.size() > 255) {
      throw FormatError("label of vertex " + std::to_string(v) +
                        " has more than 255 entries");
    }
    for (const LabelEntry& e : label) {
      if (e.distance > kMaxLabelDistance) {
        throw FormatError("label distance exceeds " +
                          std::to_string(kMaxLabelDistance));
      }
    }
  }
}

}  // namespace

IndexMetadata metadata_for(const Graph& g, const Highway& highway) {
  IndexMetadata meta;
  meta.num_vertices = g.num_vertices();
  for (VertexId r : highway.landmarks()) {
    meta.landmark_original_ids.push_back(g.original_id(r));
  }
  return meta;
}

Highway LoadedIndex::bind(const Graph& g) const {
  if (g.num_vertices() != metadata.num_vertices) {
    throw DomainError("graph has " + std::to_string(g.num_vertices()) +
                      " vertices but the index expects " +
                      std::to_string(metadata.num_vertices));
  }
  std::unordered_map<Graph::OriginalId, VertexId> wanted;
  for (Graph::OriginalId id : metadata.landmark_original_ids) wanted.emplace(id, 0);
  std::size_t resolved = 0;
  for (VertexId v = 0; v < g.num_vertices() && resolved < wanted.size(); ++v) {
    auto it = wanted.find(g.original_ids()[v]);
    if (it != wanted.end()) {
      it->second = v;
      ++resolved;
    }
  }
  if (resolved != wanted.size()) {
    throw DomainError("graph does not contain every landmark of the index");
  }
  std::vector<VertexId> landmarks;
  landmarks.reserve(wanted.size());
  for (Graph::OriginalId id : metadata.landmark_original_ids) {
    landmarks.push_back(wanted.at(id));
  }
  return Highway(std::move(landmarks), highway_matrix);
}

std::uint64_t index_byte_size(const HighwayCoverLabelling& labelling,
                              const Highway& highway, IndexFormat format) {
  const std::uint64_t k = highway.size();
  const std::uint64_t n = labelling.num_vertices();
  const std::uint64_t size = labelling.size();
  if (format == IndexFormat::kCompressed) {
    return kIndexHeaderBytes + 4 * k + k * k + n + 2 * size;
  }
  return kIndexHeaderBytes + 4 * k + 2 * k * k + n + 5 * size;
}

std::uint64_t save_index(const HighwayCoverLabelling& labelling,
                         const Highway& highway, const IndexMetadata& meta,
                         IndexFormat format, std::ostream& sink) {
  check_bounds(labelling, highway, meta, format);
  const bool compressed = format == IndexFormat::kCompressed;
  const std::size_t k = highway.size();

  ByteWriter w(index_byte_size(labelling, highway, format));
  w.raw(kMagic.data(), kMagic.size());
  w.u8(kIndexVersion);
  w.u8(static_cast<std::uint8_t>(format));
  w.u16(static_cast<std::uint16_t>(k));
  w.u64(meta.num_vertices);
  for (Graph::OriginalId id : meta.landmark_original_ids) w.u32(id);
  for (Hops d : highway.matrix()) {
    if (compressed) {
      w.u8(d == kInfinity ? kSentinel8 : static_cast<std::uint8_t>(d));
    } else {
      w.u16(d == kInfinity ? kWideUnreachable : static_cast<std::uint16_t>(d));
    }
  }
  for (VertexId v = 0; v < labelling.num_vertices(); ++v) {
    auto label = labelling.label_unchecked(v);
    w.u8(static_cast<std::uint8_t>(label.size()));
    for (const LabelEntry& e : label) {
      if (compressed) {
        w.u8(static_cast<std::uint8_t>(e.landmark_rank));
      } else {
        w.u32(meta.landmark_original_ids[e.landmark_rank]);
      }
      w.u8(e.distance);
    }
  }
  sink.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!sink) throw FormatError("failed to write index stream");
  return w.bytes().size();
}

LoadedIndex load_index(std::istream& source) {
  ByteReader r(std::string(std::istreambuf_iterator<char>(source), {}));

  r.need(kIndexHeaderBytes, "header");
  if (std::memcmp(r.data(), kMagic.data(), kMagic.size()) != 0) {
    throw LoadError("bad magic", 0);
  }
  r.skip(kMagic.size());
  const std::uint8_t version = r.u8("header");
  if (version != kIndexVersion) {
    throw LoadError("unsupported version " + std::to_string(version), 4);
  }
  const std::uint8_t flag = r.u8("header");
  if (flag > 1) throw LoadError("unknown format flag " + std::to_string(flag), 5);
  const auto format = static_cast<IndexFormat>(flag);
  const bool compressed = format == IndexFormat::kCompressed;
  const std::size_t k = r.u16("header");
  const std::uint64_t n = r.u64("header");

  LoadedIndex out;
  out.format = format;
  out.metadata.num_vertices = n;

  r.need(4 * static_cast<std::uint64_t>(k), "landmark ids");
  std::unordered_map<Graph::OriginalId, std::uint16_t> rank_of_id;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t at = r.offset();
    Graph::OriginalId id = r.u32("landmark ids");
    if (!rank_of_id.emplace(id, static_cast<std::uint16_t>(i)).second) {
      throw LoadError("duplicate landmark id " + std::to_string(id), at);
    }
    out.metadata.landmark_original_ids.push_back(id);
  }

  r.need(static_cast<std::uint64_t>(k) * k * (compressed ? 1 : 2), "highway matrix");
  out.highway_matrix.resize(k * k);
  for (std::size_t i = 0; i < k * k; ++i) {
    const std::uint64_t at = r.offset();
    Hops d;
    if (compressed) {
      std::uint8_t cell = r.u8("highway matrix");
      d = cell == kSentinel8 ? kInfinity : cell;
    } else {
      std::uint16_t cell = r.u16("highway matrix");
      d = cell == kWideUnreachable ? kInfinity : cell;
    }
    if ((i / k == i % k) != (d == 0)) {
      throw LoadError("highway diagonal must be zero and only the diagonal", at);
    }
    out.highway_matrix[i] = d;
  }

  // Each vertex needs at least its count byte.
  r.need(n, "labels");
  std::vector<std::uint64_t> offsets;
  offsets.reserve(n + 1);
  offsets.push_back(0);
  std::vector<LabelEntry> entries;
  const std::size_t entry_bytes = compressed ? 2 : 5;
  for (std::uint64_t v = 0; v < n; ++v) {
    const std::uint64_t count_at = r.offset();
    const std::size_t count = r.u8("labels");
    if (count > k) throw LoadError("label longer than k", count_at);
    r.need(count * entry_bytes, "label entries");
    int previous_rank = -1;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t at = r.offset();
      std::uint16_t rank;
      if (compressed) {
        rank = r.u8("label entries");
        if (rank >= k) throw LoadError("landmark rank out of range", at);
      } else {
        auto it = rank_of_id.find(r.u32("label entries"));
        if (it == rank_of_id.end()) throw LoadError("unknown landmark id", at);
        rank = it->second;
      }
      const std::uint8_t dist = r.u8("label entries");
      if (rank <= previous_rank) throw LoadError("label ranks not ascending", at);
      if (dist == 0 || dist > kMaxLabelDistance) {
        throw LoadError("label distance out of range", at);
      }
      previous_rank = rank;
      entries.push_back({rank, dist});
    }
    offsets.push_back(entries.size());
    if (v + 1 < n) r.need(n - v - 1, "labels");
  }
  if (!r.at_end()) throw LoadError("trailing bytes after index", r.offset());
  out.labelling = HighwayCoverLabelling(std::move(offsets), std::move(entries));
  return out;
}

}  // namespace hwcl
