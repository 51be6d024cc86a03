#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hwcl/graph.hpp"
#include "hwcl/labelling.hpp"

namespace hwcl {

enum class IndexFormat : std::uint8_t {
  kCompressed = 0,  // 8-bit landmark ranks, 8-bit highway cells
  kWide = 1,        // 32-bit landmark ids, 16-bit highway cells
};

/// Graph-side facts stored next to the labelling.
struct IndexMetadata {
  std::uint64_t num_vertices = 0;
  std::vector<Graph::OriginalId> landmark_original_ids;

  friend bool operator==(const IndexMetadata&, const IndexMetadata&) = default;
};

IndexMetadata metadata_for(const Graph& g, const Highway& highway);

/// A deserialized index. Landmarks are stored by original id, so the
/// highway is only materialized against the graph the index was built on.
struct LoadedIndex {
  HighwayCoverLabelling labelling;
  IndexMetadata metadata;
  std::vector<Hops> highway_matrix;  // row-major k*k
  IndexFormat format = IndexFormat::kCompressed;

  /// Resolves landmark original ids to dense ids of `g`. Throws DomainError
  /// if `g` has a different vertex count or lacks a landmark.
  Highway bind(const Graph& g) const;
};

inline constexpr std::uint8_t kIndexVersion = 1;
inline constexpr std::size_t kIndexHeaderBytes = 16;

/// Serializes to `sink`, returning the byte count. Bounds are checked
/// before anything is written, so a FormatError leaves `sink` untouched.
///
/// Layout (little-endian): "HWCL", version u8, format u8, k u16, n u64,
/// k landmark original ids (u32), k*k highway cells row-major (u8 with 255
/// as unreachable, or u16 with 0xFFFF), then per vertex a u8 entry count
/// followed by entries: (rank u8, dist u8) compressed, or (landmark
/// original id u32, dist u8) wide.
std::uint64_t save_index(const HighwayCoverLabelling& labelling,
                         const Highway& highway, const IndexMetadata& meta,
                         IndexFormat format, std::ostream& sink);

/// Inverse of save_index. Throws LoadError naming the failing offset.
LoadedIndex load_index(std::istream& source);

/// Byte length save_index produces for these inputs.
std::uint64_t index_byte_size(const HighwayCoverLabelling& labelling,
                              const Highway& highway, IndexFormat format);

}  // namespace hwcl
