#pragma once

#include "ngwp/datasets.hpp"
#include "ngwp/dictionary.hpp"
#include "ngwp/graph.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ngwp {

// Text formats. Node indices in CSV files are 1-based; everything in memory
// is 0-based.

/// Edge list `i,j,w` (the w column may be absent; it then defaults to 1).
struct EdgeList {
  std::vector<std::pair<Index, Index>> links;
  std::vector<double> weights;
};

EdgeList read_edge_csv(const std::filesystem::path& path);
void write_edge_csv(const std::filesystem::path& path, const Graph& g);

/// Coordinates `node,x,y`; rows may come in any order but must cover 1..N.
std::vector<Point2> read_coords_csv(const std::filesystem::path& path);
void write_coords_csv(const std::filesystem::path& path, const std::vector<Point2>& coords);

/// Graph from an edge CSV and optional coordinates CSV. Without coordinates
/// the node count is the largest index in the edge list.
Graph load_graph(const std::filesystem::path& edges,
                 const std::optional<std::filesystem::path>& coords = std::nullopt);

/// Road network ingestion: weights recomputed from coordinates, self-loops
/// dropped, duplicates collapsed.
Graph load_road_network(const std::filesystem::path& edges, const std::filesystem::path& coords);

/// One real per line.
Eigen::VectorXd read_signal_csv(const std::filesystem::path& path);
void write_signal_csv(const std::filesystem::path& path, const Eigen::VectorXd& f);

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

/// PGM images, ASCII (P2) and binary (P5), 8 or 16 bit.
ImageGrid read_pgm(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// Dictionary container:
//   "NGWPDICT" | u64 header length | JSON header | f64 payload | u32 CRC-32
// All integers and floats little-endian. The payload holds the blocks
// column-major in (level, position) order; the CRC covers every byte before it.

std::vector<std::uint8_t> serialize_dictionary(const PacketDictionary& dict);
PacketDictionary deserialize_dictionary(const std::vector<std::uint8_t>& bytes);

void save_dictionary(const std::filesystem::path& path, const PacketDictionary& dict);
PacketDictionary load_dictionary(const std::filesystem::path& path);

}  // namespace ngwp
