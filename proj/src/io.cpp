#include "ngwp/io.hpp"

#include "ngwp/error.hpp"

#include <boost/crc.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ngwp {

namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'N', 'G', 'W', 'P', 'D', 'I', 'C', 'T'};
constexpr int kFormatVersion = 1;
constexpr double kLoadOrthonormalTol = 1e-8;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Non-empty lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> lines_of(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (!t.empty()) out.emplace_back(number, std::move(t));
  }
  return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& what) {
  throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    parse_fail(path, line, "expected a finite number, got '" + s + "'");
  }
  return v;
}

Index parse_index(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
    parse_fail(path, line, "expected a 1-based node index, got '" + s + "'");
  }
  return static_cast<Index>(v - 1);
}

void expect_header(const std::vector<std::pair<std::size_t, std::string>>& lines,
                   const std::filesystem::path& path,
                   const std::vector<std::vector<std::string>>& accepted) {
  if (lines.empty()) parse_fail(path, 1, "file is empty");
  const auto fields = split_fields(lines.front().second);
  if (std::find(accepted.begin(), accepted.end(), fields) == accepted.end()) {
    parse_fail(path, lines.front().first, "unexpected header '" + lines.front().second + "'");
  }
}

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
  }
}

template <typename T>
T get_le(const std::uint8_t* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) bits |= static_cast<U>(p[b]) << (8 * b);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t n) {
  boost::crc_32_type crc;
  crc.process_bytes(data, n);
  return crc.checksum();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

EdgeList read_edge_csv(const std::filesystem::path& path) {
  const auto lines = lines_of(read_text(path));
  expect_header(lines, path, {{"i", "j", "w"}, {"i", "j"}});
  const std::size_t width = split_fields(lines.front().second).size();
  EdgeList list;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [number, line] = lines[k];
    const auto f = split_fields(line);
    if (f.size() != width) parse_fail(path, number, "expected " + std::to_string(width) + " fields");
    list.links.emplace_back(parse_index(f[0], path, number), parse_index(f[1], path, number));
    list.weights.push_back(width == 3 ? parse_double(f[2], path, number) : 1.0);
  }
  return list;
}

void write_edge_csv(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  out << "i,j,w\n";
  for (const Edge& e : g.edges()) {
    out << e.i + 1 << ',' << e.j + 1 << ',' << format_double(e.w) << '\n';
  }
}

std::vector<Point2> read_coords_csv(const std::filesystem::path& path) {
  const auto lines = lines_of(read_text(path));
  expect_header(lines, path, {{"node", "x", "y"}});
  const std::size_t n = lines.size() - 1;
  std::vector<Point2> coords(n);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [number, line] = lines[k];
    const auto f = split_fields(line);
    if (f.size() != 3) parse_fail(path, number, "expected 3 fields");
    const Index node = parse_index(f[0], path, number);
    if (node >= static_cast<Index>(n) || seen[node]) {
      parse_fail(path, number, "node ids must be exactly 1.." + std::to_string(n));
    }
    seen[node] = true;
    coords[node] = {parse_double(f[1], path, number), parse_double(f[2], path, number)};
  }
  return coords;
}

void write_coords_csv(const std::filesystem::path& path, const std::vector<Point2>& coords) {
  auto out = open_out(path);
  out << "node,x,y\n";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out << i + 1 << ',' << format_double(coords[i].x) << ',' << format_double(coords[i].y) << '\n';
  }
}

Graph load_graph(const std::filesystem::path& edges,
                 const std::optional<std::filesystem::path>& coords) {
  const EdgeList list = read_edge_csv(edges);
  std::vector<Point2> pts;
  Index n = 0;
  if (coords) {
    pts = read_coords_csv(*coords);
    n = static_cast<Index>(pts.size());
  } else {
    for (const auto& [a, b] : list.links) n = std::max({n, a + 1, b + 1});
  }
  std::vector<Edge> out;
  out.reserve(list.links.size());
  for (std::size_t k = 0; k < list.links.size(); ++k) {
    out.push_back({list.links[k].first, list.links[k].second, list.weights[k]});
  }
  return Graph(n, std::move(out), std::move(pts));
}

Graph load_road_network(const std::filesystem::path& edges, const std::filesystem::path& coords) {
  return road_network(read_coords_csv(coords), read_edge_csv(edges).links);
}

Eigen::VectorXd read_signal_csv(const std::filesystem::path& path) {
  const auto lines = lines_of(read_text(path));
  Eigen::VectorXd f(static_cast<Index>(lines.size()));
  for (std::size_t k = 0; k < lines.size(); ++k) {
    f(static_cast<Index>(k)) = parse_double(lines[k].second, path, lines[k].first);
  }
  return f;
}

void write_signal_csv(const std::filesystem::path& path, const Eigen::VectorXd& f) {
  auto out = open_out(path);
  for (Index i = 0; i < f.size(); ++i) out << format_double(f(i)) << '\n';
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

ImageGrid read_pgm(const std::filesystem::path& path) {
  const std::string data = read_text(path);
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string {
    while (pos < data.size()) {
      if (data[pos] == '#') {
        while (pos < data.size() && data[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(data[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t start = pos;
    while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
    if (start == pos) throw Error(ErrorCode::Parse, path.string() + ": truncated PGM header");
    return data.substr(start, pos - start);
  };
  auto next_int = [&]() {
    const std::string t = next_token();
    long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || v < 0) {
      throw Error(ErrorCode::Parse, path.string() + ": bad PGM integer '" + t + "'");
    }
    return v;
  };

  const std::string magic = next_token();
  if (magic != "P2" && magic != "P5") {
    throw Error(ErrorCode::Parse, path.string() + ": not a P2/P5 PGM file");
  }
  ImageGrid img;
  img.cols = next_int();
  img.rows = next_int();
  const long maxval = next_int();
  if (img.cols < 1 || img.rows < 1 || maxval < 1 || maxval > 65535) {
    throw Error(ErrorCode::Parse, path.string() + ": bad PGM dimensions or maxval");
  }
  const auto count = static_cast<std::size_t>(img.rows * img.cols);
  img.pixels.reserve(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) img.pixels.push_back(static_cast<double>(next_int()));
  } else {
    ++pos;  // single whitespace byte after maxval
    const std::size_t bytes = maxval < 256 ? 1 : 2;
    if (data.size() < pos + count * bytes) {
      throw Error(ErrorCode::Parse, path.string() + ": truncated PGM raster");
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(data.data() + pos + i * bytes);
      img.pixels.push_back(bytes == 1 ? p[0] : (p[0] << 8) | p[1]);
    }
  }
  return img;
}

std::vector<std::uint8_t> serialize_dictionary(const PacketDictionary& dict) {
  const auto& nodes = dict.tree().nodes();
  json tree = json::array();
  std::size_t values = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    tree.push_back({{"j", nodes[i].id.level},
                    {"k", nodes[i].id.position},
                    {"members", nodes[i].members}});
    values += static_cast<std::size_t>(dict.block(i).size());
  }
  json header = {
      {"format", "ngwp-dictionary"},
      {"version", kFormatVersion},
      {"N", dict.dimension()},
      {"kind", to_string(dict.kind())},
      {"params", {{"tol", dict.params().tol}, {"maxit", dict.params().maxit}, {"p", dict.params().p}}},
      {"tree", std::move(tree)},
      {"payload_values", values},
  };
  if (dict.node_sets()) header["node_sets"] = *dict.node_sets();
  const std::string text = header.dump();

  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le<std::uint64_t>(out, text.size());
  out.insert(out.end(), text.begin(), text.end());
  out.reserve(out.size() + values * 8 + 4);
  for (const auto& b : dict.blocks()) {
    for (Index i = 0; i < b.size(); ++i) put_le<double>(out, b.data()[i]);
  }
  put_le<std::uint32_t>(out, crc32_of(out.data(), out.size()));
  return out;
}

PacketDictionary deserialize_dictionary(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof(kMagic) + 8 + 4 ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::Parse, "not an NGWP dictionary file");
  }
  const std::size_t body = bytes.size() - 4;
  if (crc32_of(bytes.data(), body) != get_le<std::uint32_t>(bytes.data() + body)) {
    throw Error(ErrorCode::Checksum, "dictionary checksum mismatch");
  }
  const auto header_len = get_le<std::uint64_t>(bytes.data() + sizeof(kMagic));
  const std::size_t header_at = sizeof(kMagic) + 8;
  if (header_len > body - header_at) throw Error(ErrorCode::Parse, "dictionary header truncated");

  json header;
  try {
    header = json::parse(bytes.begin() + static_cast<std::ptrdiff_t>(header_at),
                         bytes.begin() + static_cast<std::ptrdiff_t>(header_at + header_len));
    if (header.at("format") != "ngwp-dictionary" || header.at("version") != kFormatVersion) {
      throw Error(ErrorCode::Parse, "unsupported dictionary format");
    }
    const auto n = header.at("N").get<Index>();
    const DictionaryKind kind = parse_dictionary_kind(header.at("kind").get<std::string>());
    const auto& p = header.at("params");
    const BuildParams params{p.at("tol").get<double>(), p.at("maxit").get<int>(),
                             p.at("p").get<double>()};

    std::vector<std::pair<NodeId, std::vector<Index>>> records;
    for (const auto& rec : header.at("tree")) {
      records.emplace_back(NodeId{rec.at("j").get<int>(), rec.at("k").get<std::int64_t>()},
                           rec.at("members").get<std::vector<Index>>());
    }
    BipartitionTree tree = BipartitionTree::from_records(std::move(records));
    const auto& nodes = tree.nodes();

    std::size_t at = header_at + header_len;
    const std::size_t expected = header.at("payload_values").get<std::size_t>();
    if (body - at != expected * 8) throw Error(ErrorCode::Parse, "dictionary payload size mismatch");
    std::vector<Eigen::MatrixXd> blocks;
    blocks.reserve(nodes.size());
    for (const TreeNode& node : nodes) {
      Eigen::MatrixXd b(n, node.size());
      if (at + static_cast<std::size_t>(b.size()) * 8 > body) {
        throw Error(ErrorCode::Parse, "dictionary payload truncated");
      }
      for (Index i = 0; i < b.size(); ++i, at += 8) b.data()[i] = get_le<double>(bytes.data() + at);
      blocks.push_back(std::move(b));
    }
    std::optional<std::vector<std::vector<Index>>> node_sets;
    if (header.contains("node_sets")) {
      node_sets = header.at("node_sets").get<std::vector<std::vector<Index>>>();
    }
    PacketDictionary dict(kind, std::move(tree), std::move(blocks), params, std::move(node_sets));
    if (dict.max_orthonormality_defect() > kLoadOrthonormalTol) {
      throw Error(ErrorCode::Parse, "dictionary blocks are not orthonormal");
    }
    return dict;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed dictionary header: ") + e.what());
  }
}

void save_dictionary(const std::filesystem::path& path, const PacketDictionary& dict) {
  const auto bytes = serialize_dictionary(dict);
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

PacketDictionary load_dictionary(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return deserialize_dictionary(std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace ngwp
