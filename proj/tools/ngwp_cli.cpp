#include "ngwp/approximation.hpp"
#include "ngwp/best_basis.hpp"
#include "ngwp/datasets.hpp"
#include "ngwp/error.hpp"
#include "ngwp/io.hpp"
#include "ngwp/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;
constexpr const char* kVersion = "ngwp 1.0";

struct DatasetArgs {
  std::string kind;
  long n = 0;
  double scale = 1.0;
  std::optional<fs::path> edges;
  std::optional<fs::path> coords;
  std::optional<double> radius;
  std::optional<fs::path> image;
  std::vector<double> window;
  fs::path out_dir = ".";
};

struct DictArgs {
  std::string kind = "vm";
  fs::path graph;
  std::optional<fs::path> coords;
  fs::path out;
  ngwp::BuildParams params;
  bool canonicalize = false;
};

struct AnalysisArgs {
  fs::path dict;
  fs::path signal;
  std::string cost = "l1";
  double cost_p = 1.0;
  std::vector<std::string> baselines;
  double max_fraction = 0.5;
  fs::path out_dir = ".";
};

struct DualArgs {
  fs::path graph;
  std::optional<fs::path> coords;
  fs::path out;
};

void check_readable(const fs::path& p) {
  if (!fs::exists(p)) throw ngwp::Error(ngwp::ErrorCode::Io, "no such file: " + p.string());
}

ngwp::Graph read_graph(const fs::path& edges, const std::optional<fs::path>& coords) {
  check_readable(edges);
  if (coords) check_readable(*coords);
  return ngwp::load_graph(edges, coords);
}

ngwp::CostFunction make_cost(const AnalysisArgs& a) {
  if (a.cost == "l1") return ngwp::CostFunction(1.0);
  return ngwp::CostFunction(a.cost_p);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ngwp::Error(ngwp::ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

nlohmann::json selection_report(const ngwp::BasisSelection& sel, const ngwp::CostFunction& cost) {
  nlohmann::json selected = nlohmann::json::array();
  for (const ngwp::NodeId& id : sel.node_ids) selected.push_back({id.level, id.position});
  return {{"version", kVersion}, {"selected", selected}, {"cost", sel.cost}, {"p", cost.p()}};
}

std::string coefficient_csv(const ngwp::BasisSelection& sel, const Eigen::VectorXd& c) {
  std::string out = "j,k,col,value\n";
  for (std::size_t i = 0; i < sel.labels.size(); ++i) {
    const auto& l = sel.labels[i];
    out += std::to_string(l.node.level) + "," + std::to_string(l.node.position) + "," +
           std::to_string(l.column) + "," + ngwp::format_double(c(static_cast<Eigen::Index>(i))) +
           "\n";
  }
  return out;
}

std::string curve_csv(const std::vector<ngwp::ErrorCurve>& curves) {
  std::string out = "fraction,error,label\n";
  for (const auto& curve : curves) {
    for (std::size_t i = 0; i < curve.fractions.size(); ++i) {
      out += ngwp::format_double(curve.fractions[i]) + "," + ngwp::format_double(curve.errors[i]) +
             "," + curve.label + "\n";
    }
  }
  return out;
}

ngwp::Graph dataset_graph(const DatasetArgs& a) {
  if (a.kind == "road") {
    if (!a.edges || !a.coords) {
      throw CLI::ValidationError("road", "needs --edges and --coords");
    }
    check_readable(*a.edges);
    check_readable(*a.coords);
    return ngwp::load_road_network(*a.edges, *a.coords);
  }
  if (a.n < 1) throw CLI::ValidationError("--n", "is required and must be positive");
  if (a.kind == "path") return ngwp::gen_path(a.n);
  return ngwp::gen_sunflower({static_cast<ngwp::Index>(a.n), a.scale});
}

int run_dataset(const DatasetArgs& a) {
  const ngwp::Graph g = dataset_graph(a);
  fs::create_directories(a.out_dir);
  ngwp::write_edge_csv(a.out_dir / "edges.csv", g);
  ngwp::write_coords_csv(a.out_dir / "coords.csv", g.coords());
  if (a.kind == "road") {
    ngwp::write_signal_csv(a.out_dir / "density.csv", ngwp::density_signal(g, a.radius));
  }
  if (a.image) {
    check_readable(*a.image);
    const ngwp::ImageGrid img = ngwp::read_pgm(*a.image);
    ngwp::ImageWindow win{0.0, 0.0, double(img.cols - 1), double(img.rows - 1)};
    if (!a.window.empty()) win = {a.window[0], a.window[1], a.window[2], a.window[3]};
    ngwp::write_signal_csv(a.out_dir / "signal.csv", ngwp::sample_image(g, img, win));
  }
  std::cout << "wrote " << g.num_nodes() << " nodes, " << g.num_edges() << " edges to "
            << a.out_dir.string() << "\n";
  return 0;
}

// Display ordering only: columns sorted by energy-center node index, then
// flipped so the largest-magnitude entry is positive. Spans are unchanged.
ngwp::PacketDictionary canonicalize(const ngwp::PacketDictionary& dict) {
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(dict.blocks().size());
  for (const Eigen::MatrixXd& b : dict.blocks()) {
    const Eigen::VectorXd pos = Eigen::VectorXd::LinSpaced(b.rows(), 0.0, double(b.rows() - 1));
    const Eigen::VectorXd center = b.array().square().matrix().transpose() * pos;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(b.cols()));
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = static_cast<Eigen::Index>(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return center(x) < center(y); });
    Eigen::MatrixXd sorted(b.rows(), b.cols());
    for (std::size_t c = 0; c < order.size(); ++c) sorted.col(Eigen::Index(c)) = b.col(order[c]);
    ngwp::apply_sign_convention(sorted);
    blocks.push_back(std::move(sorted));
  }
  return ngwp::PacketDictionary(dict.kind(), dict.tree(), std::move(blocks), dict.params(),
                                dict.node_sets());
}

int run_dict(const DictArgs& a) {
  const ngwp::DictionaryKind kind = ngwp::parse_dictionary_kind(a.kind);
  const ngwp::Graph g = read_graph(a.graph, a.coords);
  const ngwp::DualDomain domain = ngwp::build_dual_domain(g);
  ngwp::PacketDictionary dict = ngwp::build_dictionary(domain, kind, a.params);
  if (a.canonicalize) dict = canonicalize(dict);
  if (a.out.has_parent_path()) fs::create_directories(a.out.parent_path());
  ngwp::save_dictionary(a.out, dict);
  std::cout << "wrote " << ngwp::to_string(kind) << " dictionary with " << dict.blocks().size()
            << " blocks to " << a.out.string() << "\n";
  return 0;
}

struct Analysis {
  ngwp::PacketDictionary dict;
  Eigen::VectorXd f;
  ngwp::BasisSelection selection;
};

Analysis analyze_signal(const AnalysisArgs& a, const ngwp::CostFunction& cost) {
  check_readable(a.dict);
  check_readable(a.signal);
  ngwp::PacketDictionary dict = ngwp::load_dictionary(a.dict);
  Eigen::VectorXd f = ngwp::read_signal_csv(a.signal);
  if (f.size() != dict.dimension()) {
    throw ngwp::Error(ngwp::ErrorCode::DimensionMismatch,
                      "signal length " + std::to_string(f.size()) + " does not match dictionary size " +
                          std::to_string(dict.dimension()));
  }
  const ngwp::CoefficientTable table = ngwp::analyze(dict, f);
  ngwp::BasisSelection sel = ngwp::best_basis(dict, table, cost);
  return {std::move(dict), std::move(f), std::move(sel)};
}

int run_bestbasis(const AnalysisArgs& a) {
  const ngwp::CostFunction cost = make_cost(a);
  const Analysis r = analyze_signal(a, cost);
  fs::create_directories(a.out_dir);
  write_text(a.out_dir / "bestbasis.json", selection_report(r.selection, cost).dump(2) + "\n");
  write_text(a.out_dir / "coefficients.csv",
             coefficient_csv(r.selection, ngwp::coefficients(r.selection, r.f)));
  std::cout << "best basis: " << r.selection.nodes.size() << " blocks, cost "
            << ngwp::format_double(r.selection.cost) << "\n";
  return 0;
}

int run_approx(const AnalysisArgs& a) {
  const ngwp::CostFunction cost = make_cost(a);
  const Analysis r = analyze_signal(a, cost);
  std::optional<ngwp::BasisSelection> eigen;
  std::vector<ngwp::LabeledBasis> bases{{"bestbasis", &r.selection}};
  for (const std::string& b : a.baselines) {
    // The singleton leaves of either dictionary are the eigenvectors up to sign.
    if (b == "eigen" && !eigen) {
      eigen = ngwp::leaf_basis(r.dict);
      bases.push_back({"eigenbasis", &*eigen});
    }
  }
  const auto curves = ngwp::compare_bases(r.f, bases, nullptr, a.max_fraction);
  fs::create_directories(a.out_dir);
  write_text(a.out_dir / "curves.csv", curve_csv(curves));
  write_text(a.out_dir / "bestbasis.json", selection_report(r.selection, cost).dump(2) + "\n");
  std::cout << "wrote " << curves.size() << " curves to " << (a.out_dir / "curves.csv").string()
            << "\n";
  return 0;
}

int run_dump_dual(const DualArgs& a) {
  const ngwp::Graph g = read_graph(a.graph, a.coords);
  const ngwp::DualDomain domain = ngwp::build_dual_domain(g);
  if (a.out.has_parent_path()) fs::create_directories(a.out.parent_path());
  ngwp::write_matrix_csv(a.out, domain.dual.dist);
  std::cout << "wrote " << g.num_nodes() << "x" << g.num_nodes() << " DAG distances to "
            << a.out.string() << "\n";
  return 0;
}

void add_analysis_options(CLI::App* cmd, AnalysisArgs& a, bool with_curves) {
  cmd->add_option("--dict", a.dict, "dictionary file")->required();
  cmd->add_option("--signal", a.signal, "signal CSV, one value per line")->required();
  cmd->add_option("--cost", a.cost, "best-basis cost")
      ->check(CLI::IsMember({"l1", "lp"}))
      ->capture_default_str();
  cmd->add_option("--cost-p", a.cost_p, "exponent for --cost lp")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--out-dir", a.out_dir, "output directory")->capture_default_str();
  if (with_curves) {
    cmd->add_option("--baseline", a.baselines, "extra curves")->check(CLI::IsMember({"eigen"}));
    cmd->add_option("--max-fraction", a.max_fraction, "largest fraction of kept terms")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }
}

void add_build_options(CLI::App* cmd, ngwp::BuildParams& p) {
  cmd->add_option("--tol", p.tol, "varimax and MGSLp tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--maxit", p.maxit, "varimax iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--p", p.p, "MGSLp pivot exponent, 0 < p < 2")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural graph wavelet packet dictionaries"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  DatasetArgs dataset;
  auto* ds = app.add_subcommand("dataset", "write edge and coordinate CSVs of a built-in graph");
  ds->add_option("kind", dataset.kind, "path, sunflower, or road (cleans a road network)")
      ->required()
      ->check(CLI::IsMember({"path", "sunflower", "road"}));
  ds->add_option("--n", dataset.n, "number of nodes (path, sunflower)");
  ds->add_option("--scale", dataset.scale, "sunflower radius scale")->capture_default_str();
  ds->add_option("--edges", dataset.edges, "road: edge CSV");
  ds->add_option("--coords", dataset.coords, "road: coordinate CSV");
  ds->add_option("--radius", dataset.radius, "road: density disk radius (default longest edge)")
      ->check(CLI::NonNegativeNumber);
  ds->add_option("--image", dataset.image, "PGM image sampled at the nodes into signal.csv");
  ds->add_option("--window", dataset.window,
                 "pixel rectangle col_min row_min col_max row_max (default whole image)")
      ->expected(4);
  ds->add_option("--out-dir", dataset.out_dir, "output directory")->capture_default_str();

  DictArgs dict;
  auto* dc = app.add_subcommand("dict", "build a VM or PC dictionary");
  dc->add_option("--kind", dict.kind, "vm or pc")
      ->check(CLI::IsMember({"vm", "pc", "VM", "PC"}))
      ->capture_default_str();
  dc->add_option("--graph", dict.graph, "edge CSV")->required();
  dc->add_option("--coords", dict.coords, "coordinate CSV");
  dc->add_option("--out", dict.out, "dictionary file")->required();
  add_build_options(dc, dict.params);
  dc->add_flag("--canonicalize", dict.canonicalize,
               "sort block columns by energy center and fix their signs");

  AnalysisArgs bestbasis;
  auto* bb = app.add_subcommand("bestbasis", "select the best basis for a signal");
  add_analysis_options(bb, bestbasis, false);

  AnalysisArgs approx;
  auto* ap = app.add_subcommand("approx", "nonlinear approximation error curves");
  add_analysis_options(ap, approx, true);

  DualArgs dual;
  auto* dd = app.add_subcommand("dump-dual", "write the DAG distance matrix");
  dd->add_option("--graph", dual.graph, "edge CSV")->required();
  dd->add_option("--coords", dual.coords, "coordinate CSV");
  dd->add_option("--out", dual.out, "distance matrix CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ds) return run_dataset(dataset);
    if (*dc) {
      if (!(dict.params.p > 0.0 && dict.params.p < 2.0)) {
        throw CLI::ValidationError("--p", "must lie in (0, 2)");
      }
      return run_dict(dict);
    }
    if (*bb) return run_bestbasis(bestbasis);
    if (*ap) return run_approx(approx);
    return run_dump_dual(dual);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ngwp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numerical() ? kExitNumerical : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
