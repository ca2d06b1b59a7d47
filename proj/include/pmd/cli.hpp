#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmd/block_function.hpp"
#include "pmd/decomposition.hpp"
#include "pmd/document.hpp"
#include "pmd/error.hpp"
#include "pmd/filtration.hpp"
#include "pmd/geometric.hpp"
#include "pmd/io.hpp"
#include "pmd/matching.hpp"
#include "pmd/metric.hpp"
#include "pmd/svg.hpp"

namespace pmd::cli {

enum ExitCode : int {
  kOk = 0,
  kBoundExceeded = 1,
  kInputError = 2,
  kMappingError = 3,
  kInternalError = 4,
  kNotDecomposable = 5,
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::DuplicatePoint:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::SizeMismatch:
    case ErrorKind::EmptySubset:
    case ErrorKind::NegativeDelta:
      return kInputError;
    case ErrorKind::InvalidMapping:
    case ErrorKind::IndexOutOfRange:
      return kMappingError;
    case ErrorKind::NotInjectiveDecomposable:
      return kNotDecomposable;
    default:
      return kInternalError;
  }
}

// Triangle-inequality check is cubic; larger matrices are accepted unchecked.
inline constexpr std::size_t kTriangleCheckLimit = 500;

struct ComputeOptions {
  std::string domain;
  std::string codomain;
  std::string mapping;
  std::string out;
  bool distance_matrix = false;
  bool geometric = false;
  double tol = 0.0;
  std::vector<double> dump_graph;
};

struct LoadedInput {
  FiniteMetricSpace x;
  FiniteMetricSpace z;
  SetMapping m;
};

inline FiniteMetricSpace load_space(const std::string& path, bool distance_matrix,
                                    std::ostream& err, io::PointCloud* cloud) {
  const std::string content = io::read_file(path);
  if (distance_matrix) {
    auto space = io::parse_distance_matrix(content, path);
    if (space.size() <= kTriangleCheckLimit && !satisfies_triangle_inequality(space))
      err << "warning: " << path << " violates the triangle inequality\n";
    return space;
  }
  auto parsed = io::parse_points(content, path);
  if (parsed.points.empty()) throw Error(ErrorKind::Parse, path + ": no points");
  try {
    auto space = FiniteMetricSpace::from_points(parsed.points);
    if (cloud) *cloud = std::move(parsed);
    return space;
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

inline LoadedInput load_input(const ComputeOptions& opt, std::ostream& err) {
  io::PointCloud xc, zc;
  auto x = load_space(opt.domain, opt.distance_matrix, err, &xc);
  auto z = load_space(opt.codomain, opt.distance_matrix, err, &zc);
  if (!opt.mapping.empty()) {
    auto m = io::parse_mapping(io::read_file(opt.mapping), opt.mapping, x.size(), z.size());
    return {std::move(x), std::move(z), std::move(m)};
  }
  if (opt.distance_matrix)
    throw Error(ErrorKind::InvalidMapping, "--mapping is required with --distance-matrix");
  auto m = io::infer_mapping(xc, zc);
  return {std::move(x), std::move(z), std::move(m)};
}

inline DiagramDocument compute(const ComputeOptions& opt, std::ostream& err) {
  if (!(opt.tol >= 0.0)) throw Error(ErrorKind::Parse, "--tol must be >= 0");
  const auto in = load_input(opt, err);
  const Filtration fx(in.x, opt.tol), fz(in.z, opt.tol);
  const GeometricInput geo{in.x, fx, in.z, fz, in.m};
  if (opt.dump_graph.size() == 2) err << to_edge_list(build_G(geo, opt.dump_graph[0], opt.dump_graph[1]));
  const BlockFunction bf = opt.geometric ? block_function_geometric(geo) : block_function(fx, fz, in.m);
  return make_document(fx, fz, in.m, bf);
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Parse, "cannot write " + path);
  file << text;
}

inline DiagramDocument load_document(const std::string& path) {
  try {
    return from_json(io::read_file(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

inline std::string describe(const DiagramRep& r) {
  return "(" + io::format_double(r.a) + "," + io::format_double(r.b) + ")#" +
         std::to_string(r.copy);
}

inline std::string diff_report(const DeltaMatching& m) {
  std::string s = "delta " + io::format_double(m.delta) + "\n";
  for (const auto& [p, q] : m.pairs) s += "pair " + describe(p) + " " + describe(q) + "\n";
  for (const auto& p : m.unmatched_left) s += "unmatched-left " + describe(p) + "\n";
  for (const auto& q : m.unmatched_right) s += "unmatched-right " + describe(q) + "\n";
  return s;
}

inline std::string decomposition_listing(const LadderDecomposition& d) {
  std::string s;
  for (const auto& l : d.ladders)
    s += "kappa(" + io::format_double(l.a) + ") -> kappa(" + io::format_double(l.b) + ") x " +
         std::to_string(l.mult) + "\n";
  for (const auto& b : d.births_only)
    s += "0 -> kappa(" + io::format_double(b.b) + ") x " + std::to_string(b.mult) + "\n";
  if (d.has_infinite) s += "kappa(inf) -> kappa(inf)\n";
  return s;
}

inline LadderDecomposition decompose(const DiagramDocument& doc) {
  if (!doc.mapping_injective)
    throw Error(ErrorKind::NotInjectiveDecomposable, "the document's mapping is not injective");
  return ladder_decomposition(doc.block_function(), doc.domain_barcode, doc.codomain_barcode);
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent matching diagrams of set mappings between finite metric spaces", "pmd"};
  app.require_subcommand(1);

  ComputeOptions copt;
  auto* compute_cmd = app.add_subcommand("compute", "Compute the matching diagram document");
  compute_cmd->add_option("domain", copt.domain, "Domain file")->required();
  compute_cmd->add_option("codomain", copt.codomain, "Codomain file")->required();
  compute_cmd->add_option("--mapping", copt.mapping, "Mapping file with 'i j' lines");
  compute_cmd->add_option("--out", copt.out, "Output path (default: standard output)");
  compute_cmd->add_flag("--distance-matrix", copt.distance_matrix,
                        "Inputs are lower-triangle distance matrices");
  compute_cmd->add_flag("--geometric", copt.geometric, "Use the cycle-rank construction");
  compute_cmd->add_option("--tol", copt.tol, "Group deaths within this absolute tolerance");
  compute_cmd->add_option("--dump-graph", copt.dump_graph, "Write G at (a, b) to stderr")
      ->expected(2);

  std::string diff_a, diff_b;
  std::optional<double> bound;
  auto* diff_cmd = app.add_subcommand("diff", "Minimal matching distance between two documents");
  diff_cmd->add_option("doc1", diff_a)->required();
  diff_cmd->add_option("doc2", diff_b)->required();
  diff_cmd->add_option("--assert-bound", bound, "Exit 1 when delta exceeds this value");

  std::string plot_doc, plot_out, overlay;
  auto* plot_cmd = app.add_subcommand("plot", "Render a document's diagram as SVG");
  plot_cmd->add_option("doc", plot_doc)->required();
  plot_cmd->add_option("--out", plot_out, "SVG output path")->required();
  plot_cmd->add_option("--overlay", overlay, "Second document drawn in blue with a matching");

  std::string decompose_doc;
  auto* decompose_cmd = app.add_subcommand("decompose", "List the ladder decomposition");
  decompose_cmd->add_option("doc", decompose_doc)->required();

  std::vector<const char*> argv{"pmd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*compute_cmd) {
      write_text(copt.out, to_json(compute(copt, err)), out);
    } else if (*diff_cmd) {
      const auto d1 = load_document(diff_a), d2 = load_document(diff_b);
      const auto m = min_delta_matching(d1.diagram, d2.diagram);
      out << diff_report(m);
      if (bound && m.delta > *bound) {
        err << "delta " << io::format_double(m.delta) << " exceeds bound "
            << io::format_double(*bound) << "\n";
        return kBoundExceeded;
      }
    } else if (*plot_cmd) {
      const auto d = load_document(plot_doc);
      const std::string svg_text =
          overlay.empty() ? svg::render(d.diagram)
                          : svg::render_overlay(d.diagram, load_document(overlay).diagram);
      write_text(plot_out, svg_text, out);
    } else if (*decompose_cmd) {
      out << decomposition_listing(decompose(load_document(decompose_doc)));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
  return kOk;
}

}  // namespace pmd::cli
