#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kpotts/potts.hpp"

namespace kpotts {

struct GridShape {
  int width = 0;
  int height = 0;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// 4-connected grid edges in row-major node order, all of weight `lambda`.
std::vector<Edge> grid_edges(const GridShape& grid, Cost lambda);

/// An instance together with its file metadata. Costs are stored as integers;
/// `scale` records how many integer units make one unit of the original cost.
struct InstanceFile {
  PottsInstance instance;
  Cost scale = 1;
  /// Node layout for image output. When `lambda` is also set the edges are
  /// exactly grid_edges(*grid, *lambda).
  std::optional<GridShape> grid;
  std::optional<Cost> lambda;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Wraps a grid instance with uniform weight lambda.
InstanceFile make_grid_file(GridShape grid, Label k, std::vector<Cost> unary, Cost lambda,
                            Cost scale = 1);

/// Replaces the uniform weight of a grid file. Throws InvalidInstance unless
/// the file has a uniform grid.
InstanceFile with_lambda(const InstanceFile& file, Cost lambda);

/// Multiplies all costs and the scale by `factor`.
InstanceFile rescale(const InstanceFile& file, Cost factor);

/// Line-oriented text format:
///
///   kpotts-instance 1
///   scale <s>
///   labels <k>
///   nodes <n>            or   grid <width> <height>
///   unary                     followed by one line of k costs per node
///   lambda <w>           or   edges <m>, followed by m lines "i j w"
///
/// '#' starts a comment. `lambda` is only valid after `grid`.
void write_instance(std::ostream& out, const InstanceFile& file);
InstanceFile read_instance(std::istream& in);
void save_instance(const std::string& path, const InstanceFile& file);
InstanceFile load_instance(const std::string& path);

/// One label per line; kOutside is written as -1.
void write_labeling(std::ostream& out, std::span<const Label> x);
std::vector<Label> read_labeling(std::istream& in);
void save_labeling(const std::string& path, std::span<const Label> x);
std::vector<Label> load_labeling(const std::string& path);

/// Binary 8-bit PGM (P5). Labels map linearly onto 32..255; kOutside is 0.
void write_pgm(std::ostream& out, std::span<const Label> x, GridShape grid, Label k);
void save_pgm(const std::string& path, std::span<const Label> x, GridShape grid, Label k);

}  // namespace kpotts
