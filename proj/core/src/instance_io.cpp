#include "kpotts/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kpotts {

std::vector<Edge> grid_edges(const GridShape& grid, Cost lambda) {
  std::vector<Edge> edges;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      const NodeId i = y * grid.width + x;
      if (x + 1 < grid.width) edges.push_back({i, i + 1, lambda});
      if (y + 1 < grid.height) edges.push_back({i, i + grid.width, lambda});
    }
  }
  return edges;
}

InstanceFile make_grid_file(GridShape grid, Label k, std::vector<Cost> unary, Cost lambda,
                            Cost scale) {
  if (grid.width <= 0 || grid.height <= 0) throw InvalidInstance("empty grid");
  InstanceFile f;
  f.instance = PottsInstance(grid.width * grid.height, k, std::move(unary),
                             grid_edges(grid, lambda));
  f.scale = scale;
  f.grid = grid;
  f.lambda = lambda;
  return f;
}

InstanceFile with_lambda(const InstanceFile& file, Cost lambda) {
  if (!file.grid || !file.lambda) throw InvalidInstance("instance has no uniform grid weight");
  const auto table = file.instance.unary_table();
  return make_grid_file(*file.grid, file.instance.label_count(), {table.begin(), table.end()},
                        lambda, file.scale);
}

InstanceFile rescale(const InstanceFile& file, Cost factor) {
  InstanceFile out = file;
  out.instance = scale_costs(file.instance, factor);
  out.scale = file.scale * factor;
  if (out.lambda) *out.lambda *= factor;
  return out;
}

void write_instance(std::ostream& out, const InstanceFile& file) {
  const PottsInstance& inst = file.instance;
  out << "kpotts-instance 1\n";
  out << "scale " << file.scale << "\n";
  out << "labels " << inst.label_count() << "\n";
  if (file.grid) {
    out << "grid " << file.grid->width << " " << file.grid->height << "\n";
  } else {
    out << "nodes " << inst.node_count() << "\n";
  }
  out << "unary\n";
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    const auto row = inst.unary_row(i);
    for (std::size_t a = 0; a < row.size(); ++a) out << (a ? " " : "") << row[a];
    out << "\n";
  }
  if (file.grid && file.lambda) {
    out << "lambda " << *file.lambda << "\n";
    return;
  }
  out << "edges " << inst.edges().size() << "\n";
  for (const Edge& e : inst.edges()) out << e.i << " " << e.j << " " << e.weight << "\n";
}

namespace {

// Tokenizer over non-comment content with line numbers for messages.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string word() {
    std::string w;
    if (!next(w)) fail("unexpected end of file");
    return w;
  }

  bool try_word(std::string& w) { return next(w); }

  void expect(const std::string& keyword) {
    const auto w = word();
    if (w != keyword) fail("expected '" + keyword + "', found '" + w + "'");
  }

  Cost integer() {
    const auto w = word();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size() || w.empty()) fail("expected an integer, found '" + w + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError("line " + std::to_string(line_) + ": " + what);
  }

 private:
  bool next(std::string& w) {
    while (true) {
      if (words_ >> w) return true;
      std::string text;
      if (!std::getline(in_, text)) return false;
      ++line_;
      if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
      words_.clear();
      words_.str(text);
    }
  }

  std::istream& in_;
  std::istringstream words_;
  int line_ = 0;
};

}  // namespace

InstanceFile read_instance(std::istream& in) {
  Reader r(in);
  r.expect("kpotts-instance");
  if (r.integer() != 1) r.fail("unsupported format version");
  InstanceFile f;
  r.expect("scale");
  f.scale = r.integer();
  if (f.scale <= 0) r.fail("scale must be positive");
  r.expect("labels");
  const Cost k = r.integer();
  if (k <= 0 || k > (1 << 20)) r.fail("label count out of range");

  const auto shape = r.word();
  Cost n = 0;
  if (shape == "nodes") {
    n = r.integer();
  } else if (shape == "grid") {
    const Cost w = r.integer();
    const Cost h = r.integer();
    if (w <= 0 || h <= 0 || w * h > (Cost{1} << 28)) r.fail("grid size out of range");
    f.grid = GridShape{static_cast<int>(w), static_cast<int>(h)};
    n = w * h;
  } else {
    r.fail("expected 'nodes' or 'grid', found '" + shape + "'");
  }
  if (n < 0 || n > (Cost{1} << 28) || n * k > (Cost{1} << 31)) r.fail("node count out of range");

  r.expect("unary");
  std::vector<Cost> unary(static_cast<std::size_t>(n * k));
  for (auto& v : unary) v = r.integer();

  std::vector<Edge> edges;
  const auto block = r.word();
  if (block == "lambda") {
    if (!f.grid) r.fail("'lambda' needs a grid");
    f.lambda = r.integer();
    edges = grid_edges(*f.grid, *f.lambda);
  } else if (block == "edges") {
    const Cost m = r.integer();
    if (m < 0 || m > (Cost{1} << 30)) r.fail("edge count out of range");
    edges.resize(static_cast<std::size_t>(m));
    for (auto& e : edges) {
      e.i = static_cast<NodeId>(r.integer());
      e.j = static_cast<NodeId>(r.integer());
      e.weight = r.integer();
    }
  } else {
    r.fail("expected 'lambda' or 'edges', found '" + block + "'");
  }
  std::string extra;
  if (r.try_word(extra)) r.fail("trailing content '" + extra + "'");

  try {
    f.instance = PottsInstance(static_cast<NodeId>(n), static_cast<Label>(k), std::move(unary),
                               std::move(edges));
  } catch (const InvalidInstance& e) {
    throw FormatError(std::string("invalid instance: ") + e.what());
  }
  return f;
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw FormatError("cannot write " + path);
  return out;
}

}  // namespace

void save_instance(const std::string& path, const InstanceFile& file) {
  auto out = open_out(path);
  write_instance(out, file);
}

InstanceFile load_instance(const std::string& path) {
  auto in = open_in(path);
  return read_instance(in);
}

void write_labeling(std::ostream& out, std::span<const Label> x) {
  for (Label a : x) out << a << "\n";
}

std::vector<Label> read_labeling(std::istream& in) {
  Reader r(in);
  std::vector<Label> x;
  std::string w;
  while (r.try_word(w)) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size() || v < kOutside) r.fail("bad label '" + w + "'");
    x.push_back(static_cast<Label>(v));
  }
  return x;
}

void save_labeling(const std::string& path, std::span<const Label> x) {
  auto out = open_out(path);
  write_labeling(out, x);
}

std::vector<Label> load_labeling(const std::string& path) {
  auto in = open_in(path);
  return read_labeling(in);
}

void write_pgm(std::ostream& out, std::span<const Label> x, GridShape grid, Label k) {
  if (x.size() != static_cast<std::size_t>(grid.width) * grid.height) {
    throw InvalidLabeling("labeling does not match the grid");
  }
  out << "P5\n" << grid.width << " " << grid.height << "\n255\n";
  for (Label a : x) {
    unsigned char v = 0;
    if (is_labeled(a)) v = static_cast<unsigned char>(k > 1 ? 32 + (223 * a) / (k - 1) : 255);
    out.put(static_cast<char>(v));
  }
}

void save_pgm(const std::string& path, std::span<const Label> x, GridShape grid, Label k) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  write_pgm(out, x, grid, k);
}

}  // namespace kpotts
