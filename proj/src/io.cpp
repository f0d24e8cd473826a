#include "penpc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "penpc/errors.hpp"

namespace penpc {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return in;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw io_error("failed writing " + path);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

int parse_index(const std::string& field, const std::string& path) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 0)
    throw io_error(path + ": bad vertex index '" + field + "'");
  return value;
}

double parse_real(const std::string& field, const std::string& path) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw io_error(path + ": bad number '" + field + "'");
  return value;
}

void expect_header(std::ifstream& in, const std::string& expected,
                   const std::string& path) {
  std::string line;
  if (!std::getline(in, line))
    throw io_error(path + ": missing header line");
  if (strip_cr(line) != expected)
    throw io_error(path + ": expected header '" + expected + "', got '" +
                   strip_cr(line) + "'");
}

std::vector<Edge> read_edge_rows(const std::string& path,
                                 const std::string& header, int& max_index) {
  auto in = open_in(path);
  expect_header(in, header, path);
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 2)
      throw io_error(path + ": expected two fields, got '" + line + "'");
    int a = parse_index(fields[0], path);
    int b = parse_index(fields[1], path);
    max_index = std::max({max_index, a, b});
    edges.emplace_back(a, b);
  }
  return edges;
}

int resolve_p(std::optional<int> requested, int max_index,
              const std::string& path) {
  int inferred = std::max(max_index + 1, 1);
  if (!requested) return inferred;
  if (*requested < inferred)
    throw io_error(path + ": vertex count " + std::to_string(*requested) +
                   " smaller than largest index used");
  return *requested;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw io_error("cannot format real value");
  return std::string(buf, ptr);
}

void write_directed_graph(const std::string& path, const DirectedGraph& g) {
  auto out = open_out(path);
  out << "from,to\n";
  for (const auto& [from, to] : g.edges()) out << from << ',' << to << '\n';
  finish_write(out, path);
}

DirectedGraph read_directed_graph(const std::string& path,
                                  std::optional<int> p) {
  int max_index = -1;
  std::vector<Edge> edges = read_edge_rows(path, "from,to", max_index);
  try {
    return DirectedGraph(resolve_p(p, max_index, path), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

void write_undirected_graph(const std::string& path,
                            const UndirectedGraph& g) {
  auto out = open_out(path);
  out << "a,b\n";
  for (const auto& [a, b] : g.edges()) out << a << ',' << b << '\n';
  finish_write(out, path);
}

UndirectedGraph read_undirected_graph(const std::string& path,
                                      std::optional<int> p) {
  int max_index = -1;
  std::vector<Edge> edges = read_edge_rows(path, "a,b", max_index);
  try {
    return UndirectedGraph(resolve_p(p, max_index, path), edges);
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

void write_data_csv(const std::string& path, const DataMatrix& d) {
  auto out = open_out(path);
  for (Eigen::Index j = 0; j < d.p(); ++j)
    out << (j == 0 ? "" : ",") << 'v' << j;
  out << '\n';
  for (Eigen::Index r = 0; r < d.n(); ++r) {
    for (Eigen::Index j = 0; j < d.p(); ++j) {
      if (j) out << ',';
      out << format_double(d.values(r, j));
    }
    out << '\n';
  }
  finish_write(out, path);
}

DataMatrix read_data_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw io_error(path + ": missing header line");
  auto header = split(strip_cr(line), ',');
  const std::size_t p = header.size();
  for (std::size_t j = 0; j < p; ++j)
    if (header[j] != "v" + std::to_string(j))
      throw io_error(path + ": expected column header v" + std::to_string(j) +
                     ", got '" + header[j] + "'");
  std::vector<double> cells;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != p)
      throw io_error(path + ": row with " + std::to_string(fields.size()) +
                     " fields, expected " + std::to_string(p));
    for (const auto& f : fields) cells.push_back(parse_real(f, path));
    ++rows;
  }
  if (rows == 0 || p == 0) throw io_error(path + ": no data rows");
  DataMatrix d;
  d.values.resize(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(p));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < p; ++j)
      d.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          cells[r * p + j];
  return d;
}

void write_sepsets_csv(const std::string& path, const SepSetMap& seps) {
  auto out = open_out(path);
  out << "i,j,sep\n";
  seps.for_each([&](int i, int j, const std::vector<int>& sep) {
    out << i << ',' << j << ',';
    for (std::size_t k = 0; k < sep.size(); ++k)
      out << (k == 0 ? "" : ";") << sep[k];
    out << '\n';
  });
  finish_write(out, path);
}

SepSetMap read_sepsets_csv(const std::string& path, std::optional<int> p) {
  auto in = open_in(path);
  expect_header(in, "i,j,sep", path);
  struct Row {
    int i, j;
    std::vector<int> sep;
  };
  std::vector<Row> rows;
  int max_index = -1;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 3)
      throw io_error(path + ": expected three fields, got '" + line + "'");
    Row row;
    row.i = parse_index(fields[0], path);
    row.j = parse_index(fields[1], path);
    max_index = std::max({max_index, row.i, row.j});
    if (!fields[2].empty()) {
      for (const auto& f : split(fields[2], ';')) {
        int v = parse_index(f, path);
        max_index = std::max(max_index, v);
        row.sep.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  int count = resolve_p(p, max_index, path);
  if (count < 2) count = 2;  // a pair needs at least two vertices
  SepSetMap seps(count);
  try {
    for (auto& row : rows) seps.set(row.i, row.j, std::move(row.sep));
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
  return seps;
}

void write_cpdag_csv(const std::string& path, const Cpdag& g) {
  auto out = open_out(path);
  out << "from,to,type\n";
  for (const auto& [from, to] : g.directed_edges())
    out << from << ',' << to << ",directed\n";
  for (const auto& [a, b] : g.undirected_edges())
    out << a << ',' << b << ",undirected\n";
  finish_write(out, path);
}

Cpdag read_cpdag_csv(const std::string& path, std::optional<int> p) {
  auto in = open_in(path);
  expect_header(in, "from,to,type", path);
  std::vector<Edge> directed;
  std::vector<Edge> undirected;
  int max_index = -1;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 3)
      throw io_error(path + ": expected three fields, got '" + line + "'");
    int a = parse_index(fields[0], path);
    int b = parse_index(fields[1], path);
    max_index = std::max({max_index, a, b});
    if (fields[2] == "directed")
      directed.emplace_back(a, b);
    else if (fields[2] == "undirected")
      undirected.emplace_back(a, b);
    else
      throw io_error(path + ": unknown edge type '" + fields[2] + "'");
  }
  try {
    return Cpdag(resolve_p(p, max_index, path), std::move(directed),
                 std::move(undirected));
  } catch (const std::invalid_argument& e) {
    throw io_error(path + ": " + e.what());
  }
}

}  // namespace penpc
