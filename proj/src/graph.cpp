#include "sgf/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "sgf/error.hpp"

namespace sgf {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_int(std::string_view tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

Graph::Graph(NodeId n, std::span<const Edge> edges) {
  if (n < 0) throw ValidationError("negative node count");
  adj_.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") has endpoint outside [0," + std::to_string(n) + ")");
    if (u == v) throw ValidationError("self-loop on node " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    edge_count_ += nb.size();
  }
  edge_count_ /= 2;
}

Graph Graph::from_adjacency(const RealMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("adjacency matrix is not square");
  const auto n = static_cast<NodeId>(a.rows());
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    if (a(i, i) != 0.0) throw ValidationError("adjacency has non-zero diagonal");
    for (NodeId j = i + 1; j < n; ++j) {
      const double x = a(i, j);
      if (x != a(j, i)) throw ValidationError("adjacency is not symmetric");
      if (x == 1.0)
        edges.emplace_back(i, j);
      else if (x != 0.0)
        throw ValidationError("adjacency entry is not 0/1");
    }
  }
  return Graph(n, edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& nb = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < size(); ++u)
    for (NodeId v : adj_[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  return out;
}

RealMatrix Graph::adjacency() const {
  RealMatrix a = RealMatrix::Zero(size(), size());
  for (NodeId u = 0; u < size(); ++u)
    for (NodeId v : adj_[static_cast<std::size_t>(u)]) a(u, v) = 1.0;
  return a;
}

Graph Graph::with_attribute(std::string name, std::vector<std::string> values) const {
  if (values.size() != adj_.size())
    throw ValidationError("attribute '" + name + "' has length " + std::to_string(values.size()) +
                          ", expected " + std::to_string(adj_.size()));
  Graph g = *this;
  g.attributes_[std::move(name)] = std::move(values);
  return g;
}

Graph Graph::with_attributes(std::map<std::string, std::vector<std::string>> attrs) const {
  for (const auto& [name, values] : attrs)
    if (values.size() != adj_.size())
      throw ValidationError("attribute '" + name + "' has wrong length");
  Graph g = *this;
  g.attributes_ = std::move(attrs);
  return g;
}

DegreeVector degree_vector(const Graph& g) {
  DegreeVector k;
  k.degrees.resize(static_cast<std::size_t>(g.size()));
  for (NodeId v = 0; v < g.size(); ++v) {
    k.degrees[static_cast<std::size_t>(v)] = static_cast<double>(g.degree(v));
    k.total += k.degrees[static_cast<std::size_t>(v)];
  }
  return k;
}

std::vector<double> local_clustering(const Graph& g) {
  std::vector<double> c(static_cast<std::size_t>(g.size()), 0.0);
  for (NodeId v = 0; v < g.size(); ++v) {
    const auto nb = g.neighbors(v);
    const std::size_t d = nb.size();
    if (d < 2) continue;
    std::size_t closed = 0;
    for (std::size_t a = 0; a < d; ++a) {
      // count |N(nb[a]) ∩ N(v)| restricted to later entries, by sorted merge
      const auto na = g.neighbors(nb[a]);
      auto it = std::upper_bound(nb.begin(), nb.end(), nb[a]);
      auto jt = std::upper_bound(na.begin(), na.end(), nb[a]);
      while (it != nb.end() && jt != na.end()) {
        if (*it < *jt) ++it;
        else if (*jt < *it) ++jt;
        else { ++closed; ++it; ++jt; }
      }
    }
    c[static_cast<std::size_t>(v)] =
        2.0 * static_cast<double>(closed) / (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return c;
}

double average_clustering(const Graph& g) {
  if (g.size() == 0) return 0.0;
  const auto c = local_clustering(g);
  double sum = 0.0;
  for (double x : c) sum += x;
  return sum / static_cast<double>(c.size());
}

Graph load_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  long long declared = -1;
  long long max_id = -1;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto toks = split_ws(line.substr(1));
      if (toks.size() == 2 && toks[0] == "nodes") {
        long long nn = 0;
        if (!parse_int(toks[1], nn) || nn < 0)
          throw ParseError(ln + 1, "invalid #nodes directive");
        declared = nn;
      }
      continue;
    }
    const auto toks = split_ws(line);
    long long u = 0, v = 0;
    if (toks.size() != 2 || !parse_int(toks[0], u) || !parse_int(toks[1], v))
      throw ParseError(ln + 1, "expected two integer node ids, got '" + std::string(line) + "'");
    if (u < 0 || v < 0) throw ParseError(ln + 1, "negative node id");
    if (u > INT32_MAX - 1 || v > INT32_MAX - 1) throw ParseError(ln + 1, "node id too large");
    if (u == v) throw ValidationError("self-loop at line " + std::to_string(ln + 1));
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (declared >= 0 && max_id >= declared)
    throw ValidationError("node id " + std::to_string(max_id) + " exceeds #nodes " +
                          std::to_string(declared));
  const auto n = declared >= 0 ? declared : max_id + 1;
  return Graph(static_cast<NodeId>(n), edges);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph load_edge_list_file(const std::string& path) { return load_edge_list(read_text_file(path)); }

std::string write_edge_list(const Graph& g) {
  std::string out = "#nodes " + std::to_string(g.size());
  for (auto [u, v] : g.edges()) {
    out += '\n';
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
  }
  return out;
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << write_edge_list(g) << '\n';
}

Graph load_attributes(std::string_view text, const Graph& g) {
  const auto lines = split_lines(text);
  std::size_t ln = 0;
  while (ln < lines.size() && trim(lines[ln]).empty()) ++ln;
  if (ln == lines.size()) throw ParseError(0, "attribute file is empty");

  auto split_csv = [](std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      auto end = line.find(',', start);
      if (end == std::string_view::npos) end = line.size();
      cells.emplace_back(trim(line.substr(start, end - start)));
      if (end == line.size()) break;
      start = end + 1;
    }
    return cells;
  };

  const auto header = split_csv(trim(lines[ln]));
  if (header.empty() || header[0] != "node")
    throw ParseError(ln + 1, "attribute header must start with 'node'");
  if (header.size() < 2) throw ParseError(ln + 1, "attribute header names no attributes");

  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::vector<std::string>> cols(header.size() - 1,
                                             std::vector<std::string>(n, std::string(kMissingAttribute)));
  std::vector<bool> seen(n, false);
  for (++ln; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ParseError(ln + 1, "expected " + std::to_string(header.size()) + " columns");
    long long id = 0;
    if (!parse_int(cells[0], id)) throw ParseError(ln + 1, "node id is not an integer");
    if (id < 0 || static_cast<std::size_t>(id) >= n)
      throw ValidationError("node " + std::to_string(id) + " out of range at line " +
                            std::to_string(ln + 1));
    if (seen[static_cast<std::size_t>(id)])
      throw ValidationError("duplicate row for node " + std::to_string(id) + " at line " +
                            std::to_string(ln + 1));
    seen[static_cast<std::size_t>(id)] = true;
    for (std::size_t c = 1; c < cells.size(); ++c) cols[c - 1][static_cast<std::size_t>(id)] = cells[c];
  }
  auto attrs = g.attributes();
  for (std::size_t c = 1; c < header.size(); ++c) attrs[header[c]] = std::move(cols[c - 1]);
  return g.with_attributes(std::move(attrs));
}

Graph load_attributes_file(const std::string& path, const Graph& g) {
  return load_attributes(read_text_file(path), g);
}

}  // namespace sgf
