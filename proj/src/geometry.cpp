#include "steklov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/util.hpp"

namespace steklov {

namespace {

double cross2(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

double cell_area(const Mesh2D& mesh, const std::vector<int>& cell) {
  double area = 0.0;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const Point2& p = mesh.vertices[cell[i]];
    const Point2& q = mesh.vertices[cell[(i + 1) % cell.size()]];
    area += cross2(p, q);
  }
  return 0.5 * area;
}

bool lex_less(const Point2& p, const Point2& q) {
  if (p.y() < q.y() - 1e-14) return true;
  if (p.y() > q.y() + 1e-14) return false;
  return p.x() < q.x();
}

/// Walks the directed boundary edges (cell edges incident to exactly one cell)
/// into a single closed counterclockwise cycle, starting at the bottom-most
/// left-most boundary vertex for determinism.
std::vector<BoundaryEdge> chain_boundary(const Mesh2D& mesh) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& cell : mesh.cells) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      int a = cell[i], b = cell[(i + 1) % cell.size()];
      if (a > b) std::swap(a, b);
      count[{a, b}]++;
    }
  }
  std::map<int, int> next_vertex;
  for (const auto& cell : mesh.cells) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const int a = cell[i], b = cell[(i + 1) % cell.size()];
      const auto key = std::minmax(a, b);
      if (count[{key.first, key.second}] == 1) {
        if (next_vertex.count(a)) throw InvariantViolation("boundary: branching boundary chain");
        next_vertex[a] = b;
      }
    }
  }
  if (next_vertex.empty()) throw InvariantViolation("boundary: mesh has no boundary");
  int start = next_vertex.begin()->first;
  for (const auto& [v, w] : next_vertex) {
    if (lex_less(mesh.vertices[v], mesh.vertices[start])) start = v;
  }
  std::vector<BoundaryEdge> edges;
  double offset = 0.0;
  int v = start;
  do {
    auto it = next_vertex.find(v);
    if (it == next_vertex.end()) throw InvariantViolation("boundary: open boundary chain");
    BoundaryEdge e;
    e.v0 = v;
    e.v1 = it->second;
    const Point2 d = mesh.vertices[e.v1] - mesh.vertices[e.v0];
    e.length = d.norm();
    if (!(e.length > 0.0)) throw InvariantViolation("boundary: zero-length edge");
    const Point2 t = d / e.length;
    e.normal = Point2(t.y(), -t.x());  // clockwise rotation of the tangent
    e.offset = offset;
    offset += e.length;
    edges.push_back(e);
    v = e.v1;
  } while (v != start && edges.size() <= next_vertex.size());
  if (v != start || edges.size() != next_vertex.size()) {
    throw InvariantViolation("boundary: not a single closed cycle");
  }
  double area2 = 0.0;
  for (const auto& e : edges) area2 += cross2(mesh.vertices[e.v0], mesh.vertices[e.v1]);
  if (!(area2 > 0.0)) throw InvariantViolation("boundary: cycle not counterclockwise");
  return edges;
}

}  // namespace

BoundarySamples make_samples(std::shared_ptr<const BoundaryParam> param,
                             Eigen::VectorXd values) {
  if (!param) throw std::invalid_argument("make_samples: null boundary parameterization");
  if (static_cast<std::size_t>(values.size()) != param->n_nodes()) {
    throw std::invalid_argument("make_samples: values length must equal node count");
  }
  BoundarySamples s;
  s.param = std::move(param);
  s.values = values;
  return s;
}

DiskGeometry build_disk(double radius, int n_boundary_samples) {
  if (!(radius > 0.0)) throw std::invalid_argument("build_disk: radius must be positive");
  if (n_boundary_samples < 8) {
    throw std::invalid_argument("build_disk: need at least 8 boundary samples");
  }
  DiskGeometry g;
  g.domain.radius = radius;
  auto bp = std::make_shared<BoundaryParam>();
  const int m = n_boundary_samples;
  bp->total_length = 2.0 * M_PI * radius;
  bp->node_arclengths.resize(m);
  bp->node_weights.assign(m, bp->total_length / m);
  bp->node_positions.resize(m);
  bp->node_tangents.resize(m);
  bp->node_normals.resize(m);
  for (int i = 0; i < m; ++i) {
    const double theta = 2.0 * M_PI * i / m;
    bp->node_arclengths[i] = radius * theta;
    bp->node_positions[i] = g.domain.center + radius * Point2(std::cos(theta), std::sin(theta));
    bp->node_tangents[i] = Point2(-std::sin(theta), std::cos(theta));
    bp->node_normals[i] = Point2(std::cos(theta), std::sin(theta));
  }
  bp->side_ranges.push_back({0.0, bp->total_length});
  g.boundary = bp;
  return g;
}

void check_mesh_invariants(const Mesh2D& mesh) {
  for (const auto& cell : mesh.cells) {
    if (mesh.element_type == ElementType::p1_triangle && cell.size() != 3) {
      throw InvariantViolation("mesh: triangle cell without 3 vertices");
    }
    if (mesh.element_type == ElementType::c1_rectangle && cell.size() != 4) {
      throw InvariantViolation("mesh: rectangle cell without 4 vertices");
    }
    for (int v : cell) {
      if (v < 0 || static_cast<std::size_t>(v) >= mesh.vertices.size()) {
        throw InvariantViolation("mesh: cell vertex index out of range");
      }
    }
    if (!(cell_area(mesh, cell) > 0.0)) {
      throw InvariantViolation("mesh: degenerate or negatively oriented cell");
    }
    if (mesh.element_type == ElementType::c1_rectangle) {
      for (std::size_t i = 0; i < 4; ++i) {
        const Point2 d = mesh.vertices[cell[(i + 1) % 4]] - mesh.vertices[cell[i]];
        if (std::abs(d.x()) > 1e-12 && std::abs(d.y()) > 1e-12) {
          throw InvariantViolation("mesh: c1 rectangle not axis-aligned");
        }
      }
    }
  }
  std::map<std::pair<int, int>, int> count;
  for (const auto& cell : mesh.cells) {
    for (std::size_t i = 0; i < cell.size(); ++i) {
      int a = cell[i], b = cell[(i + 1) % cell.size()];
      if (a > b) std::swap(a, b);
      count[{a, b}]++;
    }
  }
  for (const auto& [e, c] : count) {
    if (c > 2) throw InvariantViolation("mesh: non-manifold edge");
  }
  for (const auto& be : mesh.boundary_edges) {
    int a = be.v0, b = be.v1;
    if (a > b) std::swap(a, b);
    auto it = count.find({a, b});
    if (it == count.end() || it->second != 1) {
      throw InvariantViolation("mesh: boundary edge not incident to exactly one cell");
    }
    if (std::abs(be.normal.norm() - 1.0) > 1e-12) {
      throw InvariantViolation("mesh: boundary normal not unit length");
    }
  }
  if (!mesh.boundary_edges.empty()) {
    double area2 = 0.0;
    for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
      const auto& e = mesh.boundary_edges[i];
      const auto& next = mesh.boundary_edges[(i + 1) % mesh.boundary_edges.size()];
      if (e.v1 != next.v0) throw InvariantViolation("mesh: boundary cycle not closed");
      area2 += cross2(mesh.vertices[e.v0], mesh.vertices[e.v1]);
    }
    if (!(area2 > 0.0)) throw InvariantViolation("mesh: boundary cycle not counterclockwise");
  }
}

std::shared_ptr<const BoundaryParam> derive_boundary(const Mesh2D& mesh, int nodes_per_edge) {
  if (nodes_per_edge < 1) throw std::invalid_argument("derive_boundary: nodes_per_edge < 1");
  const std::vector<BoundaryEdge> edges =
      mesh.boundary_edges.empty() ? chain_boundary(mesh) : mesh.boundary_edges;

  auto bp = std::make_shared<BoundaryParam>();
  bp->total_length = edges.back().offset + edges.back().length;

  const std::size_t ne = edges.size();
  for (std::size_t i = 0; i < ne; ++i) {
    const Point2& n0 = edges[(i + ne - 1) % ne].normal;
    const Point2& n1 = edges[i].normal;
    if (std::abs(cross2(n0, n1)) > 1e-9 || n0.dot(n1) < 0.0) {
      bp->vertex_positions.push_back(edges[i].offset);
    }
  }
  std::sort(bp->vertex_positions.begin(), bp->vertex_positions.end());
  if (!bp->vertex_positions.empty()) {
    for (std::size_t i = 0; i < bp->vertex_positions.size(); ++i) {
      const double a = bp->vertex_positions[i];
      const double b = (i + 1 < bp->vertex_positions.size())
                           ? bp->vertex_positions[i + 1]
                           : bp->total_length + bp->vertex_positions[0];
      bp->side_ranges.push_back({a, b});
    }
  } else {
    bp->side_ranges.push_back({0.0, bp->total_length});
  }

  const GaussRule& rule = gauss_rule(nodes_per_edge);
  for (std::size_t i = 0; i < ne; ++i) {
    const BoundaryEdge& e = edges[i];
    const Point2& a = mesh.vertices[e.v0];
    const Point2& b = mesh.vertices[e.v1];
    const Point2 t = (b - a) / e.length;
    for (int q = 0; q < nodes_per_edge; ++q) {
      const double s = rule.nodes[q];
      bp->node_arclengths.push_back(e.offset + s * e.length);
      bp->node_weights.push_back(rule.weights[q] * e.length);
      bp->node_positions.push_back(a + s * (b - a));
      bp->node_tangents.push_back(t);
      bp->node_normals.push_back(e.normal);
      bp->node_edge.push_back(static_cast<int>(i));
    }
  }
  return bp;
}

MeshGeometry build_rect_mesh(double lx, double ly, int nx, int ny, ElementType type) {
  if (!(lx > 0.0) || !(ly > 0.0)) {
    throw std::invalid_argument("build_rect_mesh: lengths must be positive");
  }
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_rect_mesh: need at least one subdivision");
  auto mesh = std::make_shared<Mesh2D>();
  mesh->element_type = type;
  const double hx = lx / nx, hy = ly / ny;
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      mesh->vertices.emplace_back(i * hx, j * hy);
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v11 = vid(i + 1, j + 1), v01 = vid(i, j + 1);
      if (type == ElementType::p1_triangle) {
        // consistent diagonal so dyadic refinements nest
        mesh->cells.push_back({v00, v10, v11});
        mesh->cells.push_back({v00, v11, v01});
      } else {
        mesh->cells.push_back({v00, v10, v11, v01});
      }
    }
  }
  mesh->boundary_edges = chain_boundary(*mesh);
  check_mesh_invariants(*mesh);
  return MeshGeometry{mesh, derive_boundary(*mesh)};
}

MeshGeometry build_polygon_disk_mesh(double radius, int refinement) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("build_polygon_disk_mesh: radius must be positive");
  }
  if (refinement < 1) {
    throw std::invalid_argument("build_polygon_disk_mesh: refinement must be >= 1");
  }
  const int sectors = 6;
  const int rings = 6 * refinement;
  auto mesh = std::make_shared<Mesh2D>();
  mesh->element_type = ElementType::p1_triangle;
  mesh->vertices.emplace_back(0.0, 0.0);
  std::vector<std::vector<int>> ring_ids(rings + 1);
  ring_ids[0] = {0};
  for (int i = 1; i <= rings; ++i) {
    const int m = sectors * i;
    const double r = radius * i / rings;
    ring_ids[i].resize(m);
    for (int j = 0; j < m; ++j) {
      const double theta = 2.0 * M_PI * j / m;
      ring_ids[i][j] = static_cast<int>(mesh->vertices.size());
      mesh->vertices.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
  }
  for (int i = 1; i <= rings; ++i) {
    const auto& inner = ring_ids[i - 1];
    const auto& outer = ring_ids[i];
    const int ni = static_cast<int>(inner.size());
    const int no = static_cast<int>(outer.size());
    if (i == 1) {
      for (int l = 0; l < no; ++l) {
        mesh->cells.push_back({inner[0], outer[l], outer[(l + 1) % no]});
      }
      continue;
    }
    int k = 0, l = 0;
    while (k < ni || l < no) {
      bool advance_outer;
      if (k == ni) {
        advance_outer = true;
      } else if (l == no) {
        advance_outer = false;
      } else {
        advance_outer = (static_cast<double>(l + 1) / no <= static_cast<double>(k + 1) / ni);
      }
      if (advance_outer) {
        mesh->cells.push_back({inner[k % ni], outer[l % no], outer[(l + 1) % no]});
        ++l;
      } else {
        mesh->cells.push_back({inner[k % ni], outer[l % no], inner[(k + 1) % ni]});
        ++k;
      }
    }
  }
  mesh->boundary_edges = chain_boundary(*mesh);
  check_mesh_invariants(*mesh);
  return MeshGeometry{mesh, derive_boundary(*mesh)};
}

Mesh2D load_mesh_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_mesh_json: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("load_mesh_json: parse error in " + path + ": " + e.what());
  }
  Mesh2D mesh;
  if (!j.contains("vertices") || !j.contains("cells") || !j.contains("element_type")) {
    throw std::invalid_argument("load_mesh_json: missing vertices/cells/element_type");
  }
  const std::string et = j["element_type"].get<std::string>();
  if (et == "p1") {
    mesh.element_type = ElementType::p1_triangle;
  } else if (et == "c1rect") {
    mesh.element_type = ElementType::c1_rectangle;
  } else {
    throw std::invalid_argument("load_mesh_json: unknown element_type " + et);
  }
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2) throw std::invalid_argument("load_mesh_json: bad vertex");
    mesh.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  for (const auto& c : j["cells"]) {
    std::vector<int> cell;
    for (const auto& idx : c) cell.push_back(idx.get<int>());
    mesh.cells.push_back(std::move(cell));
  }
  // boundary edges and normals are derived, never read from file
  mesh.boundary_edges = chain_boundary(mesh);
  check_mesh_invariants(mesh);
  return mesh;
}

void save_mesh_json(const Mesh2D& mesh, const std::string& path) {
  nlohmann::json j;
  j["element_type"] = (mesh.element_type == ElementType::p1_triangle) ? "p1" : "c1rect";
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices) j["vertices"].push_back({v.x(), v.y()});
  j["cells"] = mesh.cells;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_mesh_json: cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace steklov
