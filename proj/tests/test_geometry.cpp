#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "steklov/geometry.hpp"
#include "steklov/util.hpp"

using namespace steklov;

namespace {

void check_param_invariants(const BoundaryParam& bp) {
  for (std::size_t i = 1; i < bp.n_nodes(); ++i) {
    CHECK(bp.node_arclengths[i] > bp.node_arclengths[i - 1]);
  }
  for (std::size_t i = 0; i < bp.n_nodes(); ++i) {
    CHECK(std::abs(bp.node_tangents[i].norm() - 1.0) <= 1e-12);
    CHECK(std::abs(bp.node_normals[i].norm() - 1.0) <= 1e-12);
    CHECK(std::abs(bp.node_tangents[i].dot(bp.node_normals[i])) <= 1e-12);
  }
}

Point2 weighted_normal_sum(const Mesh2D& mesh) {
  Point2 acc(0.0, 0.0);
  for (const auto& e : mesh.boundary_edges) acc += e.length * e.normal;
  return acc;
}

}  // namespace

TEST_CASE("disk boundary: circumference, radial normals, quadrature weights") {
  const DiskGeometry g = build_disk(1.0, 16);
  CHECK(std::abs(g.boundary->total_length - 2.0 * M_PI) <= 1e-12);
  double wsum = 0.0;
  for (double w : g.boundary->node_weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  for (std::size_t i = 0; i < g.boundary->n_nodes(); ++i) {
    const double theta = 2.0 * M_PI * static_cast<double>(i) / 16.0;
    CHECK(g.boundary->node_normals[i].x() == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(g.boundary->node_normals[i].y() == doctest::Approx(std::sin(theta)).epsilon(1e-12));
  }
  check_param_invariants(*g.boundary);
  CHECK(g.boundary->vertex_positions.empty());

  const DiskGeometry g2 = build_disk(2.0, 64);
  CHECK(std::abs(g2.boundary->total_length - 4.0 * M_PI) <= 1e-12);
}

TEST_CASE("disk boundary: invalid arguments") {
  CHECK_THROWS_AS(build_disk(0.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(build_disk(-1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(build_disk(1.0, 4), std::invalid_argument);
}

TEST_CASE("unit square: cells, boundary edges, perimeter") {
  const MeshGeometry g = build_rect_mesh(1.0, 1.0, 1, 1, ElementType::p1_triangle);
  CHECK(g.mesh->n_cells() == 2);
  CHECK(g.mesh->boundary_edges.size() == 4);
  CHECK(g.boundary->total_length == doctest::Approx(4.0).epsilon(1e-15));
  check_param_invariants(*g.boundary);

  const MeshGeometry q = build_rect_mesh(1.0, 1.0, 2, 2, ElementType::c1_rectangle);
  CHECK(q.mesh->n_cells() == 4);
  CHECK(q.mesh->boundary_edges.size() == 8);

  const MeshGeometry r = build_rect_mesh(2.0, 1.0, 4, 2, ElementType::p1_triangle);
  CHECK(weighted_normal_sum(*r.mesh).norm() <= 1e-12);
  CHECK(r.boundary->vertex_positions.size() == 4);
  CHECK(r.boundary->vertex_positions[0] == doctest::Approx(0.0));
  CHECK(r.boundary->vertex_positions[1] == doctest::Approx(2.0));
  CHECK(r.boundary->vertex_positions[2] == doctest::Approx(3.0));
  CHECK(r.boundary->vertex_positions[3] == doctest::Approx(5.0));
  CHECK(r.boundary->side_ranges.size() == 4);

  CHECK_THROWS_AS(build_rect_mesh(1.0, 1.0, 0, 1, ElementType::p1_triangle),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_rect_mesh(-1.0, 1.0, 1, 1, ElementType::p1_triangle),
                  std::invalid_argument);
}

TEST_CASE("side ranges of a rectangle add up to the exact perimeter") {
  const MeshGeometry g = build_rect_mesh(0.7, 1.3, 3, 5, ElementType::p1_triangle);
  double total = 0.0;
  for (const auto& [a, b] : g.boundary->side_ranges) total += b - a;
  CHECK(total == doctest::Approx(2.0 * (0.7 + 1.3)).epsilon(1e-14));
}

TEST_CASE("refinement keeps the rectangle perimeter fixed") {
  const double expected = 2.0 * (2.0 + 1.0);
  for (int n = 1; n <= 8; n *= 2) {
    const MeshGeometry g = build_rect_mesh(2.0, 1.0, 2 * n, n, ElementType::p1_triangle);
    CHECK(g.boundary->total_length == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("polygon disk: inscribed perimeter grows monotonically to 2 pi R") {
  double prev = 0.0;
  for (int r = 1; r <= 4; ++r) {
    const MeshGeometry g = build_polygon_disk_mesh(1.0, r);
    CHECK(g.boundary->total_length < 2.0 * M_PI);
    CHECK(g.boundary->total_length > prev);
    prev = g.boundary->total_length;
    CHECK(weighted_normal_sum(*g.mesh).norm() <= 1e-10);
  }
  // refinement 4: within half a percent of the circle
  CHECK(prev > 2.0 * M_PI * 0.995);
  CHECK_THROWS_AS(build_polygon_disk_mesh(1.0, 0), std::invalid_argument);
}

TEST_CASE("polygon disk: positive areas and valid invariants") {
  const MeshGeometry g = build_polygon_disk_mesh(1.0, 3);
  CHECK_NOTHROW(check_mesh_invariants(*g.mesh));
  for (const auto& cell : g.mesh->cells) {
    const Point2& a = g.mesh->vertices[cell[0]];
    const Point2& b = g.mesh->vertices[cell[1]];
    const Point2& c = g.mesh->vertices[cell[2]];
    const double area = 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
    CHECK(area > 0.0);
  }
  check_param_invariants(*g.boundary);
}

TEST_CASE("mesh json round trip and rejection of bad files") {
  const MeshGeometry g = build_rect_mesh(1.0, 2.0, 2, 3, ElementType::c1_rectangle);
  const std::string path = "mesh_roundtrip_test.json";
  save_mesh_json(*g.mesh, path);
  const Mesh2D loaded = load_mesh_json(path);
  REQUIRE(loaded.n_vertices() == g.mesh->n_vertices());
  REQUIRE(loaded.n_cells() == g.mesh->n_cells());
  CHECK(loaded.element_type == ElementType::c1_rectangle);
  for (std::size_t i = 0; i < loaded.n_vertices(); ++i) {
    CHECK((loaded.vertices[i] - g.mesh->vertices[i]).norm() <= 1e-15);
  }
  CHECK(loaded.boundary_edges.size() == g.mesh->boundary_edges.size());
  std::remove(path.c_str());

  std::ofstream bad("mesh_bad_test.json");
  bad << "{\"vertices\": [[0,0]]";
  bad.close();
  CHECK_THROWS_AS(load_mesh_json("mesh_bad_test.json"), std::invalid_argument);
  CHECK_THROWS_AS(load_mesh_json("no_such_file.json"), std::invalid_argument);
  std::remove("mesh_bad_test.json");
}

TEST_CASE("boundary samples must match the node count") {
  const DiskGeometry g = build_disk(1.0, 16);
  CHECK_THROWS_AS(make_samples(g.boundary, Eigen::VectorXd::Zero(5)), std::invalid_argument);
  const BoundarySamples s = make_samples(g.boundary, Eigen::VectorXd::Ones(16));
  CHECK(s.n_nodes() == 16);
}
