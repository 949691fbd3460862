#pragma once

#include <Eigen/Core>
#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

using Point2 = Eigen::Vector2d;

/// Analytic disk; never meshed, so disk spectra carry no discretization error.
struct DiskDomain {
  double radius{1.0};
  Point2 center{0.0, 0.0};
};

enum class ElementType { p1_triangle, c1_rectangle };

struct BoundaryEdge {
  int v0{-1};
  int v1{-1};
  Point2 normal{0.0, 0.0};   // outward unit normal (constant along the edge)
  double offset{0.0};        // arclength of v0 along the boundary cycle
  double length{0.0};
};

/// Planar mesh with an oriented (counterclockwise) boundary cycle.
/// Triangles carry 3 vertex indices, rectangles 4 (counterclockwise).
struct Mesh2D {
  std::vector<Point2> vertices;
  std::vector<std::vector<int>> cells;
  std::vector<BoundaryEdge> boundary_edges;
  ElementType element_type{ElementType::p1_triangle};

  std::size_t n_vertices() const { return vertices.size(); }
  std::size_t n_cells() const { return cells.size(); }
};

/// Arclength parameterization of a domain boundary with quadrature nodes.
/// Nodes sit strictly inside edges on polygons; corners carry no normal.
struct BoundaryParam {
  double total_length{0.0};
  std::vector<double> node_arclengths;             // strictly increasing in [0, L)
  std::vector<double> node_weights;                // positive quadrature weights
  std::vector<Point2> node_positions;
  std::vector<Point2> node_tangents;               // unit, positively oriented
  std::vector<Point2> node_normals;                // unit, outward
  std::vector<double> vertex_positions;            // polygon corner arclengths
  std::vector<std::pair<double, double>> side_ranges;  // arclength interval per side
  // for mesh boundaries: index of the boundary edge each node lies on
  std::vector<int> node_edge;

  std::size_t n_nodes() const { return node_arclengths.size(); }
};

/// Function on the boundary sampled at the parameterization's quadrature nodes.
/// One column for scalar data, two for tangent-plane vector fields.
struct BoundarySamples {
  std::shared_ptr<const BoundaryParam> param;
  Eigen::MatrixXd values;  // n_nodes x n_components

  std::size_t n_nodes() const { return param ? param->n_nodes() : 0; }
};

BoundarySamples make_samples(std::shared_ptr<const BoundaryParam> param,
                             Eigen::VectorXd values);

struct DiskGeometry {
  DiskDomain domain;
  std::shared_ptr<const BoundaryParam> boundary;
};

struct MeshGeometry {
  std::shared_ptr<const Mesh2D> mesh;
  std::shared_ptr<const BoundaryParam> boundary;
};

/// Disk of radius R with n uniformly spaced boundary quadrature nodes.
DiskGeometry build_disk(double radius, int n_boundary_samples);

/// Tensor grid on [0,lx]x[0,ly]; each rectangle split into two triangles for P1.
MeshGeometry build_rect_mesh(double lx, double ly, int nx, int ny, ElementType type);

/// Triangulated regular polygon inscribed in the circle of radius R, built in
/// concentric rings so triangle quality is bounded; the polygon refines towards
/// the circle as `refinement` grows.
MeshGeometry build_polygon_disk_mesh(double radius, int refinement);

/// Validates all Mesh2D invariants; throws InvariantViolation with details.
void check_mesh_invariants(const Mesh2D& mesh);

/// Derives the boundary cycle, normals and quadrature nodes of a mesh
/// (nodes_per_edge Gauss points strictly inside each boundary edge).
std::shared_ptr<const BoundaryParam> derive_boundary(const Mesh2D& mesh,
                                                     int nodes_per_edge = 4);

/// Mesh file format: {"vertices": [[x,y],...], "cells": [[i,...],...],
/// "element_type": "p1"|"c1rect"}. Boundary data is always derived.
Mesh2D load_mesh_json(const std::string& path);
void save_mesh_json(const Mesh2D& mesh, const std::string& path);

}  // namespace steklov
