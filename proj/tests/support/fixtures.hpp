#pragma once

#include <string>

#include "core/mesh.hpp"

namespace beltrami::fixtures {

// Analytic test meshes. All are deterministic.

Mesh single_triangle();
Mesh two_disjoint_triangles();

// Regular tetrahedron with the given edge length, centered at the origin.
Mesh tetrahedron(double edge = 1.0);
Mesh octahedron(double radius = 1.0);

// Regular icosahedron with unit circumradius.
Mesh icosahedron();

// Icosahedron subdivided `subdivisions` times, vertices projected to the
// sphere of the given radius. subdiv 2 -> 162 verts, 3 -> 642, 4 -> 2562.
Mesh icosphere(int subdivisions, double radius = 1.0);

// Planar grid of nx-by-ny vertices spanning [0,w]x[0,h], each cell split
// along the (i,j)-(i+1,j+1) diagonal. Vertex index = j*nx + i.
Mesh grid(int nx, int ny, double w = 1.0, double h = 1.0);

// Temp-file scratch directory for IO tests; created once per process.
std::string scratch_dir();
std::string scratch_path(const std::string& name);

}  // namespace beltrami::fixtures
