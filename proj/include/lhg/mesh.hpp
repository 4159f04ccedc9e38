#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lhg/surface.hpp"

namespace lhg {

// Sampled position grid over the immersion's parameter rectangle.  Vertices
// run u-major: all v for the first u, then the next u, so index = i*nv + j.
struct GridMesh {
  std::size_t nu = 0, nv = 0;  // vertices per side
  std::vector<double> us, vs;
  std::vector<PointR3> pts;
};

GridMesh sample_grid(const Immersion& imm, std::size_t nu, std::size_t nv);

// OBJ: `v x y z` lines in grid order, then 1-based `f` quads; LF endings.
void write_obj(const GridMesh& m, const std::string& path);

// CSV: header `u,v,x,y,z`, one row per vertex in grid order.
void write_csv(const GridMesh& m, const std::string& path);

}  // namespace lhg
