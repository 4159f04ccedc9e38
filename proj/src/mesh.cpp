#include "lhg/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace lhg {

namespace {

// fixed short round-trip formatting keeps outputs byte-identical across runs
std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

void check_shape(const GridMesh& m) {
  if (m.nu < 2 || m.nv < 2 || m.us.size() != m.nu || m.vs.size() != m.nv ||
      m.pts.size() != m.nu * m.nv)
    throw InvalidSpec("mesh: inconsistent grid shape");
}

}  // namespace

GridMesh sample_grid(const Immersion& imm, std::size_t nu, std::size_t nv) {
  if (nu < 2 || nv < 2) throw InvalidSpec("mesh resolution must be at least 2x2");
  const Domain& d = imm.domain();
  GridMesh m;
  m.nu = nu;
  m.nv = nv;
  m.us.resize(nu);
  m.vs.resize(nv);
  for (std::size_t i = 0; i < nu; ++i)
    m.us[i] = d.u0 + (d.u1 - d.u0) * static_cast<double>(i) /
                         static_cast<double>(nu - 1);
  for (std::size_t j = 0; j < nv; ++j)
    m.vs[j] = d.v0 + (d.v1 - d.v0) * static_cast<double>(j) /
                         static_cast<double>(nv - 1);
  m.pts.reserve(nu * nv);
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      const PointR3 p = imm.position(m.us[i], m.vs[j]);
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw NonFiniteValue("mesh: non-finite vertex");
      m.pts.push_back(p);
    }
  return m;
}

void write_obj(const GridMesh& m, const std::string& path) {
  check_shape(m);
  auto out = open_out(path);
  for (const PointR3& p : m.pts)
    out << "v " << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z) << '\n';
  for (std::size_t i = 0; i + 1 < m.nu; ++i)
    for (std::size_t j = 0; j + 1 < m.nv; ++j) {
      const std::size_t a = i * m.nv + j + 1;
      const std::size_t b = (i + 1) * m.nv + j + 1;
      const std::size_t c = (i + 1) * m.nv + j + 2;
      const std::size_t d = i * m.nv + j + 2;
      out << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
    }
  finish(out, path);
}

void write_csv(const GridMesh& m, const std::string& path) {
  check_shape(m);
  auto out = open_out(path);
  out << "u,v,x,y,z\n";
  for (std::size_t i = 0; i < m.nu; ++i)
    for (std::size_t j = 0; j < m.nv; ++j) {
      const PointR3& p = m.pts[i * m.nv + j];
      out << fmt(m.us[i]) << ',' << fmt(m.vs[j]) << ',' << fmt(p.x) << ','
          << fmt(p.y) << ',' << fmt(p.z) << '\n';
    }
  finish(out, path);
}

}  // namespace lhg
