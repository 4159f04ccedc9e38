#include <cmath>
#include <random>

#include "doctest.h"
#include "lhg/ambient.hpp"

using namespace lhg;

namespace {

double dist(const FrameVector& a, const FrameVector& b) {
  return residual_norm(a - b);
}

std::mt19937_64 rng(12345);
std::uniform_real_distribution<double> unit(-2.0, 2.0);

FrameVector rand_vec() { return {unit(rng), unit(rng), unit(rng)}; }
PointR3 rand_pt() { return {unit(rng), unit(rng), unit(rng)}; }

}  // namespace

TEST_SUITE("ambient") {

TEST_CASE("tau validates") {
  CHECK_THROWS_AS(Tau(0.0), InvalidSpec);
  CHECK_THROWS_AS(Tau(std::nan("")), InvalidSpec);
  CHECK_THROWS_AS(Tau{INFINITY}, InvalidSpec);
  CHECK(Tau(-0.5).v() == -0.5);
}

TEST_CASE("frame fields in coordinates") {
  const auto e = frame_at({1, 2, 5}, Tau(1.0));
  CHECK(e[0].dx == 1.0);
  CHECK(e[0].dy == 0.0);
  CHECK(e[0].dz == 2.0);  // tau*y
  CHECK(e[1].dx == 0.0);
  CHECK(e[1].dy == 1.0);
  CHECK(e[1].dz == -1.0);  // -tau*x
  CHECK(e[2].dx == 0.0);
  CHECK(e[2].dy == 0.0);
  CHECK(e[2].dz == 1.0);
}

TEST_CASE("coordinate metric values and determinant") {
  const Mat3 g = metric_coords({1, 0, 0}, Tau(1.0));
  CHECK(g[0][0] == 1.0);
  CHECK(g[0][1] == 0.0);
  CHECK(g[0][2] == 0.0);
  CHECK(g[1][1] == 0.0);
  CHECK(g[1][2] == -1.0);
  CHECK(g[2][2] == -1.0);

  for (int k = 0; k < 20; ++k) {
    const Mat3 m = metric_coords(rand_pt(), Tau(1.7));
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(det == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("frame/coordinate conversions invert each other") {
  const Tau tau(0.8);
  for (int k = 0; k < 20; ++k) {
    const PointR3 p = rand_pt();
    const FrameVector x = rand_vec();
    const FrameVector back = to_frame(to_coords(x, p, tau), p, tau);
    CHECK(dist(back, x) < 1e-13);
  }
  // frame fields convert to unit frame components
  const PointR3 p{0.4, -1.1, 2.0};
  const auto e = frame_at(p, Tau(0.8));
  CHECK(dist(to_frame(e[0], p, Tau(0.8)), {1, 0, 0}) < 1e-14);
  CHECK(dist(to_frame(e[1], p, Tau(0.8)), {0, 1, 0}) < 1e-14);
  CHECK(dist(to_frame(e[2], p, Tau(0.8)), {0, 0, 1}) < 1e-14);
}

TEST_CASE("inner product has signature (+,+,-)") {
  CHECK(frame_inner({1, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(frame_inner({0, 1, 0}, {0, 1, 0}) == 1.0);
  CHECK(frame_inner({0, 0, 1}, {0, 0, 1}) == -1.0);
  // metric pulled back through to_coords agrees with the frame inner product
  const Tau tau(1.3);
  const PointR3 p{0.2, 0.7, -1.0};
  const FrameVector a = rand_vec(), b = rand_vec();
  const CoordVector ca = to_coords(a, p, tau), cb = to_coords(b, p, tau);
  const Mat3 g = metric_coords(p, tau);
  const double av[3] = {ca.dx, ca.dy, ca.dz}, bv[3] = {cb.dx, cb.dy, cb.dz};
  double q = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q += g[i][j] * av[i] * bv[j];
  CHECK(q == doctest::Approx(frame_inner(a, b)).epsilon(1e-12));
}

TEST_CASE("cross product on frame vectors") {
  CHECK(dist(frame_cross({1, 0, 0}, {0, 1, 0}), {0, 0, -1}) == 0.0);
  CHECK(dist(frame_cross({0, 1, 0}, {0, 0, 1}), {1, 0, 0}) == 0.0);
  CHECK(dist(frame_cross({0, 0, 1}, {1, 0, 0}), {0, 1, 0}) == 0.0);
  for (int k = 0; k < 50; ++k) {
    const FrameVector u = rand_vec(), v = rand_vec();
    const FrameVector w = frame_cross(u, v);
    CHECK(std::abs(frame_inner(w, u)) < 1e-13);
    CHECK(std::abs(frame_inner(w, v)) < 1e-13);
    // <UxV, UxV> = <U,V>^2 - <U,U><V,V>
    const double lhs = frame_inner(w, w);
    const double rhs = frame_inner(u, v) * frame_inner(u, v) -
                       frame_inner(u, u) * frame_inner(v, v);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("connection table") {
  const Tau tau(2.0);
  const double t = tau.v();
  CHECK(dist(nabla_frame(1, 2, tau), {0, 0, -t}) == 0.0);
  CHECK(dist(nabla_frame(2, 1, tau), {0, 0, t}) == 0.0);
  CHECK(dist(nabla_frame(1, 3, tau), {0, -t, 0}) == 0.0);
  CHECK(dist(nabla_frame(3, 1, tau), {0, -t, 0}) == 0.0);
  CHECK(dist(nabla_frame(2, 3, tau), {t, 0, 0}) == 0.0);
  CHECK(dist(nabla_frame(3, 2, tau), {t, 0, 0}) == 0.0);
  for (int i = 1; i <= 3; ++i) CHECK(residual_norm(nabla_frame(i, i, tau)) == 0.0);
}

TEST_CASE("connection is metric and torsion free on frame fields") {
  const Tau tau(0.9);
  // <nabla_i Ej, Ek> + <Ej, nabla_i Ek> = Ei<Ej,Ek> = 0
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        FrameVector ej{}, ek{};
        if (j == 1) ej = {1, 0, 0};
        if (j == 2) ej = {0, 1, 0};
        if (j == 3) ej = {0, 0, 1};
        if (k == 1) ek = {1, 0, 0};
        if (k == 2) ek = {0, 1, 0};
        if (k == 3) ek = {0, 0, 1};
        const double s = frame_inner(nabla_frame(i, j, tau), ek) +
                         frame_inner(ej, nabla_frame(i, k, tau));
        CHECK(std::abs(s) < 1e-15);
      }
}

TEST_CASE("covariant derivative of fields by the Leibniz rule") {
  const Tau tau(1.0);
  const PointR3 p{0.3, -0.4, 1.2};
  const VectorField e1 = [](const PointR3&) { return FrameVector{1, 0, 0}; };
  const VectorField e2 = [](const PointR3&) { return FrameVector{0, 1, 0}; };
  CHECK(dist(nabla_field(e1, e2, p, tau, 1e-5), {0, 0, -1}) < 1e-9);

  // y = x*E1: nabla_{E1} y = E1(x)*E1 = E1
  const VectorField y = [](const PointR3& q) { return FrameVector{q.x, 0, 0}; };
  CHECK(dist(nabla_field(e1, y, p, tau, 1e-5), {1, 0, 0}) < 1e-9);
}

TEST_CASE("vertical field is Killing") {
  for (double t : {1.0, -1.0, 0.5, -0.5, 2.0}) {
    const Tau tau(t);
    for (int k = 0; k < 100; ++k) {
      CHECK(residual_norm(killing_residual(rand_vec(), rand_pt(), tau)) <=
            1e-12);
    }
  }
}

TEST_CASE("curvature component table") {
  const Tau tau(1.5);
  const double t2 = tau.v() * tau.v();
  const FrameVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  CHECK(dist(riemann_table(e1, e2, e1, tau), -3.0 * t2 * e2) == 0.0);
  CHECK(dist(riemann_table(e1, e2, e2, tau), 3.0 * t2 * e1) == 0.0);
  CHECK(dist(riemann_table(e1, e3, e1, tau), t2 * e3) == 0.0);
  CHECK(dist(riemann_table(e1, e3, e3, tau), t2 * e1) == 0.0);
  CHECK(dist(riemann_table(e2, e3, e2, tau), t2 * e3) == 0.0);
  CHECK(dist(riemann_table(e2, e3, e3, tau), t2 * e2) == 0.0);
  CHECK(residual_norm(riemann_table(e1, e2, e3, tau)) == 0.0);
  CHECK(residual_norm(riemann_table(e1, e3, e2, tau)) == 0.0);
  CHECK(residual_norm(riemann_table(e2, e3, e1, tau)) == 0.0);
}

TEST_CASE("table and closed formula agree on random triples") {
  for (double t : {1.0, 0.5, -1.0}) {
    const Tau tau(t);
    for (int k = 0; k < 200; ++k) {
      const FrameVector x = rand_vec(), y = rand_vec(), z = rand_vec();
      CHECK(dist(riemann_table(x, y, z, tau), riemann_formula(x, y, z, tau)) <=
            1e-12);
    }
  }
}

TEST_CASE("curvature tensor antisymmetry") {
  const Tau tau(0.7);
  for (int k = 0; k < 50; ++k) {
    const FrameVector x = rand_vec(), y = rand_vec(), z = rand_vec();
    CHECK(dist(riemann_table(x, y, z, tau), -riemann_table(y, x, z, tau)) <
          1e-13);
  }
}

}  // TEST_SUITE
