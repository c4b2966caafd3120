#include "doctest.h"

#include "cavity/algebra.hpp"
#include "support.hpp"

using namespace cavity;

namespace {

// Hamilton product from the 4-real component table.
Quaternion hamilton(const Quaternion& p, const Quaternion& q) {
  const double a1 = p.w(), b1 = p.x(), c1 = p.y(), d1 = p.z();
  const double a2 = q.w(), b2 = q.x(), c2 = q.y(), d2 = q.z();
  return Quaternion::from_components(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2, a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                                     a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2, a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2);
}

Quaternion random_quat(testing::Rng& r) {
  return Quaternion::from_components(r.uniform(-2, 2), r.uniform(-2, 2), r.uniform(-2, 2), r.uniform(-2, 2));
}

double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

} // namespace

TEST_CASE("unit table") {
  const auto one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(j * k == i);
  CHECK(k * i == j);
  CHECK(i * i == -one);
  CHECK(j * j == -one);
  CHECK(k * k == -one);
  CHECK(i * j * k == -one);
}

TEST_CASE("left and right multiplication by i") {
  const auto one = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(left_i(one) == i);
  CHECK(right_i(one) == i);
  CHECK(left_i(j) == k);
  CHECK(right_i(j) == -k);

  testing::Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const Quaternion q = random_quat(rng);
    CHECK(dist(left_i(q), hamilton(i, q)) < 1e-14);
    CHECK(dist(right_i(q), hamilton(q, i)) < 1e-14);
    // i q - q i = 2 i (y j + z k): only the j, k part survives
    const Quaternion diff = left_i(q) - right_i(q);
    const Quaternion expect = 2.0 * hamilton(i, Quaternion::from_components(0, 0, q.y(), q.z()));
    CHECK(dist(diff, expect) < 1e-14);
  }
}

TEST_CASE("product, conjugate and norm against component expansion") {
  testing::Rng rng(7);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion p = random_quat(rng), q = random_quat(rng), r = random_quat(rng);
    CHECK(dist(p * q, hamilton(p, q)) < 1e-13);
    CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-13);
    CHECK(dist((p * q).conj(), q.conj() * p.conj()) < 1e-13);
    CHECK(dist((p * q) * r, p * (q * r)) < 1e-12);

    const Quaternion u = (1.0 / p.norm()) * p;
    CHECK(std::abs((u * q).norm() - q.norm()) < 1e-12);
  }
}

TEST_CASE("symplectic pair round trip and complex subalgebra") {
  const Complex a0(1.5, -0.25), a1(-3.0, 0.75);
  const Quaternion q = Quaternion::from_pair(a0, a1);
  CHECK(q.a0() == a0);
  CHECK(q.a1() == a1);
  CHECK(q == Quaternion::from_components(1.5, -0.25, -3.0, 0.75));

  testing::Rng rng(3);
  for (int n = 0; n < 100; ++n) {
    const Complex z(rng.uniform(-3, 3), rng.uniform(-3, 3)), w(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Quaternion prod = Quaternion(z) * Quaternion(w);
    CHECK(prod.is_complex());
    CHECK(prod.a0() == z * w);
  }
}

TEST_CASE("named helpers") {
  CHECK(quat_conj(Quaternion::i()) == -Quaternion::i());
  CHECK(quat_norm(Quaternion::one() + Quaternion::j()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(quat_mul(Quaternion::one(), Quaternion::k()) == Quaternion::k());
  const Complex c(0.5, 2.0);
  const Quaternion q = Quaternion::from_components(1, 2, 3, 4);
  CHECK(dist(left_mul(c, q), Quaternion(c) * q) < 1e-15);
  CHECK(dist(right_mul(q, c), q * Quaternion(c)) < 1e-15);
}
