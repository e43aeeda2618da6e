#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairsc/affinity.hpp"
#include "fairsc/numerics.hpp"
#include "test_support.hpp"

using namespace fairsc;

TEST_CASE("rbf affinity on two identical points") {
  Matrix points(2, 1);
  points << 0.7, 0.7;
  const AffinityModel model = rbf_affinity(points, 1.0);
  // K is all ones, D_ii = 2, so every entry of M is 1/2
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(model.dense()(i, j) == doctest::Approx(0.5));
  CHECK(model.duplicate_points());
  CHECK(model.omega() == 0.0);
}

TEST_CASE("rbf affinity singleton and kernel limit") {
  Matrix one(1, 2);
  one << 1.0, 2.0;
  const AffinityModel single = rbf_affinity(one, 1.0);
  CHECK(single.dense()(0, 0) == doctest::Approx(1.0));
  Matrix x(1, 1);
  x << 3.0;
  CHECK(single.apply(x)(0, 0) == doctest::Approx(3.0));

  Rng rng(5);
  const Matrix points = gaussian_matrix(rng, 6, 2);
  const AffinityModel sharp = rbf_affinity(points, 1e6);
  CHECK((sharp.dense() - Matrix::Identity(6, 6)).norm() <= 1e-9);
  CHECK_FALSE(sharp.duplicate_points());
}

TEST_CASE("graph affinity two-clique") {
  Matrix w(2, 2);
  w << 0.0, 1.0, 1.0, 0.0;
  const AffinityModel model = graph_affinity(w, 0.01);
  CHECK(model.dense()(0, 0) == doctest::Approx(1.01));
  CHECK(model.dense()(0, 1) == doctest::Approx(1.0));
  CHECK(model.dense()(1, 0) == doctest::Approx(1.0));
  CHECK(model.dense()(1, 1) == doctest::Approx(1.01));
}

TEST_CASE("graph affinity spectrum bounded below by omega") {
  Rng rng(9);
  const Index n = 120;
  Matrix w = gaussian_matrix(rng, n, n).cwiseAbs();
  w = 0.5 * (w + w.transpose());
  w.diagonal().setZero();
  const double omega = 0.01;
  const AffinityModel model = graph_affinity(w, omega);
  const EigResult eig = sym_eig(model.dense());
  CHECK(eig.values.minCoeff() >= omega - 1e-10);

  // shift preserves eigenvectors: compare against the unshifted operator
  const Vector inv_sqrt = model.degree().cwiseSqrt().cwiseInverse();
  const Matrix unshifted = inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal();
  const EigResult base = sym_eig(unshifted);
  const double align = std::abs(eig.vectors.col(0).dot(base.vectors.col(0)));
  CHECK(align == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("graph affinity rejects bad input") {
  Matrix w(2, 2);
  w << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(graph_affinity(w, 0.0), ContractError);
  Matrix isolated = Matrix::Zero(3, 3);
  isolated(0, 1) = isolated(1, 0) = 1.0;
  CHECK_THROWS_WITH_AS(graph_affinity(isolated, 0.01),
                       "graph_affinity: node 2 has zero degree", ContractError);
  Matrix negative(2, 2);
  negative << 0.0, -1.0, -1.0, 0.0;
  CHECK_THROWS_AS(graph_affinity(negative, 0.01), ContractError);
}

TEST_CASE("apply is linear, symmetric, and matches the dense matrix") {
  Rng rng(21);
  const Matrix points = gaussian_matrix(rng, 40, 3);
  const AffinityModel model = rbf_affinity(points, 1.0 / 3.0);

  CHECK(model.apply(Matrix::Zero(40, 2)).norm() == 0.0);

  const Matrix x = gaussian_matrix(rng, 40, 3);
  const Matrix y = gaussian_matrix(rng, 40, 3);
  const double lhs = model.apply(x).cwiseProduct(y).sum();
  const double rhs = x.cwiseProduct(model.apply(y)).sum();
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));

  CHECK((model.apply(x) - model.dense() * x).norm() <= 1e-12 * std::max(1.0, x.norm()));

  CHECK_THROWS_AS(model.apply(Matrix::Zero(39, 2)), ContractError);
}

TEST_CASE("kernel normalization has the sqrt-degree eigenpair at 1") {
  Rng rng(33);
  const Matrix points = gaussian_matrix(rng, 50, 4);
  const AffinityModel model = rbf_affinity(points, 0.25);
  const Vector perron = model.degree().cwiseSqrt();
  CHECK((model.apply(perron) - perron).norm() <= 1e-10 * perron.norm());
}

TEST_CASE("trace_quadratic matches the dense triple product") {
  Rng rng(37);
  const Matrix points = gaussian_matrix(rng, 10, 2);
  const AffinityModel model = rbf_affinity(points, 0.5);
  const Matrix x = gaussian_matrix(rng, 10, 3);
  const double dense = (x.transpose() * model.dense() * x).trace();
  CHECK(trace_quadratic(model, x) == doctest::Approx(dense).epsilon(1e-12));
}
