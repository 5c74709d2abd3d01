#include <doctest.h>

#include <algorithm>
#include <random>

#include "nevpick/polyalg.hpp"
#include "support/fixtures.hpp"
#include "support/random_problems.hpp"

using namespace nevpick;

namespace {

// Laurent coefficients of x(z) y(1/z) + y(z) x(1/z), z^0..z^n, by brute force.
Vec laurent_sym(const FullVector& x, const FullVector& y) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<double> c(2 * n + 1, 0.0);  // index k + n holds z^k
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const int pow_xy = (n - i) - (n - j);  // x_i z^(n-i) * y_j z^-(n-j)
      c[pow_xy + n] += x[i] * y[j];
      c[-pow_xy + n] += y[j] * x[i];
    }
  Vec out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = c[k + n];
  return out;
}

Vec random_vec(std::mt19937_64& rng, int size) {
  std::normal_distribution<double> g;
  Vec v(size);
  for (auto& e : v) e = g(rng);
  return v;
}

bool same_multiset(CVec a, CVec b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    Eigen::Index best = -1;
    double dist = tol;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (!used[j] && std::abs(a[i] - b[j]) <= dist) {
        best = j;
        dist = std::abs(a[i] - b[j]);
      }
    }
    if (best < 0) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace

TEST_CASE("MonicPolynomial construction") {
  CHECK_THROWS_AS(MonicPolynomial(Vec::Zero(0)), InvalidInput);
  CHECK_THROWS_AS(MonicPolynomial(Vec::Constant(2, 2.0)), InvalidInput);
  const auto m = MonicPolynomial::monomial(3);
  CHECK(m.degree() == 3);
  CHECK(m.coeffs() == (Vec(4) << 1, 0, 0, 0).finished());

  const std::vector<Complex> real_pair{0.5, -0.5};
  CHECK(MonicPolynomial::from_roots(real_pair).coeffs().isApprox((Vec(3) << 1, 0, -0.25).finished()));
  const std::vector<Complex> conj_pair{Complex(0, 0.5), Complex(0, -0.5)};
  CHECK(MonicPolynomial::from_roots(conj_pair).coeffs().isApprox((Vec(3) << 1, 0, 0.25).finished()));
  const std::vector<Complex> lonely{Complex(0.1, 0.5)};
  CHECK_THROWS_AS(MonicPolynomial::from_roots(lonely), InvalidInput);

  const auto prod = MonicPolynomial::monomial(1) * MonicPolynomial::from_roots(real_pair);
  CHECK(prod.coeffs().isApprox((Vec(4) << 1, 0, -0.25, 0).finished()));
}

TEST_CASE("eval_poly") {
  CHECK(eval_poly(MonicPolynomial::monomial(2), Complex(2.0)) == Complex(4.0));
  const std::vector<Complex> r{0.5, -0.5};
  CHECK(std::abs(eval_poly(MonicPolynomial::from_roots(r), Complex(0.5))) == 0.0);

  // f(z_5) = b(z_5) / (2 a(z_5)) for the system identification solution.
  const Vec a = (Vec(8) << 1, -1.771, 1.815, -1.205, 1.28, -1.814, 1.773, -0.8775).finished();
  const Vec b = (Vec(8) << 1, -1.364, 1.112, -0.3812, -0.4479, 1.119, -1.412, 0.8781).finished();
  const auto problem = testing::system_identification_problem();
  const Complex z5 = problem.nodes[5].value();
  REQUIRE(std::abs(z5 - Complex(1.1)) < 1e-12);
  const Complex w5 = problem.values[5];
  CHECK(std::abs(2.0 * w5 * eval_poly(a, z5) - eval_poly(b, z5)) < 1e-3);
}

TEST_CASE("roots_and_schur") {
  auto r = roots_and_schur(MonicPolynomial((Vec(2) << 1, -0.5).finished()));
  CHECK(r.is_schur);
  CHECK(std::abs(r.roots[0] - 0.5) < 1e-15);
  r = roots_and_schur(MonicPolynomial((Vec(2) << 1, -1.0).finished()));
  CHECK_FALSE(r.is_schur);
  CHECK(std::abs(r.roots[0] - 1.0) < 1e-15);
  CHECK_FALSE(roots_and_schur(MonicPolynomial((Vec(2) << 1, -0.5).finished()), 0.6).is_schur);

  const auto sigma = testing::system_identification_problem().sigma;
  const auto report = roots_and_schur(sigma);
  CHECK(report.is_schur);
  for (const Complex z : report.roots) {
    const double m = std::abs(z);
    CHECK((std::abs(m - 0.95) < 1e-9 || std::abs(m - 0.99) < 1e-9));
  }
  CHECK(roots(MonicPolynomial::monomial(0)).size() == 0);
}

TEST_CASE("companion layout and spectrum") {
  CHECK(companion(MonicPolynomial::monomial(1)).gamma == Mat::Zero(1, 1));
  const auto c = companion(MonicPolynomial((Vec(3) << 1, 0.5, 0.25).finished()));
  CHECK(c.gamma == (Mat(2, 2) << -0.5, 1, -0.25, 0).finished());
  CHECK(c.h == (Vec(2) << 1, 0).finished());
  CHECK(c.sigma_vec == (Vec(2) << 0.5, 0.25).finished());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    const auto truth = testing::random_roots(rng, n, 0.05, 1.5);
    const auto sigma = MonicPolynomial::from_roots(truth);
    const CVec eig = Eigen::EigenSolver<Mat>(companion(sigma).gamma).eigenvalues();
    CHECK(same_multiset(eig, Eigen::Map<const CVec>(truth.data(), n), 1e-8));
  }
}

TEST_CASE("build_d") {
  CHECK(build_d(MonicPolynomial::monomial(4)) == (Vec(4) << 1, 0, 0, 0).finished());
  CHECK(build_d(MonicPolynomial((Vec(2) << 1, 0.3).finished()))[0] == doctest::Approx(1.09));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Vec coeffs = random_vec(rng, 6);
    coeffs[0] = 1.0;
    const MonicPolynomial sigma(coeffs);
    const Vec oracle = 0.5 * laurent_sym(coeffs, coeffs);
    CHECK((build_d(sigma) - oracle.head(5)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("build_S examples") {
  FullVector e = FullVector::Zero(4);
  e[0] = 1.0;
  Mat expected = Mat::Identity(4, 4);
  expected(0, 0) = 2.0;
  CHECK(build_S(e) == expected);
  CHECK(sym_coeffs(e, e) == (Vec(4) << 2, 0, 0, 0).finished());

  const Vec x = (Vec(3) << 1, 2, 3).finished();
  // H rows (1,2,3),(2,3,0),(3,0,0); Tu rows (1,2,3),(0,1,2),(0,0,1).
  CHECK(build_S(x) == (Mat(3, 3) << 2, 4, 6, 2, 4, 2, 3, 0, 1).finished());
}

TEST_CASE("S(x) y == S(y) x == sym_coeffs(x, y) on random pairs") {
  std::mt19937_64 rng(1234);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 1 + trial % 10;
    const Vec x = random_vec(rng, len), y = random_vec(rng, len);
    const Vec sxy = build_S(x) * y;
    worst = std::max({worst, (sxy - build_S(y) * x).cwiseAbs().maxCoeff(),
                      (sxy - sym_coeffs(x, y)).cwiseAbs().maxCoeff(),
                      (sxy - laurent_sym(x, y)).cwiseAbs().maxCoeff()});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("central identity: first n entries of S([1;sigma])[1;sigma] are 2d") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 8; ++n) {
    const auto sigma = testing::random_schur(rng, n);
    const Vec s = build_S(sigma.coeffs()) * sigma.coeffs();
    CHECK((s.head(n) - 2.0 * build_d(sigma)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("with_leading_one") {
  CHECK(with_leading_one((Vec(2) << 3, 4).finished()) == (Vec(3) << 1, 3, 4).finished());
}
