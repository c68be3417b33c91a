#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"

using namespace secrelay;
using test::random_cond;
using test::random_pmf;

namespace {

JointPmf binary_pair(double p00, double p01, double p10, double p11) {
  return JointPmf({"x", "y"}, {2, 2}, {p00, p01, p10, p11});
}

}  // namespace

TEST_CASE("mutual information on small alphabets") {
  SUBCASE("identity channel carries one bit") {
    const JointPmf p = binary_pair(0.5, 0.0, 0.0, 0.5);
    CHECK(mutual_information(p, {"x"}, {"y"}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("independent variables carry nothing") {
    const JointPmf p = binary_pair(0.25, 0.25, 0.25, 0.25);
    CHECK(mutual_information(p, {"x"}, {"y"}) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("binary symmetric channel at crossover 0.11") {
    const double e = 0.11;
    const JointPmf p = binary_pair(0.5 * (1 - e), 0.5 * e, 0.5 * e, 0.5 * (1 - e));
    // 1 - h2(0.11), frozen from a high-precision evaluation
    CHECK(mutual_information(p, {"x"}, {"y"}) ==
          doctest::Approx(0.50008404183547200).epsilon(1e-12));
  }
  SUBCASE("overlapping groups are usage errors") {
    const JointPmf p = binary_pair(0.25, 0.25, 0.25, 0.25);
    CHECK_THROWS_AS(mutual_information(p, {"x"}, {"x"}), std::invalid_argument);
    CHECK_THROWS_AS(conditional_mutual_information(p, {"x"}, {"y"}, {"x"}),
                    std::invalid_argument);
  }
}

TEST_CASE("conditional mutual information") {
  Rng rng(11);
  SUBCASE("empty conditioning reduces to plain mutual information") {
    for (int i = 0; i < 20; ++i) {
      const JointPmf p = random_pmf(rng, {"x", "y"}, {3, 2});
      CHECK(conditional_mutual_information(p, {"x"}, {"y"}, {}) ==
            doctest::Approx(mutual_information(p, {"x"}, {"y"})).epsilon(1e-12));
    }
  }
  SUBCASE("markov chain has zero conditional information") {
    for (int i = 0; i < 20; ++i) {
      JointPmf px = random_pmf(rng, {"x"}, {3});
      const CondPmf py = random_cond(rng, {"x"}, {3}, {"y"}, {2});
      const CondPmf pz = random_cond(rng, {"y"}, {2}, {"z"}, {3});
      JointPmf pxy = compose(px, py);
      // z depends on y only
      const JointPmf pxyz = compose(pxy, CondPmf({"x", "y"}, {3, 2}, {"z"}, {3}, [&] {
                                      std::vector<double> t;
                                      for (int x = 0; x < 3; ++x)
                                        for (int y = 0; y < 2; ++y)
                                          for (int z = 0; z < 3; ++z)
                                            t.push_back(pz.value({y}, {z}));
                                      return t;
                                    }()));
      CHECK(conditional_mutual_information(pxyz, {"x"}, {"z"}, {"y"}) ==
            doctest::Approx(0.0).epsilon(1e-10));
      // data processing
      CHECK(mutual_information(pxyz, {"x"}, {"z"}) <=
            mutual_information(pxyz, {"x"}, {"y"}) + 1e-10);
    }
  }
  SUBCASE("chain rule holds on random joints") {
    for (int i = 0; i < 500; ++i) {
      const JointPmf p = random_pmf(rng, {"a", "b", "c"}, {2, 3, 2});
      const double lhs = mutual_information(p, {"a"}, {"b", "c"});
      const double rhs = mutual_information(p, {"a"}, {"b"}) +
                         conditional_mutual_information(p, {"a"}, {"c"}, {"b"});
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
  SUBCASE("information bounded by both entropies") {
    for (int i = 0; i < 100; ++i) {
      const JointPmf p = random_pmf(rng, {"a", "b"}, {4, 3});
      const double mi = mutual_information(p, {"a"}, {"b"});
      CHECK(mi >= -1e-12);
      CHECK(mi <= std::min(p.entropy({"a"}), p.entropy({"b"})) + 1e-10);
    }
  }
}

TEST_CASE("pmf validation and marginals") {
  CHECK_THROWS_AS(JointPmf({"x"}, {2}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(JointPmf({"x"}, {2}, {-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(JointPmf({"x", "x"}, {2, 2}, {0.25, 0.25, 0.25, 0.25}),
                  std::invalid_argument);

  Rng rng(3);
  const JointPmf p = random_pmf(rng, {"a", "b", "c"}, {2, 2, 3});
  // marginalization over any subset yields a valid pmf (constructor checks)
  const JointPmf m = p.marginal({"c", "a"});
  double sum = 0.0;
  for (double v : m.probs()) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.names() == std::vector<std::string>({"c", "a"}));
}

TEST_CASE("pmf csv round trip") {
  Rng rng(5);
  const JointPmf p = random_pmf(rng, {"v1", "y"}, {2, 3});
  const std::string path =
      (std::filesystem::temp_directory_path() / "secrelay_pmf_test.csv").string();
  p.save_csv(path);
  const JointPmf q = JointPmf::load_csv(path);
  REQUIRE(q.names() == p.names());
  REQUIRE(q.cards() == p.cards());
  for (std::size_t i = 0; i < p.probs().size(); ++i)
    CHECK(q.probs()[i] == doctest::Approx(p.probs()[i]).epsilon(1e-15));
  std::remove(path.c_str());
  CHECK_THROWS_AS(JointPmf::load_csv("/nonexistent/nowhere.csv"), io_error);
}

TEST_CASE("conditional composition") {
  // y = x through a bsc(0.2), composed joint must match hand computation
  const JointPmf px({"x"}, {2}, {0.3, 0.7});
  const CondPmf bsc({"x"}, {2}, {"y"}, {2}, {0.8, 0.2, 0.2, 0.8});
  const JointPmf j = compose(px, bsc);
  CHECK(j.prob({0, 0}) == doctest::Approx(0.24));
  CHECK(j.prob({1, 0}) == doctest::Approx(0.14));
  CHECK_THROWS_AS(compose(j, bsc), std::invalid_argument);  // y already present

  // marginalizing the conditioning variable of a two-given law
  const CondPmf x2({"v1", "v2"}, {2, 2}, {"x2"}, {2}, {1, 0, 0, 1, 0, 1, 1, 0});
  const CondPmf mix({"v1"}, {2}, {"v2"}, {2}, {0.5, 0.5, 0.25, 0.75});
  const CondPmf red = x2.marginalize_given(mix, "v2");
  CHECK(red.value({0}, {0}) == doctest::Approx(0.5));
  CHECK(red.value({1}, {0}) == doctest::Approx(0.75));
}
