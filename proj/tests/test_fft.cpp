#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <complex>

#include "cpafdm/fft.hpp"
#include "cpafdm/rng.hpp"
#include "cpafdm/transforms.hpp"

using cpafdm::Fft;
using cpafdm::Rng;

namespace {

Eigen::VectorXcd random_vector(int n, Rng& rng) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return v;
}

}  // namespace

TEST_CASE("unitary forward matches the dense DFT matrix") {
    Rng rng(11);
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12, 16, 31, 60, 64, 100, 128, 257}) {
        Fft fft(n);
        Eigen::MatrixXcd f = cpafdm::dft_matrix(n);
        Eigen::VectorXcd x = random_vector(n, rng);
        Eigen::VectorXcd expected = f * x;
        Eigen::VectorXcd got = x;
        fft.unitary_forward(got.data());
        CAPTURE(n);
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("inverse undoes forward") {
    Rng rng(12);
    for (int n : {2, 3, 7, 8, 48, 64, 81, 128}) {
        Fft fft(n);
        Eigen::VectorXcd x = random_vector(n, rng);
        Eigen::VectorXcd y = x;
        fft.unitary_forward(y.data());
        fft.unitary_inverse(y.data());
        CAPTURE(n);
        CHECK((y - x).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("unitary transform preserves energy") {
    Rng rng(13);
    for (int n : {16, 27, 64}) {
        Fft fft(n);
        Eigen::VectorXcd x = random_vector(n, rng);
        Eigen::VectorXcd y = x;
        fft.unitary_forward(y.data());
        CHECK(y.norm() == doctest::Approx(x.norm()).epsilon(1e-12));
    }
}

TEST_CASE("size validation") {
    CHECK_THROWS_AS(Fft(0), std::invalid_argument);
    CHECK_THROWS_AS(Fft(-4), std::invalid_argument);
}
