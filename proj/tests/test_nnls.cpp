#include <doctest.h>

#include <cmath>

#include "fframe/generate.hpp"
#include "fframe/nnls.hpp"
#include "fframe/scaling.hpp"
#include "fframe/subspace.hpp"

using namespace fframe;

namespace {

// Three unit vectors in the plane at mutual angles of 120 degrees.
std::vector<Vector> mercedes_benz_directions() {
    const double s = std::sqrt(3.0) / 2.0;
    return {{0.0, 1.0}, {-s, -0.5}, {s, -0.5}};
}

void check_kkt(const Matrix& a, const Vector& b, const NnlsResult& r) {
    const Vector grad = a.transpose() * sub(a * r.coefficients, b);
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (r.coefficients[i] > 0.0)
            CHECK(std::abs(grad[i]) <= 1e-8);
        else
            CHECK(grad[i] >= -1e-8);
    }
}

} // namespace

TEST_CASE("nnls identity system") {
    const NnlsResult r = nnls(Matrix::identity(2), Vector{3.0, 5.0});
    CHECK(r.coefficients[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.coefficients[1] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("nnls clips negativity") {
    const NnlsResult r = nnls(Matrix::identity(2), Vector{3.0, -5.0});
    CHECK(r.coefficients[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.coefficients[1] == 0.0);
    CHECK(r.residual == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("nnls on the Mercedes-Benz projector system") {
    std::vector<Vector> cols;
    for (const Vector& v : mercedes_benz_directions())
        cols.push_back(vectorize_symmetric(Subspace::line(v).projector()));
    const Matrix a = Matrix::from_columns(cols);
    const Vector b = vectorize_symmetric(Matrix::identity(2));

    const NnlsResult r = nnls(a, b);
    for (double c : r.coefficients) CHECK(c == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.residual <= 1e-12);
    check_kkt(a, b, r);
}

TEST_CASE("nnls dimension mismatch") {
    CHECK_THROWS_AS(nnls(Matrix::identity(2), Vector{1.0}), DimensionMismatchError);
}

TEST_CASE("nnls enters the lowest index on gradient ties") {
    // two identical columns: only the first ever enters
    const Matrix a(2, 3, Vector{1, 1, 0, 0, 0, 1});
    const NnlsResult r = nnls(a, Vector{1.0, 1.0});
    CHECK(r.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.coefficients[1] == 0.0);
    CHECK(r.coefficients[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("nnls KKT certificate on random systems") {
    Rng rng(2024);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t m = 1 + rng.uniform_index(8);
        const std::size_t k = 1 + rng.uniform_index(8);
        const Matrix a = random_gaussian_matrix(m, k, rng);
        Vector b(m);
        for (double& x : b) x = rng.gaussian();
        const NnlsResult r = nnls(a, b);
        for (double c : r.coefficients) CHECK(c >= 0.0);
        check_kkt(a, b, r);
    }
}

TEST_CASE("nnls is the global minimum on exactly solvable systems") {
    Rng rng(77);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t m = 3 + rng.uniform_index(6);
        const std::size_t k = 1 + rng.uniform_index(m);
        const Matrix a = random_gaussian_matrix(m, k, rng);
        Vector c_true(k);
        for (double& x : c_true) x = rng.uniform();
        const Vector b = a * c_true;
        const NnlsResult r = nnls(a, b);
        CHECK(r.residual <= 1e-9 * std::max(1.0, norm2(b)));
    }
}
