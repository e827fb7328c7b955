#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "helpers.hpp"

using namespace wstar;
using testutil::diag;
using testutil::mat2;

TEST_CASE("eigh") {
    SECTION("diagonal input sorts eigenvalues") {
        BlockElement a = diag({{3, 1, 2}});
        SpectralData s = eigh(a);
        REQUIRE(s.eigenvalues[0](0) == Catch::Approx(1.0));
        REQUIRE(s.eigenvalues[0](1) == Catch::Approx(2.0));
        REQUIRE(s.eigenvalues[0](2) == Catch::Approx(3.0));
        // permutation eigenbasis: each column is a standard basis vector
        for (int j = 0; j < 3; ++j) {
            double top = s.eigenvectors[0].col(j).cwiseAbs().maxCoeff();
            REQUIRE(top == Catch::Approx(1.0));
        }
    }

    SECTION("off-diagonal 2x2 closed form") {
        BlockElement a = make_element(make_shape({2}), {mat2(0, 1, 1, 0)});
        SpectralData s = eigh(a);
        REQUIRE(s.eigenvalues[0](0) == Catch::Approx(-1.0));
        REQUIRE(s.eigenvalues[0](1) == Catch::Approx(1.0));
    }

    SECTION("scalar block") {
        BlockElement a = diag({{5}});
        SpectralData s = eigh(a);
        REQUIRE(s.eigenvalues[0](0) == Catch::Approx(5.0));
        REQUIRE(std::abs(s.eigenvectors[0](0, 0)) == Catch::Approx(1.0));
    }

    SECTION("rejects non-hermitian input") {
        BlockElement bad = make_element(make_shape({2}), {mat2(0, 1, 0, 0)});
        REQUIRE_THROWS_AS(eigh(bad), NotHermitian);
    }

    SECTION("reconstruction and unitarity on random hermitians") {
        Rng rng(101);
        for (int trial = 0; trial < 25; ++trial) {
            BlockElement a = random_hermitian(testutil::random_shape(rng), rng);
            SpectralData s = eigh(a);
            double scale = std::max(1.0, max_abs(a));
            REQUIRE(max_abs(subtract(reconstruct(s), a)) <= 1e-9 * scale);
            for (const Matrix& v : s.eigenvectors) {
                Matrix gram = v.adjoint() * v;
                REQUIRE(max_abs(Matrix(gram - Matrix::Identity(v.rows(), v.cols()))) <= 1e-10);
            }
        }
    }

    SECTION("deterministic on identical input bits") {
        Rng rng(55);
        BlockElement a = random_hermitian(make_shape({5, 3}), rng);
        SpectralData s1 = eigh(a);
        SpectralData s2 = eigh(a);
        for (std::size_t k = 0; k < s1.eigenvectors.size(); ++k) {
            REQUIRE(s1.eigenvalues[k] == s2.eigenvalues[k]);
            REQUIRE(s1.eigenvectors[k] == s2.eigenvectors[k]);
        }
    }

    SECTION("phase convention: first significant component is real positive") {
        Rng rng(56);
        BlockElement a = random_hermitian(make_shape({6}), rng);
        SpectralData s = eigh(a);
        for (Eigen::Index j = 0; j < 6; ++j) {
            for (Eigen::Index i = 0; i < 6; ++i) {
                Complex v = s.eigenvectors[0](i, j);
                if (std::abs(v) > 1e-12) {
                    REQUIRE(v.real() > 0.0);
                    REQUIRE(std::abs(v.imag()) <= 1e-12 * std::abs(v.real()) + 1e-15);
                    break;
                }
            }
        }
    }
}

TEST_CASE("spectral_projection") {
    SECTION("eigenvalue counting at an interior threshold") {
        BlockElement a = diag({{1, 2, 3}});
        CentralElement c = make_central(a.shape, std::vector<double>{2.0});
        REQUIRE(spectral_projection(a, c, Region::below).ranks[0] == 1);
        REQUIRE(spectral_projection(a, c, Region::at).ranks[0] == 1);
        REQUIRE(spectral_projection(a, c, Region::above).ranks[0] == 1);
    }

    SECTION("threshold below the spectrum") {
        BlockElement a = diag({{1, 2}, {0, 4, 9}});
        CentralElement c = make_central(a.shape, std::vector<double>{-10.0, -10.0});
        BlockProjection below = spectral_projection(a, c, Region::below);
        BlockProjection above = spectral_projection(a, c, Region::above);
        REQUIRE(below.ranks == std::vector<int>{0, 0});
        REQUIRE(above.ranks == std::vector<int>{2, 3});
    }

    SECTION("central element equals its own at-region") {
        AlgebraShape shape = make_shape({2, 3});
        CentralElement c = make_central(shape, std::vector<double>{1.5, -2.0});
        BlockElement a = to_element(c);
        REQUIRE(spectral_projection(a, c, Region::at).ranks == std::vector<int>{2, 3});
        REQUIRE(spectral_projection(a, c, Region::below).ranks == std::vector<int>{0, 0});
        REQUIRE(spectral_projection(a, c, Region::above).ranks == std::vector<int>{0, 0});
    }

    SECTION("regions partition the identity") {
        Rng rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            AlgebraShape shape = testutil::random_shape(rng, 8);
            BlockElement a = random_hermitian(shape, rng);
            std::uniform_real_distribution<double> uni(-2.0, 2.0);
            std::vector<double> cs;
            for (int k = 0; k < shape.num_blocks(); ++k) cs.push_back(uni(rng));
            CentralElement c = make_central(shape, cs);
            BlockProjection b = spectral_projection(a, c, Region::below);
            BlockProjection at = spectral_projection(a, c, Region::at);
            BlockProjection ab = spectral_projection(a, c, Region::above);
            for (int k = 0; k < shape.num_blocks(); ++k) {
                std::size_t uk = static_cast<std::size_t>(k);
                REQUIRE(b.ranks[uk] + at.ranks[uk] + ab.ranks[uk] == shape.dim(k));
            }
            BlockElement sum = add(add(to_element(b), to_element(at)), to_element(ab));
            REQUIRE(max_abs(subtract(sum, identity_element(shape))) <= 1e-10);
        }
    }

    SECTION("block locality: other blocks do not change a block's projection") {
        Rng rng(78);
        AlgebraShape shape = make_shape({3, 4});
        BlockElement a = random_hermitian(shape, rng);
        CentralElement c = make_central(shape, std::vector<double>{0.3, -0.2});
        BlockProjection before = spectral_projection(a, c, Region::below);

        BlockElement perturbed = a;
        perturbed.blocks[1] = hermitian_part(complex_gaussian(4, rng));
        BlockProjection after = spectral_projection(perturbed, c, Region::below);
        REQUIRE(max_abs(Matrix(before.blocks[0] - after.blocks[0])) == 0.0);
    }

    SECTION("ranks shift by the multiplicity across a tie") {
        // with c' = c + δ below the next eigenvalue gap, the below-rank grows
        // by exactly the at-rank
        BlockElement a = diag({{1, 2, 2, 5}});
        CentralElement c = make_central(a.shape, std::vector<double>{2.0});
        int below = spectral_projection(a, c, Region::below).ranks[0];
        int at = spectral_projection(a, c, Region::at).ranks[0];
        CentralElement cp = make_central(a.shape, std::vector<double>{2.5});
        REQUIRE(spectral_projection(a, cp, Region::below).ranks[0] == below + at);
    }

    SECTION("rank shift across random tie points") {
        Rng rng(79);
        for (int trial = 0; trial < 25; ++trial) {
            int n = 2 + static_cast<int>(rng() % 8);
            std::vector<double> sp = testutil::random_spectrum(n, rng, true);
            BlockElement a = random_hermitian_with_spectrum(make_shape({n}), {sp}, rng);

            // threshold at a random eigenvalue, shifted by half the gap above
            double c = sp[rng() % sp.size()];
            double gap = 1.0;
            for (double v : sp)
                if (v > c + 1e-9) gap = std::min(gap, v - c);
            CentralElement ce = make_central(a.shape, std::vector<double>{c});
            CentralElement cp = make_central(a.shape, std::vector<double>{c + 0.5 * gap});
            int below = spectral_projection(a, ce, Region::below).ranks[0];
            int at = spectral_projection(a, ce, Region::at).ranks[0];
            REQUIRE(spectral_projection(a, cp, Region::below).ranks[0] == below + at);
            // no eigenvalue sits in the half-gap, so the above-rank is unchanged
            REQUIRE(spectral_projection(a, cp, Region::above).ranks[0] ==
                    spectral_projection(a, ce, Region::above).ranks[0]);
        }
    }
}

TEST_CASE("spectral order properties") {
    SECTION("separated thresholds on a diagonal block") {
        BlockElement a = diag({{0, 5}});
        CentralElement c1 = make_central(a.shape, std::vector<double>{1.0});
        CentralElement c2 = make_central(a.shape, std::vector<double>{4.0});
        SpectralOrderReport rep = spectral_order_check(a, c1, c2);
        REQUIRE(rep.rank_monotone);
        REQUIRE(rep.lower_bound_holds);
        REQUIRE(rep.upper_bound_holds);
        REQUIRE(rep.at_equality_holds);
        REQUIRE(rep.passed());
    }

    SECTION("central element against itself gives exact at-equality") {
        AlgebraShape shape = make_shape({3});
        CentralElement c = make_central(shape, std::vector<double>{2.0});
        BlockElement a = to_element(c);
        SpectralOrderReport rep = spectral_order_check(a, c, c);
        REQUIRE(rep.passed());
        REQUIRE(rep.at_residual <= 1e-12);
    }

    SECTION("extreme thresholds") {
        BlockElement a = diag({{-1, 0, 3}});
        CentralElement c1 = make_central(a.shape, std::vector<double>{-2.0});
        CentralElement c2 = make_central(a.shape, std::vector<double>{4.0});
        SpectralOrderReport rep = spectral_order_check(a, c1, c2);
        REQUIRE(rep.passed());
        REQUIRE(spectral_projection(a, c1, Region::below).ranks[0] == 0);
        REQUIRE(spectral_projection(a, c2, Region::above).ranks[0] == 0);
    }

    SECTION("violated precondition") {
        BlockElement a = diag({{0, 1}});
        CentralElement c1 = make_central(a.shape, std::vector<double>{1.0});
        CentralElement c2 = make_central(a.shape, std::vector<double>{0.0});
        REQUIRE_THROWS_AS(spectral_order_check(a, c1, c2), PreconditionViolated);
    }

    SECTION("random hermitians with random thresholds") {
        Rng rng(202);
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        for (int trial = 0; trial < 25; ++trial) {
            AlgebraShape shape = testutil::random_shape(rng, 7);
            BlockElement a = random_hermitian(shape, rng);
            std::vector<double> lo, hi;
            for (int k = 0; k < shape.num_blocks(); ++k) {
                double x = uni(rng), y = uni(rng);
                lo.push_back(std::min(x, y));
                hi.push_back(std::max(x, y));
            }
            SpectralOrderReport rep =
                spectral_order_check(a, make_central(shape, lo), make_central(shape, hi));
            REQUIRE(rep.passed());
        }
    }
}

TEST_CASE("singular value function") {
    SECTION("modulus then sort") {
        SingularValueFunction mu = mu_function(diag({{-3, 1, 2}}));
        REQUIRE(mu.values() == std::vector<double>{3.0, 2.0, 1.0});
    }

    SECTION("zero element") {
        SingularValueFunction mu = mu_function(zero_element(make_shape({2, 2})));
        for (double v : mu.values()) REQUIRE(v == 0.0);
        REQUIRE(mu.total_weight() == Catch::Approx(4.0));
    }

    SECTION("merged sort across blocks") {
        SingularValueFunction mu = mu_function(diag({{5}, {1, 4}}));
        REQUIRE(mu.values() == std::vector<double>{5.0, 4.0, 1.0});
    }

    SECTION("invariant under blockwise unitary conjugation") {
        Rng rng(303);
        for (int trial = 0; trial < 20; ++trial) {
            AlgebraShape shape = testutil::random_shape(rng, 6);
            BlockElement x = random_element(shape, rng);
            BlockElement u = random_unitary_element(shape, rng);
            BlockElement conj = multiply(multiply(adjoint(u), x), u);
            std::vector<double> v1 = mu_function(x).values();
            std::vector<double> v2 = mu_function(conj).values();
            REQUIRE(v1.size() == v2.size());
            for (std::size_t i = 0; i < v1.size(); ++i)
                REQUIRE(v1[i] == Catch::Approx(v2[i]).margin(1e-9 * std::max(1.0, max_abs(x))));
        }
    }

    SECTION("total weight is the trace of the identity") {
        AlgebraShape shape = make_shape({3, 1, 4});
        Rng rng(304);
        REQUIRE(mu_function(random_element(shape, rng)).total_weight() ==
                Catch::Approx(static_cast<double>(shape.total_trace())));
    }
}

TEST_CASE("degenerate eigenspaces: downstream claims are basis independent") {
    // remix a degenerate eigenspace through Haar conjugation and check the
    // at-projection is the unique spectral projection regardless of the basis
    // chosen inside the eigenspace
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        AlgebraShape shape = make_shape({4});
        BlockElement a = random_hermitian_with_spectrum(shape, {{1.0, 2.0, 2.0, 7.0}}, rng);
        CentralElement c = make_central(shape, std::vector<double>{2.0});
        BlockProjection at = spectral_projection(a, c, Region::at);
        REQUIRE(at.ranks[0] == 2);
        BlockElement residual = multiply(subtract_central(a, c), to_element(at));
        REQUIRE(max_abs(residual) <= 1e-8);

        // conjugating by a unitary supported inside the eigenspace leaves a,
        // and therefore every spectral projection, unchanged
        SpectralData s = eigh(a);
        Matrix mix2 = haar_unitary(2, rng);
        Matrix w = Matrix::Identity(4, 4);
        std::vector<int> cols;
        for (Eigen::Index i = 0; i < 4; ++i)
            if (std::abs(s.eigenvalues[0](i) - 2.0) < 1e-8) cols.push_back(static_cast<int>(i));
        Matrix basis(4, 2);
        basis.col(0) = s.eigenvectors[0].col(cols[0]);
        basis.col(1) = s.eigenvectors[0].col(cols[1]);
        w = w + basis * (mix2 - Matrix::Identity(2, 2)) * basis.adjoint();
        BlockElement remixed =
            make_element(shape, {hermitian_part(w * a.blocks[0] * w.adjoint())});
        BlockProjection at2 = spectral_projection(remixed, c, Region::at);
        REQUIRE(max_abs(Matrix(at.blocks[0] - at2.blocks[0])) <= 1e-8);
    }
}

TEST_CASE("pure functions are safe to call concurrently") {
    Rng rng(405);
    AlgebraShape shape = make_shape({6, 5});
    const BlockElement a = random_hermitian(shape, rng);

    std::vector<std::thread> workers;
    std::vector<double> residuals(4, 1.0);
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&a, &residuals, t] {
            CommutatorReport rep = build_equality_unitary(a);
            residuals[static_cast<std::size_t>(t)] = rep.equality_residual;
        });
    for (auto& w : workers) w.join();
    for (double r : residuals) REQUIRE(r <= 1e-9 * (1.0 + max_abs(a)));
    // identical inputs give identical outputs regardless of interleaving
    REQUIRE(residuals[0] == residuals[1]);
    REQUIRE(residuals[1] == residuals[2]);
}
