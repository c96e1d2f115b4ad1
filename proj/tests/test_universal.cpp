#include "doctest.h"

#include "niep/error.hpp"
#include "niep/linalg.hpp"
#include "niep/universal.hpp"
#include "niep/verify.hpp"
#include "support.hpp"

using namespace niep;
using oracle::mat;

namespace {

Spectrum<Rational> spec(std::initializer_list<long> xs)
{
    std::vector<Rational> v;
    for (long x : xs)
        v.emplace_back(x);
    return normalize_real(v);
}

Errc code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::InvalidInput;
}

/// (2/3) ones(3) + I: spectrum {3, 1, 1}.
Matrix<Rational> rank_one_plus_identity()
{
    Matrix<Rational> a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            a(i, j) = Rational(i == j ? 5 : 2, 3);
    return a;
}

/// Positive 5x5 with spectrum {20, -1+i, -1-i, -1+i, -1-i}: U diag(20, R, R) U^-1
/// with U = [e | Helmert columns].
Matrix<Rational> complex_pair_matrix()
{
    const auto u = mat({{1, 1, 1, 1, 1}, {1, -1, 1, 1, 1}, {1, 0, -2, 1, 1}, {1, 0, 0, -3, 1}, {1, 0, 0, 0, -4}});
    auto d = mat({{20, 0, 0, 0, 0}, {0, -1, -1, 0, 0}, {0, 1, -1, 0, 0}, {0, 0, 0, -1, -1}, {0, 0, 0, 1, -1}});
    return u * d * inverse(u);
}

std::vector<Complex<Rational>> complex_pair_values()
{
    using C = Complex<Rational>;
    return {C(Rational(20)), C(Rational(-1), Rational(1)), C(Rational(-1), Rational(-1)),
            C(Rational(-1), Rational(1)), C(Rational(-1), Rational(-1))};
}

} // namespace

TEST_CASE("integer partitions")
{
    CHECK(integer_partitions(3) == std::vector<Partition>{{1, 1, 1}, {2, 1}, {3}});
    CHECK(integer_partitions(1) == std::vector<Partition>{{1}});
    const std::size_t p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30};
    for (std::size_t n = 1; n < 10; ++n) {
        const auto parts = integer_partitions(n);
        CHECK(parts.size() == p[n]);
        for (const auto& q : parts) {
            std::size_t sum = 0;
            for (auto x : q)
                sum += x;
            CHECK(sum == n);
            CHECK(std::is_sorted(q.rbegin(), q.rend()));
        }
        CHECK(std::is_sorted(parts.begin(), parts.end()));
    }
}

TEST_CASE("jordan form enumeration")
{
    CHECK(enumerate_jordan_forms(spec({6, 3, 3, -5, -5})).size() == 4);
    CHECK(enumerate_jordan_forms(spec({5, 1, 1, 1})).size() == 3);
    CHECK(enumerate_jordan_forms(spec({5, 3, 1, -2})).size() == 1);
    CHECK(enumerate_jordan_forms(spec({4, 1, 1, 1, 1, 0, 0})).size() == 5 * 2);

    const auto forms = enumerate_jordan_forms(spec({5, 1, 1, 1}));
    CHECK(forms[0].entries[1].blocks == Partition{1, 1, 1});
    CHECK(forms[1].entries[1].blocks == Partition{2, 1});
    CHECK(forms[2].entries[1].blocks == Partition{3});
    CHECK(forms[1].to_string() == "5:{1} 1:{2,1}");

    const auto cforms = enumerate_jordan_forms(normalize(complex_pair_values()));
    REQUIRE(cforms.size() == 2);
    for (const auto& f : cforms) {
        REQUIRE(f.entries.size() == 3);
        CHECK(f.entries[1].blocks == f.entries[2].blocks);
        CHECK(f.entries[1].value == f.entries[2].value.conj());
    }
}

TEST_CASE("eigen basis")
{
    const auto a = rank_one_plus_identity();
    const auto s = spec({3, 1, 1});
    const auto d = eigen_basis(a, s);
    CHECK(d.order[0] == Complex<Rational>(Rational(3)));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(d.S(i, 0) == d.S(0, 0));
    const auto diag = d.S_inv * to_complex(a) * d.S;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(diag(i, j) == (i == j ? d.order[i] : Complex<Rational>(Rational(0))));

    const auto d2 = eigen_basis(mat({{2, 1}, {1, 2}}), spec({3, 1}));
    CHECK(d2.S(0, 0) == d2.S(1, 0));
    CHECK(d2.S(0, 1) == -d2.S(1, 1));

    CHECK(code_of([] { eigen_basis(mat({{1, 1}, {0, 1}}), spec({1, 1})); }) == Errc::NotDiagonalizable);
}

TEST_CASE("minc realization with a 2+1 block pattern")
{
    const auto a = rank_one_plus_identity();
    const auto s = spec({3, 1, 1});
    const auto d = eigen_basis(a, s);
    JordanSpec<Rational> target{{{Complex<Rational>(Rational(3)), 1, {1}}, {Complex<Rational>(Rational(1)), 2, {2}}}};
    const auto r = minc_realize(a, d, target);
    CHECK(oracle::positive(r.matrix));
    CHECK(oracle::spectrum_matches(r.matrix, s.values));
    CHECK(oracle::power_rank(r.matrix, Rational(1), 1) == 2);
    CHECK(oracle::power_rank(r.matrix, Rational(1), 2) == 1);
    CHECK(jordan_structure(r.matrix, Complex<Rational>(Rational(1)), 2).blocks == Partition{2});

    JordanSpec<Rational> diagonal{{{Complex<Rational>(Rational(3)), 1, {1}}, {Complex<Rational>(Rational(1)), 2, {1, 1}}}};
    CHECK(minc_realize(a, d, diagonal).matrix == a);

    CHECK(code_of([&] { minc_realize(a, d, target, std::optional<Rational>(100)); }) == Errc::EpsTooLarge);
    JordanSpec<Rational> wrong{{{Complex<Rational>(Rational(3)), 1, {1}}, {Complex<Rational>(Rational(2)), 2, {2}}}};
    CHECK(code_of([&] { minc_realize(a, d, wrong); }) == Errc::InvalidInput);
}

TEST_CASE("jordan structure")
{
    const Complex<Rational> one(Rational(1));
    CHECK(jordan_structure(mat({{1, 1}, {0, 1}}), one, 2).blocks == Partition{2});
    CHECK(jordan_structure(Matrix<Rational>::identity(3), one, 3).blocks == Partition{1, 1, 1});
    const auto j = mat({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const auto chain = jordan_structure(j, one, 4);
    CHECK(chain.blocks == Partition{3, 1});
    CHECK(chain.ranks == std::vector<std::size_t>{4, 2, 1, 0, 0});
    CHECK(code_of([&] { jordan_structure(j, one, 2); }) == Errc::RankChainInconsistent);

    Matrix<double> f{{1, 1}, {0, 1}};
    CHECK(jordan_structure(f, Complex<double>(1.0), 2).blocks == Partition{2});
}

TEST_CASE("universal pipeline on {5, 1, 1, 1}")
{
    const auto s = spec({5, 1, 1, 1});
    const auto r = realize_universal(s);
    CHECK(oracle::positive(r.base.matrix));
    REQUIRE(r.forms.size() == 3);
    const Partition want[] = {{1, 1, 1}, {2, 1}, {3}};
    for (std::size_t f = 0; f < 3; ++f) {
        const auto& m = r.forms[f].matrix;
        CHECK(oracle::positive(m));
        CHECK(oracle::spectrum_matches(m, s.values));
        CHECK(r.forms[f].chains[1].blocks == want[f]);
        // independent rank chain: the nullity of M - I counts the blocks
        const std::size_t blocks = 4 - oracle::power_rank(m, Rational(1), 1);
        CHECK(blocks == want[f].size());
        CHECK(4 - oracle::power_rank(m, Rational(1), 3) == 3);
    }
}

TEST_CASE("universal pipeline with a repeated complex pair")
{
    const auto a = complex_pair_matrix();
    REQUIRE(oracle::positive(a));
    const auto s = normalize(complex_pair_values());
    REQUIRE(oracle::spectrum_matches(a, s.values));
    PositiveRealization<Rational> base{a, eigen_basis(a, s), {}};
    const auto r = realize_universal(s, base);
    REQUIRE(r.forms.size() == 2);
    for (const auto& f : r.forms) {
        CHECK(oracle::positive(f.matrix));
        CHECK(oracle::spectrum_matches(f.matrix, s.values));
        CHECK(f.chains[1].blocks == f.target.entries[1].blocks);
        CHECK(f.chains[2].blocks == f.target.entries[2].blocks);
    }
    CHECK(r.forms[0].matrix == a);
    CHECK(r.forms[1].chains[1].ranks == std::vector<std::size_t>{5, 4, 3});
}

TEST_CASE("universal pipeline reports lists without a positive diagonalizable realization")
{
    CHECK(code_of([] { realize_universal(spec({4, -1, -1, -1, -1})); }) == Errc::PositiveRealizationNotFound);
    CHECK(code_of([] { realize_universal(spec({6, 3, 3, -5, -5})); }) == Errc::PositiveRealizationNotFound);
}

TEST_CASE("universal pipeline in float mode")
{
    const auto s = normalize_real(std::vector<double>{5, 1, 1, 1});
    const auto r = realize_universal(s);
    REQUIRE(r.forms.size() == 3);
    for (const auto& f : r.forms) {
        CHECK(oracle::positive(f.matrix));
        CHECK(oracle::spectrum_matches(f.matrix, s.values));
        CHECK(f.chains[1].blocks == f.target.entries[1].blocks);
    }
}
