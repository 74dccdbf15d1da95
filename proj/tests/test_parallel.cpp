#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lamq/parallel.hpp"
#include "lamq/verify.hpp"

using namespace lamq;

TEST_CASE("parallel find-min matches a serial scan") {
    std::vector<int> data(10'000, 0);
    data[137] = 1;
    data[138] = 1;
    data[9000] = 1;
    std::size_t got = parallel_find_min_index(data.size(), [&](std::size_t i) {
        return data[i] == 1;
    });
    CHECK(got == 137);
    CHECK(parallel_find_min_index(100, [](std::size_t) { return false; }) == npos_index);
}

TEST_CASE("subspace scans: parallel equals the serial reference") {
    for (const char* spec : {"Fp:3", "Fp:2"}) {
        Field f = Field::make(spec, spec[3] == '3' ? "2" : "1");
        LambdaContext ctx(f);
        const Module& reg = ctx.regular(Side::left);
        for (std::size_t d : {1, 2, 3}) {
            SubspaceScan serial = enumerate_submodules_serial(reg, d, 50'000'000ULL);
            SubspaceScan par = enumerate_submodules(reg, d, 50'000'000ULL);
            CHECK(serial.inspected == par.inspected);
            REQUIRE(serial.submodule_bases.size() == par.submodule_bases.size());
            for (std::size_t i = 0; i < serial.submodule_bases.size(); ++i)
                CHECK(serial.submodule_bases[i] == par.submodule_bases[i]);
        }
    }
}

TEST_CASE("classification sweep is schedule independent") {
    Field f = Field::make("Fp:5", "2");
    LambdaContext ctx(f);
    std::vector<ProjPoint> grid = default_grid(f);
    std::vector<ClassificationReport> serial(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        serial[i] = classify_computational(ctx, grid[i], Side::left, 4);
    std::vector<ClassificationReport> par(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        par[i] = classify_computational(ctx, grid[i], Side::left, 4);
    }, 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::string why;
        CHECK(reports_consistent(serial[i], par[i], &why));
    }
}

TEST_CASE("isomorphism witnesses are reproducible") {
    Field f = Field::make("Q", "2");
    LambdaContext ctx(f);
    Module a = syzygy(ctx.make_M(ProjPoint::parse(f, "1,1,2"), Side::left)).syz;
    Module b = ctx.make_M(ProjPoint::parse(f, "1,2,-1"), Side::left);
    IsoResult r1 = is_isomorphic(a, b);
    IsoResult r2 = is_isomorphic(a, b);
    REQUIRE(r1.yes());
    REQUIRE(r2.yes());
    CHECK(*r1.witness == *r2.witness);
}
