#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qn/fpkernels.hpp"

#include <random>
#include <vector>

using namespace qn;

namespace {

std::vector<uint16_t> random_residues(size_t n, uint16_t p, uint32_t seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<uint32_t> d(0, p - 1u);
    std::vector<uint16_t> v(n);
    for (auto& x : v)
        x = static_cast<uint16_t>(d(rng));
    return v;
}

} // namespace

TEST_CASE("simd kernels agree with the scalar reference")
{
    const auto& scalar = kernels_for(Isa::Scalar);
    const size_t lengths[] = {0, 1, 3, 15, 16, 17, 33, 64, 257, 1000};
    const int primes[] = {2, 3, 5, 7, 13, 31, 97};
    for (Isa isa : available_isas()) {
        if (isa == Isa::Scalar)
            continue;
        const auto& K = kernels_for(isa);
        INFO("isa = " << isa_name(isa));
        uint32_t seed = 1;
        for (int pr : primes) {
            FpCtx f(pr);
            for (size_t n : lengths) {
                for (uint16_t c = 0; c < f.p; c = static_cast<uint16_t>(c + (f.p > 7 ? 13 : 1))) {
                    auto dst1 = random_residues(n, f.p, seed);
                    auto src = random_residues(n, f.p, seed + 1);
                    auto dst2 = dst1;
                    scalar.axpy(dst1.data(), src.data(), n, c, f);
                    K.axpy(dst2.data(), src.data(), n, c, f);
                    REQUIRE(dst1 == dst2);
                    auto s1 = random_residues(n, f.p, seed + 2);
                    auto s2 = s1;
                    scalar.scale(s1.data(), n, c, f);
                    K.scale(s2.data(), n, c, f);
                    REQUIRE(s1 == s2);
                    ++seed;
                }
            }
        }
    }
}

TEST_CASE("scalar kernel semantics")
{
    FpCtx f(7);
    std::vector<uint16_t> dst = {1, 6, 0, 3};
    std::vector<uint16_t> src = {2, 5, 4, 6};
    kernels_for(Isa::Scalar).axpy(dst.data(), src.data(), dst.size(), 3, f);
    CHECK(dst == std::vector<uint16_t>{0, 0, 5, 0});
    kernels_for(Isa::Scalar).scale(dst.data(), dst.size(), 4, f);
    CHECK(dst == std::vector<uint16_t>{0, 0, 6, 0});
}

TEST_CASE("isa selection round-trips")
{
    Isa before = active_isa();
    for (Isa isa : available_isas()) {
        select_isa(isa);
        CHECK(active_isa() == isa);
    }
    select_isa(before);
}
