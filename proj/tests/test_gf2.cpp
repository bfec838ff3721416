#include "olenc/gf2.hpp"

#include <doctest.h>

#include <stdexcept>

#include <bit>
#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

using olenc::GenPoly;

namespace
{

// Test-side carry-less multiply, independent of the library's arithmetic.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    for (int i = 0; b >> i; ++i)
        if ((b >> i) & 1u)
            out ^= a << i;
    return out;
}

// Every reducible monic polynomial of the degree, as a product table.
std::set<std::uint64_t> reducible_masks(int degree)
{
    std::set<std::uint64_t> out;
    for (int da = 1; da <= degree / 2; ++da)
    {
        const int db = degree - da;
        for (std::uint64_t a = std::uint64_t{1} << da; a < std::uint64_t{1} << (da + 1); ++a)
            for (std::uint64_t b = std::uint64_t{1} << db; b < std::uint64_t{1} << (db + 1); ++b)
                out.insert(clmul(a, b));
    }
    return out;
}

// Order of x in GF(2)[x]/(p) by walking multiples, no factorization.
// Returns 0 when x never reaches 1 (x not invertible mod p).
std::uint64_t order_of_x(std::uint64_t mask)
{
    const int n = std::bit_width(mask) - 1;
    std::uint64_t acc = 1;
    for (std::uint64_t k = 1; k <= std::uint64_t{1} << n; ++k)
    {
        acc <<= 1; // acc = x^k mod p after reduction
        if (acc >> n)
            acc ^= mask;
        if (acc == 1)
            return k;
    }
    return 0;
}

// phi(2^n - 1) by trial-division factorization.
std::uint64_t phi_naive(int n)
{
    std::uint64_t m = (std::uint64_t{1} << n) - 1;
    std::uint64_t phi = 1;
    for (std::uint64_t d = 2; d * d <= m; ++d)
    {
        if (m % d)
            continue;
        std::uint64_t power = 1;
        while (m % d == 0)
        {
            m /= d;
            power *= d;
        }
        phi *= power - power / d;
    }
    if (m > 1)
        phi *= m - 1;
    return phi;
}

bool is_prime_naive(std::uint64_t m)
{
    if (m < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("caret notation round trips and orders terms")
{
    CHECK(GenPoly::parse("x^3+x+1").mask() == 0b1011);
    CHECK(GenPoly::parse("x^3+x^2+1").mask() == 0b1101);
    CHECK(GenPoly::parse("1").mask() == 1);
    CHECK(GenPoly::parse("x+1").str() == "x+1");
    CHECK(GenPoly{0b1011}.str() == "x^3+x+1");
    CHECK(GenPoly::parse("0x1b").mask() == 0x1b);
    CHECK(GenPoly::parse("0b1101").mask() == 0b1101);
    CHECK(GenPoly::parse("19").mask() == 19);
    for (const std::uint64_t mask : {0b11ull, 0b1011ull, 0x11dull, (1ull << 40) | 5})
    {
        const GenPoly p{mask};
        CHECK(GenPoly::parse(p.str()) == p);
    }
    CHECK_THROWS_AS((void)GenPoly::parse("x^3+y"), std::invalid_argument);
    CHECK_THROWS_AS((void)GenPoly{0}, std::invalid_argument);
}

TEST_CASE("irreducibility agrees with the product-table oracle")
{
    for (int n = 2; n <= 12; ++n)
    {
        const auto products = reducible_masks(n);
        for (std::uint64_t m = std::uint64_t{1} << n; m < std::uint64_t{1} << (n + 1); ++m)
        {
            const bool expect = products.find(m) == products.end();
            CAPTURE(n);
            CAPTURE(m);
            CHECK(olenc::is_irreducible(GenPoly{m}) == expect);
        }
    }
}

TEST_CASE("primitivity agrees with the order-walk oracle")
{
    for (int n = 2; n <= 11; ++n)
    {
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t m = std::uint64_t{1} << n; m < std::uint64_t{1} << (n + 1); ++m)
        {
            const GenPoly p{m};
            const bool expect =
                (m & 1u) && olenc::is_irreducible(p) && order_of_x(m) == full;
            CAPTURE(m);
            CHECK(olenc::is_primitive(p) == expect);
        }
    }
}

TEST_CASE("degree-3 generators are exactly the two known ones")
{
    const auto polys = olenc::enumerate_primitive(3);
    REQUIRE(polys.size() == 2);
    CHECK(polys[0] == GenPoly::parse("x^3+x+1"));
    CHECK(polys[1] == GenPoly::parse("x^3+x^2+1"));
}

TEST_CASE("irreducible but non-primitive: x^4+x^3+x^2+x+1")
{
    const GenPoly p = GenPoly::parse("x^4+x^3+x^2+x+1");
    CHECK(olenc::is_irreducible(p));
    CHECK_FALSE(olenc::is_primitive(p));
    CHECK(order_of_x(p.mask()) == 5);
}

TEST_CASE("enumeration matches the oracle list and the count formula")
{
    for (int n = 2; n <= 11; ++n)
    {
        std::vector<GenPoly> expect;
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t m = std::uint64_t{1} << n; m < std::uint64_t{1} << (n + 1); ++m)
            if ((m & 1u) && olenc::is_irreducible(GenPoly{m}) && order_of_x(m) == full)
                expect.emplace_back(m);

        CHECK(olenc::enumerate_primitive(n) == expect);
        CHECK(olenc::enumerate_primitive(n, 1) == expect); // serial path
        CHECK(olenc::max_primitive_count(n) == expect.size());
        CHECK(expect.size() == phi_naive(n) / std::uint64_t(n));
    }
}

TEST_CASE("count formula against naive phi into the pollard range")
{
    for (int n = 12; n <= 40; n += 7)
        CHECK(olenc::max_primitive_count(n) == phi_naive(n) / std::uint64_t(n));
    CHECK(olenc::max_primitive_count(2) == 1);
    CHECK(olenc::max_primitive_count(4) == 2);
    CHECK(olenc::max_primitive_count(5) == 6);
    CHECK(olenc::max_primitive_count(7) == 18);
}

TEST_CASE("degree bounds are rejected")
{
    CHECK_THROWS_AS((void)olenc::enumerate_primitive(1), std::domain_error);
    CHECK_THROWS_AS((void)olenc::enumerate_primitive(33), std::domain_error);
    CHECK_THROWS_AS((void)olenc::max_primitive_count(1), std::domain_error);
    CHECK_THROWS_AS((void)olenc::max_primitive_count(65), std::domain_error);
}

TEST_CASE("factorization reconstructs and yields primes")
{
    const std::uint64_t samples[] = {
        2,
        600851475143ull,              // 71 * 839 * 1471 * 6857
        (std::uint64_t{1} << 61) - 1, // Mersenne prime
        1000003ull * 1000033ull,
        1ull << 40,
        3 * 3 * 5 * 5 * 78137ull,
    };
    for (const std::uint64_t m : samples)
    {
        std::uint64_t back = 1;
        std::uint64_t last = 0;
        for (const auto& [q, e] : olenc::factor_u64(m))
        {
            CHECK(q > last); // ascending, so also distinct
            last = q;
            CHECK(e >= 1);
            if (q < 2'000'000)
                CHECK(is_prime_naive(q));
            for (int i = 0; i < e; ++i)
                back *= q;
        }
        CHECK(back == m);
    }
    CHECK(olenc::factor_u64(1).empty());
    const auto big = olenc::factor_u64((std::uint64_t{1} << 61) - 1);
    REQUIRE(big.size() == 1);
    CHECK(big[0].first == 2305843009213693951ull);
}

TEST_CASE("polynomal list file round trip")
{
    const auto polys = olenc::enumerate_primitive(5);
    REQUIRE(polys.size() == 6);
    std::stringstream io;
    io << "# degree 5 generators\n";
    olenc::write_poly_list(io, polys);
    CHECK(olenc::read_poly_list(io) == polys);
}
