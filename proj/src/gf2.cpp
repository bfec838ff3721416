#include "olenc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <istream>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace olenc
{

namespace
{
    int mask_degree(std::uint64_t mask)
    {
        return std::bit_width(mask) - 1;
    }

    /// Remainder of a mod m over GF(2), both as coefficient bitmasks.
    std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m)
    {
        const int dm = mask_degree(m);
        while (a != 0 && mask_degree(a) >= dm)
            a ^= m << (mask_degree(a) - dm);
        return a;
    }

    /// Carry-less product reduced mod m. Operand degrees stay below 63, the
    /// intermediate product is held in 128 bits.
    std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
    {
        unsigned __int128 prod = 0;
        while (b != 0)
        {
            const int k = std::countr_zero(b);
            prod ^= static_cast<unsigned __int128>(a) << k;
            b &= b - 1;
        }

        const int dm = mask_degree(m);
        const unsigned __int128 mm = static_cast<unsigned __int128>(m);
        const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        int top = hi ? 64 + mask_degree(hi)
                     : mask_degree(static_cast<std::uint64_t>(prod));
        while (prod != 0 && top >= dm)
        {
            prod ^= mm << (top - dm);
            const std::uint64_t h = static_cast<std::uint64_t>(prod >> 64);
            top = h ? 64 + mask_degree(h)
                    : mask_degree(static_cast<std::uint64_t>(prod));
        }
        return static_cast<std::uint64_t>(prod);
    }

    /// x^e mod m over GF(2).
    std::uint64_t poly_pow_x(std::uint64_t e, std::uint64_t m)
    {
        std::uint64_t result = poly_mod(1, m);
        std::uint64_t base = poly_mod(2, m);
        while (e != 0)
        {
            if (e & 1u)
                result = poly_mulmod(result, base, m);
            base = poly_mulmod(base, base, m);
            e >>= 1;
        }
        return result;
    }

    bool irreducible_mask(std::uint64_t mask)
    {
        const int n = mask_degree(mask);
        if (n == 1)
            return true;
        if ((mask & 1u) == 0)
            return false; // divisible by x
        // p(0) = 1, so any divisor has a nonzero constant term: odd masks only.
        for (std::uint64_t d = 3; mask_degree(d) <= n / 2; d += 2)
            if (poly_mod(mask, d) == 0)
                return false;
        return true;
    }

    std::uint64_t all_ones(int n)
    {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

    bool primitive_mask(std::uint64_t mask, std::uint64_t group_order,
                        const std::vector<std::uint64_t>& prime_factors)
    {
        if ((mask & 1u) == 0)
            return false;
        if (!irreducible_mask(mask))
            return false;
        for (const std::uint64_t q : prime_factors)
            if (poly_pow_x(group_order / q, mask) == 1)
                return false;
        return true;
    }

    // ---- 64-bit integer factoring -------------------------------------

    std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m)
    {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % m);
    }

    std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m)
    {
        std::uint64_t r = 1 % m;
        a %= m;
        while (e != 0)
        {
            if (e & 1u)
                r = mulmod_u64(r, a, m);
            a = mulmod_u64(a, a, m);
            e >>= 1;
        }
        return r;
    }

    bool is_prime_u64(std::uint64_t n)
    {
        if (n < 2)
            return false;
        for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull,
                                      17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        {
            if (n % p == 0)
                return n == p;
        }
        const int s = std::countr_zero(n - 1);
        const std::uint64_t d = (n - 1) >> s;
        // Deterministic Miller-Rabin witness set for all 64-bit integers.
        for (const std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull,
                                      17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        {
            std::uint64_t x = powmod_u64(a, d, n);
            if (x == 1 || x == n - 1)
                continue;
            bool composite = true;
            for (int i = 1; i < s; ++i)
            {
                x = mulmod_u64(x, x, n);
                if (x == n - 1)
                {
                    composite = false;
                    break;
                }
            }
            if (composite)
                return false;
        }
        return true;
    }

    std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
    {
        while (b != 0)
        {
            a %= b;
            std::swap(a, b);
        }
        return a;
    }

    /// Pollard-Brent rho; n must be composite and odd.
    std::uint64_t pollard_rho(std::uint64_t n)
    {
        for (std::uint64_t c = 1;; ++c)
        {
            std::uint64_t x = 2, y = 2, d = 1;
            std::uint64_t saved = 2;
            int power = 1, lam = 1;
            while (d == 1)
            {
                if (lam == power)
                {
                    saved = x;
                    power *= 2;
                    lam = 0;
                }
                x = (mulmod_u64(x, x, n) + c) % n;
                ++lam;
                d = gcd_u64(x > saved ? x - saved : saved - x, n);
            }
            if (d != n)
                return d;
            (void)y;
        }
    }

    void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out)
    {
        if (n == 1)
            return;
        if (is_prime_u64(n))
        {
            out.push_back(n);
            return;
        }
        const std::uint64_t d = pollard_rho(n);
        factor_rec(d, out);
        factor_rec(n / d, out);
    }
} // namespace

GenPoly::GenPoly(std::uint64_t mask)
    : mask_{mask}
{
    if (mask_ == 0)
        throw std::invalid_argument{"polynomial mask must be nonzero"};
}

int GenPoly::degree() const noexcept
{
    return mask_degree(mask_);
}

GenPoly GenPoly::parse(std::string_view text)
{
    std::string s;
    for (const char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw std::invalid_argument{"empty polynomial"};

    const bool radix_prefix = s.starts_with("0x") || s.starts_with("0X") ||
                              s.starts_with("0b") || s.starts_with("0B");
    const bool integer_form =
        radix_prefix ||
        (s.find('x') == std::string::npos && s.find('X') == std::string::npos &&
         (s.size() > 1 || s[0] != '1'));
    if (integer_form)
    {
        int base = 10;
        std::size_t pos = 0;
        if (s.starts_with("0x") || s.starts_with("0X"))
        {
            base = 16;
            pos = 2;
        }
        else if (s.starts_with("0b") || s.starts_with("0B"))
        {
            base = 2;
            pos = 2;
        }
        std::size_t used = 0;
        const std::uint64_t mask = std::stoull(s.substr(pos), &used, base);
        if (pos + used != s.size())
            throw std::invalid_argument{"invalid polynomial \"" + std::string{text} + "\""};
        return GenPoly{mask};
    }

    std::uint64_t mask = 0;
    std::size_t start = 0;
    while (start <= s.size())
    {
        const std::size_t plus = s.find('+', start);
        const std::string term =
            s.substr(start, plus == std::string::npos ? plus : plus - start);
        start = plus == std::string::npos ? s.size() + 1 : plus + 1;

        int exponent = -1;
        if (term == "1")
            exponent = 0;
        else if (term == "x" || term == "X")
            exponent = 1;
        else if ((term.starts_with("x^") || term.starts_with("X^")) && term.size() > 2)
        {
            std::size_t used = 0;
            const unsigned long e = std::stoul(term.substr(2), &used);
            if (used + 2 != term.size() || e > 63)
                exponent = -1;
            else
                exponent = static_cast<int>(e);
        }
        if (exponent < 0)
            throw std::invalid_argument{"invalid polynomial term \"" + term + "\""};
        if ((mask >> exponent) & 1u)
            throw std::invalid_argument{"duplicate polynomial term \"" + term + "\""};
        mask |= std::uint64_t{1} << exponent;
    }
    return GenPoly{mask};
}

std::string GenPoly::str() const
{
    std::string out;
    for (int k = degree(); k >= 0; --k)
    {
        if (!has_term(k))
            continue;
        if (!out.empty())
            out += '+';
        if (k == 0)
            out += '1';
        else if (k == 1)
            out += 'x';
        else
            out += "x^" + std::to_string(k);
    }
    return out;
}

bool is_irreducible(const GenPoly& p)
{
    if (p.degree() < 1)
        throw std::domain_error{"is_irreducible: degree must be >= 1"};
    return irreducible_mask(p.mask());
}

bool is_primitive(const GenPoly& p)
{
    const int n = p.degree();
    if (n < 1)
        throw std::domain_error{"is_primitive: degree must be >= 1"};
    if (!p.has_constant_term())
        return false;
    if (n == 1)
        return true; // x+1, the only candidate with constant term
    if (!irreducible_mask(p.mask()))
        return false;

    const std::uint64_t order = all_ones(n);
    std::vector<std::uint64_t> primes;
    for (const auto& [q, e] : factor_u64(order))
        primes.push_back(q);
    for (const std::uint64_t q : primes)
        if (poly_pow_x(order / q, p.mask()) == 1)
            return false;
    return true;
}

std::vector<GenPoly> enumerate_primitive(int degree, int threads)
{
    if (degree < 2 || degree > 32)
        throw std::domain_error{
            "enumerate_primitive: degree must be in [2, 32], got " +
            std::to_string(degree)};

    const std::uint64_t order = all_ones(degree);
    std::vector<std::uint64_t> primes;
    for (const auto& [q, e] : factor_u64(order))
        primes.push_back(q);

    const std::uint64_t high = std::uint64_t{1} << degree;
    const std::int64_t middle_count = std::int64_t{1} << (degree - 1);
    std::vector<std::uint64_t> hits;

#ifdef _OPENMP
    if (threads != 1)
    {
        const int team = threads > 0 ? threads : omp_get_max_threads();
        std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(team));
#pragma omp parallel num_threads(team)
        {
            auto& mine = local[std::size_t(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t middle = 0; middle < middle_count; ++middle)
            {
                const std::uint64_t mask =
                    high | (std::uint64_t(middle) << 1) | 1u;
                if (primitive_mask(mask, order, primes))
                    mine.push_back(mask);
            }
        }
        for (const auto& v : local)
            hits.insert(hits.end(), v.begin(), v.end());
        std::sort(hits.begin(), hits.end());
    }
    else
#endif
    {
        (void)threads;
        for (std::int64_t middle = 0; middle < middle_count; ++middle)
        {
            const std::uint64_t mask = high | (std::uint64_t(middle) << 1) | 1u;
            if (primitive_mask(mask, order, primes))
                hits.push_back(mask);
        }
    }

    std::vector<GenPoly> out;
    out.reserve(hits.size());
    for (const std::uint64_t m : hits)
        out.emplace_back(m);
    return out;
}

std::uint64_t max_primitive_count(int degree)
{
    if (degree < 2 || degree > 64)
        throw std::domain_error{
            "max_primitive_count: degree must be in [2, 64], got " +
            std::to_string(degree)};

    std::uint64_t phi = 1;
    for (const auto& [p, e] : factor_u64(all_ones(degree)))
    {
        phi *= p - 1;
        for (int i = 1; i < e; ++i)
            phi *= p;
    }
    // phi(2^n - 1) is always divisible by n: every primitive element yields
    // a degree-n minimal polynomial with n distinct conjugate roots.
    return phi / std::uint64_t(degree);
}

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t m)
{
    if (m == 0)
        throw std::domain_error{"factor_u64: zero has no factorization"};

    std::vector<std::uint64_t> primes;
    for (const std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                                  19ull, 23ull, 29ull, 31ull, 37ull, 41ull, 43ull})
    {
        while (m % p == 0)
        {
            primes.push_back(p);
            m /= p;
        }
    }
    factor_rec(m, primes);
    std::sort(primes.begin(), primes.end());

    std::vector<std::pair<std::uint64_t, int>> out;
    for (const std::uint64_t p : primes)
    {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<GenPoly> read_poly_list(std::istream& in)
{
    std::vector<GenPoly> out;
    std::string line;
    while (std::getline(in, line))
    {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string trimmed;
        for (const char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                trimmed += c;
        if (!trimmed.empty())
            out.push_back(GenPoly::parse(trimmed));
    }
    return out;
}

void write_poly_list(std::ostream& out, const std::vector<GenPoly>& polys)
{
    for (const GenPoly& p : polys)
        out << p.str() << '\n';
}

} // namespace olenc
