#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace olenc
{

/// Binary generator polynomial stored as a coefficient bitmask: bit k holds
/// the coefficient of x^k. The bitmask is the canonical encoding; the caret
/// form ("x^3+x+1") is what files and the CLI exchange.
class GenPoly
{
public:
    /// \param mask coefficient bitmask; must be nonzero
    explicit GenPoly(std::uint64_t mask);

    /// Accepts caret notation ("x^3+x+1", "x+1", "1") or an integer bitmask
    /// in decimal, 0x... or 0b... form.
    static GenPoly parse(std::string_view text);

    int degree() const noexcept;
    std::uint64_t mask() const noexcept { return mask_; }
    bool has_term(int exponent) const noexcept
    {
        return exponent >= 0 && exponent < 64 && ((mask_ >> exponent) & 1u);
    }
    bool has_constant_term() const noexcept { return mask_ & 1u; }

    std::string str() const;

    bool operator==(const GenPoly&) const = default;
    auto operator<=>(const GenPoly&) const = default; // bitmask order

private:
    std::uint64_t mask_;
};

/// Trial division by every odd polynomial of degree 1..deg(p)/2.
/// \pre p monic, degree >= 1
bool is_irreducible(const GenPoly& p);

/// Irreducible and the residue class of x generates the full multiplicative
/// group, i.e. ord(x) = 2^n - 1. The order check walks the prime factors of
/// 2^n - 1, so it needs a successful factorization (degree <= 63).
/// \pre p monic, degree >= 1
bool is_primitive(const GenPoly& p);

/// All primitive polynomials of the given degree, ascending by bitmask.
/// Exhaustive scan over 2^(degree-1) candidates; degree must be in [2, 32].
/// `threads` <= 0 uses the OpenMP default, 1 forces the serial path.
std::vector<GenPoly> enumerate_primitive(int degree, int threads = 0);

/// phi(2^degree - 1) / degree, the number of primitive polynomials, from the
/// factorization of 2^degree - 1. Supports degree in [2, 64].
std::uint64_t max_primitive_count(int degree);

/// Prime factorization of a 64-bit integer (Miller-Rabin + Pollard-Brent),
/// as (prime, exponent) pairs in ascending prime order.
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t m);

// Polynomial list files: one caret-notation polynomial per line,
// '#' starts a comment, blank lines ignored.
std::vector<GenPoly> read_poly_list(std::istream& in);
void write_poly_list(std::ostream& out, const std::vector<GenPoly>& polys);

} // namespace olenc
