#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "quartic/errors.hpp"

namespace quartic {

// All scalar arithmetic in this library is exact. Integers are
// arbitrary-precision, rationals are kept reduced with positive
// denominator (gmp maintains both invariants after canonicalize()).
using Int = mpz_class;
using Rat = mpq_class;

using Vec4I = std::array<Int, 4>;
using Vec4Q = std::array<Rat, 4>;

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses a decimal integer string; throws BadInput on garbage.
Int parse_int(const std::string& s);

/// Parses "p" or "p/q".
Rat parse_rat(const std::string& s);

std::string to_string(const Int& n);
std::string to_string(const Rat& r);

/// Exact nonnegative square root: returns nullopt unless r = s^2 for
/// some rational s >= 0.
std::optional<Rat> rational_sqrt(const Rat& r);

/// A point of P^3 in canonical form: coprime integer coordinates with
/// the first nonzero one positive.
class ProjPoint {
public:
    /// Canonicalizes an integer coordinate vector. Throws on the zero vector.
    explicit ProjPoint(Vec4I coords);

    const Vec4I& coords() const { return c_; }
    const Int& operator[](int i) const { return c_[static_cast<size_t>(i)]; }

    int zero_count() const;

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
    /// Lexicographic on canonical coordinates; a total order used for dedup.
    friend auto operator<=>(const ProjPoint& a, const ProjPoint& b) {
        for (int i = 0; i < 4; ++i) {
            if (int c = cmp(a.c_[i], b.c_[i]); c != 0)
                return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    std::string str() const;  // "x:y:z:w"

private:
    Vec4I c_;
};

/// Canonical representative of (raw0 : raw1 : raw2 : raw3).
ProjPoint normalize_point(const Vec4Q& raw);
ProjPoint normalize_point(const Vec4I& raw);

ProjPoint parse_point(const std::string& s);

/// Naive height: max |coordinate| of the canonical form.
Int height(const ProjPoint& p);

/// Decimal digit count of the height (orbit budgeting unit).
size_t height_digits(const ProjPoint& p);

/// Homogeneous binary form of fixed degree, integer coefficients with
/// content 1 and canonical sign (first nonzero coefficient positive)
/// unless identically zero. Coefficient i multiplies u^(deg-i) v^i.
template <int Deg>
struct BinaryForm {
    std::array<Int, Deg + 1> c{};

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }

    Int eval(const Int& u, const Int& v) const {
        // Horner: acc_i = u*acc_{i-1} + c[i]*v^i accumulates sum c[i] u^(Deg-i) v^i.
        Int acc = c[0], vp = 1;
        for (int i = 1; i <= Deg; ++i) {
            vp *= v;
            acc = acc * u + c[static_cast<size_t>(i)] * vp;
        }
        return acc;
    }

    static Int pow_int(const Int& b, int e) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
        return r;
    }

    void normalize();

    friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

using BinaryLinear = BinaryForm<1>;
using BinaryQuadratic = BinaryForm<2>;
using BinaryQuartic = BinaryForm<4>;

/// Projective parameter (u : v) on P^1, canonical like ProjPoint.
struct P1Point {
    Int u, v;

    P1Point(Int uu, Int vv);

    friend bool operator==(const P1Point&, const P1Point&) = default;
    friend auto operator<=>(const P1Point& a, const P1Point& b) {
        if (int c = cmp(a.u, b.u); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (int c = cmp(a.v, b.v); c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const;  // "u:v"
};

/// Splits a binary quadratic with square discriminant into two linear
/// factors, lexicographically ordered on canonical coefficient vectors.
/// Product of the factors equals the input up to a nonzero rational scalar.
/// Throws: ZeroForm for the zero form, NonSquareDiscriminant otherwise.
std::pair<BinaryLinear, BinaryLinear> split_square_disc_quadratic(const BinaryQuadratic& q);

/// Given that `root` is a zero of q of multiplicity >= 3, returns the
/// remaining projective root. Throws IdenticallyZero if q = 0 and
/// NotTripleRoot if the multiplicity is below 3.
P1Point deflate_triple_root(const BinaryQuartic& q, const P1Point& root);

/// Multiplicity of `root` as a zero of q (0..4); 5 means q == 0.
int root_multiplicity(const BinaryQuartic& q, const P1Point& root);

/// Divides out one factor (v_r u - u_r v); precondition: root divides q.
template <int Deg>
BinaryForm<Deg - 1> deflate_once(const BinaryForm<Deg>& q, const P1Point& root);

} // namespace quartic
