#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "quartic/exact.hpp"

namespace quartic {

/// Diagonal quartic surface a x^4 + b y^4 + c z^4 + d w^4 = 0 whose
/// coefficient product is a nonzero rational square, together with the
/// certified positive square root N of that product.
class Surface {
public:
    /// Validates the coefficients; throws ZeroCoefficient / ProductNotSquare.
    static Surface make(const Vec4Q& coeffs);

    const Vec4Q& coeffs() const { return c_; }
    const Rat& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    const Rat& sqrt_abcd() const { return n_; }

    /// Exact evaluation of the quartic form; integer-valued after clearing
    /// denominators once at construction.
    Int quartic_at(const ProjPoint& p) const;
    bool contains(const ProjPoint& p) const;

    /// Quadric image coefficients: same vector, for a x^2 + ... = 0.
    Int quadric_at(const Vec4I& x) const;

    /// Integer-cleared, content-one coefficient vector.
    const Vec4I& int_coeffs() const { return ic_; }

    std::string str() const;  // "a,b,c,d"

    friend bool operator==(const Surface&, const Surface&) = default;

private:
    Surface() = default;
    Vec4Q c_;
    Vec4I ic_;
    Rat n_;
};

Surface parse_surface(const std::string& spec);

enum class LinePairing : uint8_t { XY_ZW, XZ_YW, XW_YZ };

struct PointClass {
    enum Kind : uint8_t { OmegaPoint, CoordinatePlane, OnLine, Generic } kind;
    LinePairing pairing{};  // valid when kind == OnLine

    friend bool operator==(const PointClass&, const PointClass&) = default;
};

std::string to_string(const PointClass& pc);

/// Classification precedence: Omega > CoordinatePlane > OnLine > Generic.
/// Throws NotOnSurface when P is off the surface.
PointClass classify_point(const Surface& s, const ProjPoint& p);

/// Sign automorphism: negates a subset of coordinates. Projectively the
/// subset is only defined modulo complementation; the canonical mask
/// excludes w (bit 3 clear), giving the 8 distinct elements of the group.
class SignAut {
public:
    explicit SignAut(unsigned mask) : mask_(canonical(mask)) {}

    unsigned mask() const { return mask_; }
    bool negates(int coord) const { return (mask_ >> coord) & 1u; }

    SignAut compose(const SignAut& o) const { return SignAut(mask_ ^ o.mask_); }

    /// All 8 projectively distinct sign automorphisms, identity first.
    static std::array<SignAut, 8> all();
    /// The three double flips sigma_uv with {u,v} a 2-subset (mod complement).
    static std::array<SignAut, 3> double_flips();
    /// Single-coordinate flips sigma_x, sigma_y, sigma_z, sigma_w.
    static std::array<SignAut, 4> single_flips();

    friend bool operator==(const SignAut&, const SignAut&) = default;

private:
    static unsigned canonical(unsigned m) {
        m &= 0xFu;
        return (m & 0x8u) ? (m ^ 0xFu) : m;
    }
    unsigned mask_;
};

ProjPoint apply_sign_aut(const SignAut& sigma, const ProjPoint& p);

/// Gradient plane of the quartic at P, content-normalized.
Vec4I tangent_plane(const Surface& s, const ProjPoint& p);

/// Coordinate-scaling transport sending P (all coordinates nonzero) to
/// (1:1:1:1) on the sum-zero surface with a' = a x0^4 etc.
struct SumZeroTransport {
    Surface target;
    Vec4Q forward_scale;   // X_i -> X_i / p_i
    Vec4Q backward_scale;  // X_i -> p_i * X_i

    ProjPoint forward(const ProjPoint& p) const;
    ProjPoint backward(const ProjPoint& p) const;
};

SumZeroTransport transport_sum_zero(const Surface& s, const ProjPoint& p);

} // namespace quartic
