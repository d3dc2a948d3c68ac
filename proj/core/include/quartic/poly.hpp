#pragma once

#include <map>

#include "quartic/exact.hpp"

namespace quartic {

/// Sparse polynomial in up to four variables over the rationals. The term
/// map is ordered, so iteration (and everything derived from it) is
/// deterministic. Small degrees only; no asymptotic cleverness.
class MPoly {
public:
    using Exp = std::array<int, 4>;

    MPoly() = default;

    static MPoly constant(const Rat& c);
    static MPoly var(int i, int power = 1);
    static MPoly monomial(const Exp& e, const Rat& c);

    bool is_zero() const { return t_.empty(); }
    const std::map<Exp, Rat>& terms() const { return t_; }

    /// Degree in variable i (-1 for the zero polynomial).
    int degree(int i) const;

    /// Polynomial coefficient of var(i)^power (the other variables survive).
    MPoly coeff_of(int i, int power) const;

    Rat eval(const std::array<Rat, 4>& x) const;

    MPoly pow(int e) const;

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Rat& c, const MPoly& a);

    friend bool operator==(const MPoly&, const MPoly&) = default;

private:
    void add_term(const Exp& e, const Rat& c);
    std::map<Exp, Rat> t_;
};

/// Reads off a homogeneous binary form of degree Deg in variables (u_idx,
/// v_idx) of p, clearing denominators. Throws if p has terms outside that
/// shape.
template <int Deg>
BinaryForm<Deg> to_binary_form(const MPoly& p, int u_idx, int v_idx);

extern template BinaryForm<1> to_binary_form<1>(const MPoly&, int, int);
extern template BinaryForm<2> to_binary_form<2>(const MPoly&, int, int);
extern template BinaryForm<3> to_binary_form<3>(const MPoly&, int, int);
extern template BinaryForm<4> to_binary_form<4>(const MPoly&, int, int);

} // namespace quartic
