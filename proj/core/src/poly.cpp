#include "quartic/poly.hpp"

namespace quartic {

void MPoly::add_term(const Exp& e, const Rat& c) {
    if (c == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second == 0) t_.erase(it);
}

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    p.add_term({0, 0, 0, 0}, c);
    return p;
}

MPoly MPoly::var(int i, int power) {
    require(i >= 0 && i < 4 && power >= 0, ErrorKind::Internal, "MPoly::var");
    Exp e{};
    e[static_cast<size_t>(i)] = power;
    MPoly p;
    p.add_term(e, Rat(1));
    return p;
}

MPoly MPoly::monomial(const Exp& e, const Rat& c) {
    MPoly p;
    p.add_term(e, c);
    return p;
}

int MPoly::degree(int i) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[static_cast<size_t>(i)]);
    return d;
}

MPoly MPoly::coeff_of(int i, int power) const {
    MPoly out;
    for (const auto& [e, c] : t_) {
        if (e[static_cast<size_t>(i)] != power) continue;
        Exp r = e;
        r[static_cast<size_t>(i)] = 0;
        out.add_term(r, c);
    }
    return out;
}

Rat MPoly::eval(const std::array<Rat, 4>& x) const {
    Rat acc = 0;
    for (const auto& [e, c] : t_) {
        Rat term = c;
        for (size_t i = 0; i < 4; ++i)
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        acc += term;
    }
    return acc;
}

MPoly MPoly::pow(int e) const {
    require(e >= 0, ErrorKind::Internal, "MPoly::pow");
    MPoly acc = constant(Rat(1));
    for (int k = 0; k < e; ++k) acc = acc * *this;
    return acc;
}

MPoly MPoly::operator-() const {
    MPoly out;
    for (const auto& [e, c] : t_) out.t_.emplace(e, -c);
    return out;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly out = a;
    for (const auto& [e, c] : b.t_) out.add_term(e, c);
    return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly out = a;
    for (const auto& [e, c] : b.t_) out.add_term(e, -c);
    return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ea, ca] : a.t_) {
        for (const auto& [eb, cb] : b.t_) {
            MPoly::Exp e;
            for (size_t i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

MPoly operator*(const Rat& c, const MPoly& a) {
    MPoly out;
    if (c == 0) return out;
    for (const auto& [e, x] : a.t_) out.t_.emplace(e, c * x);
    return out;
}

template <int Deg>
BinaryForm<Deg> to_binary_form(const MPoly& p, int u_idx, int v_idx) {
    std::array<Rat, Deg + 1> q{};
    for (const auto& [e, c] : p.terms()) {
        int du = e[static_cast<size_t>(u_idx)];
        int dv = e[static_cast<size_t>(v_idx)];
        bool pure = du + dv == Deg;
        for (int i = 0; i < 4; ++i)
            if (i != u_idx && i != v_idx && e[static_cast<size_t>(i)] != 0) pure = false;
        require(pure, ErrorKind::Internal, "to_binary_form: stray term");
        q[static_cast<size_t>(dv)] += c;
    }
    Int lcm = 1;
    for (const auto& x : q) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    BinaryForm<Deg> f;
    for (size_t i = 0; i <= Deg; ++i) {
        Rat v = q[i] * Rat(lcm);
        f.c[i] = v.get_num();
    }
    f.normalize();
    return f;
}

template BinaryForm<1> to_binary_form<1>(const MPoly&, int, int);
template BinaryForm<2> to_binary_form<2>(const MPoly&, int, int);
template BinaryForm<3> to_binary_form<3>(const MPoly&, int, int);
template BinaryForm<4> to_binary_form<4>(const MPoly&, int, int);

} // namespace quartic
