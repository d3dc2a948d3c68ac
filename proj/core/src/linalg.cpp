#include "quartic/linalg.hpp"

namespace quartic {

namespace {

// Reduced row echelon form; returns pivot column per row.
std::vector<size_t> rref(QMat& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = rows;
        for (size_t i = r; i < rows; ++i) {
            if (m[i][c] != 0) {
                pr = i;
                break;
            }
        }
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::optional<QVec> solve_linear(QMat m, QVec b) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto pivots = rref(m);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    QVec x(cols, Rat(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = m[i][cols];
    return x;
}

std::vector<QVec> kernel_basis(QMat m) {
    size_t cols = m.empty() ? 0 : m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        QVec v(cols, Rat(0));
        v[free_c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t matrix_rank(QMat m) { return rref(m).size(); }

Vec4I integral_vec4(const QVec& v) {
    require(v.size() == 4, ErrorKind::Internal, "integral_vec4: size");
    Int lcm = 1;
    for (const auto& r : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    Vec4I out;
    Int content = 0;
    for (size_t i = 0; i < 4; ++i) {
        Rat s = v[i] * Rat(lcm);
        out[i] = s.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[i].get_mpz_t());
    }
    require(content != 0, ErrorKind::Internal, "integral_vec4: zero vector");
    for (auto& x : out) x /= content;
    for (const auto& x : out) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : out) y = -y;
            break;
        }
    }
    return out;
}

} // namespace quartic
