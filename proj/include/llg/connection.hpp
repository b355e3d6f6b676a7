#pragma once

#include "splitting.hpp"

namespace llg {

/// gamma[i][j][k] = coefficient with upper index i and lower indices (j, k),
/// all components expressions in the x block.
using Coeffs = std::vector<std::vector<std::vector<Expr>>>;

inline Coeffs make_coeffs(int n) {
    return Coeffs(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n, cst(0))));
}

/// The two flat connections of a chart.  Each is obtained from the splitting
/// of its own variant as the diagonal fiber derivative
///   gamma^i_{kj}(x) = [d_{y^k} eps^i_j(x, y)]_{y = x},
/// and the two are related by the lower-index swap
///   gamma_hat^i_{jk} = gamma_tilde^i_{kj}.
struct ConnectionPair {
    int dim = 0;
    Coeffs tilde;
    Coeffs hat;
    std::vector<Expr> chart_constraints;

    const Coeffs& of(Variant v) const { return v == Variant::Tilde ? tilde : hat; }
};

inline ConnectionPair connection_pair(const Splitting& s) {
    ConnectionPair cp;
    cp.dim = s.dim;
    cp.chart_constraints = s.chart_constraints;
    Coeffs own = make_coeffs(s.dim);

    std::map<VarRef, Expr> y_to_x;
    map_block(y_to_x, Block::Point, 1, block_vars(Block::Point, 0, s.dim));
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j)
            for (int k = 0; k < s.dim; ++k)
                own[i][k][j] = subst(diff(s.eps[i][j], point_var(1, k + 1)), y_to_x);

    Coeffs other = make_coeffs(s.dim);
    for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j)
            for (int k = 0; k < s.dim; ++k) other[i][j][k] = own[i][k][j];

    if (s.variant == Variant::Tilde) {
        cp.tilde = std::move(own);
        cp.hat = std::move(other);
    } else {
        cp.hat = std::move(own);
        cp.tilde = std::move(other);
    }
    return cp;
}

/// T^i_{jk} = gamma^i_{jk} - gamma^i_{kj}.  The two variants are negatives
/// of each other.
inline Coeffs torsion(const Coeffs& gamma) {
    const int n = static_cast<int>(gamma.size());
    Coeffs t = make_coeffs(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) t[i][j][k] = gamma[i][j][k] - gamma[i][k][j];
    return t;
}

/// Curvature of a connection,
///   R^a_{sr,b} = d_s gamma^a_{rb} - d_r gamma^a_{sb}
///              + gamma^c_{sb} gamma^a_{rc} - gamma^c_{rb} gamma^a_{sc},
/// indexed [a][s][r][b].  Vanishes exactly for both chart connections.
inline std::vector<Coeffs> curvature_one_point(const Coeffs& gamma) {
    const int n = static_cast<int>(gamma.size());
    std::vector<Coeffs> R(n, make_coeffs(n));
    for (int a = 0; a < n; ++a)
        for (int s = 0; s < n; ++s)
            for (int r = 0; r < n; ++r)
                for (int b = 0; b < n; ++b) {
                    Expr acc = diff(gamma[a][r][b], point_var(0, s + 1)) -
                               diff(gamma[a][s][b], point_var(0, r + 1));
                    for (int c = 0; c < n; ++c)
                        acc = acc + gamma[c][s][b] * gamma[a][r][c] -
                              gamma[c][r][b] * gamma[a][s][c];
                    R[a][s][r][b] = acc;
                }
    return R;
}

}  // namespace llg
