#pragma once

#include <optional>
#include <string>

#include "qmatrix.hpp"
#include "rational.hpp"
#include "tuples.hpp"

namespace llg {

/// c[k][a][b]: component k of the bracket of basis fields a and b.
struct StructureConstants {
    std::string name;
    int dim = 0;
    std::vector<std::vector<std::vector<Rat>>> c;

    static StructureConstants zeros(const std::string& name, int n) {
        return {name, n,
                std::vector<std::vector<std::vector<Rat>>>(
                    n, std::vector<std::vector<Rat>>(n, std::vector<Rat>(n, Rat(0))))};
    }

    /// Sets [e_a, e_b] component k to v, and the transposed entry to -v.
    void set(int k, int a, int b, Rat v) {
        c[k][a][b] = v;
        c[k][b][a] = -v;
    }

    bool antisymmetric() const {
        for (int k = 0; k < dim; ++k)
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b)
                    if (c[k][a][b] != -c[k][b][a]) return false;
        return true;
    }

    bool jacobi() const {
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int g = 0; g < dim; ++g)
                    for (int e = 0; e < dim; ++e) {
                        Rat acc(0);
                        for (int d = 0; d < dim; ++d)
                            acc += c[d][a][b] * c[e][d][g] + c[d][b][g] * c[e][d][a] +
                                   c[d][g][a] * c[e][d][b];
                        if (acc != 0) return false;
                    }
        return true;
    }
};

inline StructureConstants builtin_algebra_sl2() {
    auto sc = StructureConstants::zeros("sl2", 3);
    sc.set(1, 0, 1, Rat(2));
    sc.set(2, 0, 2, Rat(-2));
    sc.set(0, 1, 2, Rat(1));
    return sc;
}

/// Coefficient systems for the invariant complexes, described uniformly by a
/// number of covector-argument slots (each contributing one tangent-valued
/// factor) and vector-argument slots (each contributing one covector-valued
/// factor).
struct CoefficientModule {
    enum class Kind { Trivial, Adjoint, Coadjoint, Tensor, Power };
    Kind kind = Kind::Trivial;
    int tensor_up = 0;
    int tensor_lo = 0;
    int power = 0;

    int cofiber_slots() const {
        switch (kind) {
            case Kind::Adjoint: return 1;
            case Kind::Tensor: return tensor_up;
            default: return 0;
        }
    }
    int vector_slots() const {
        switch (kind) {
            case Kind::Coadjoint: return 1;
            case Kind::Tensor: return tensor_lo;
            case Kind::Power: return power - 1;
            default: return 0;
        }
    }
    size_t dim_v(int n) const {
        size_t s = 1;
        for (int i = 0; i < cofiber_slots() + vector_slots(); ++i) s *= static_cast<size_t>(n);
        return s;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::Trivial: return "trivial";
            case Kind::Adjoint: return "adjoint";
            case Kind::Coadjoint: return "coadjoint";
            case Kind::Tensor:
                return "tensor:" + std::to_string(tensor_up) + "," + std::to_string(tensor_lo);
            case Kind::Power: return "power:" + std::to_string(power);
        }
        return "?";
    }

    static std::optional<CoefficientModule> parse(const std::string& s) {
        CoefficientModule m;
        if (s == "trivial") return m;
        if (s == "adjoint") {
            m.kind = Kind::Adjoint;
            return m;
        }
        if (s == "coadjoint") {
            m.kind = Kind::Coadjoint;
            return m;
        }
        if (s.rfind("tensor:", 0) == 0) {
            auto rest = s.substr(7);
            auto comma = rest.find(',');
            if (comma == std::string::npos) return std::nullopt;
            m.kind = Kind::Tensor;
            m.tensor_up = std::stoi(rest.substr(0, comma));
            m.tensor_lo = std::stoi(rest.substr(comma + 1));
            if (m.tensor_up < 0 || m.tensor_lo < 0 || m.tensor_up + m.tensor_lo > 3)
                return std::nullopt;
            return m;
        }
        if (s.rfind("power:", 0) == 0) {
            m.kind = Kind::Power;
            m.power = std::stoi(s.substr(6));
            if (m.power < 1 || m.power > 4) return std::nullopt;
            return m;
        }
        return std::nullopt;
    }
};

/// Action matrices of the basis elements on the module.  Basis of V is
/// indexed by the tangent-factor multi-index followed by the covector-factor
/// multi-index, row-major.  The tangent factor transforms by
/// Ad(i)[a][b] = c[a][i][b], the covector factor by Co(i)[b][a] = -c[a][i][b].
inline std::vector<QMatrix> module_actions(const StructureConstants& sc,
                                           const CoefficientModule& mod) {
    const int n = sc.dim;
    const int up = mod.cofiber_slots();
    const int lo = mod.vector_slots();
    const int L = up + lo;
    const size_t dv = mod.dim_v(n);

    std::vector<QMatrix> rho(static_cast<size_t>(n), QMatrix(dv, dv));
    if (L == 0) return rho;

    std::vector<std::vector<int>> idxs;
    {
        std::vector<int> cur(L, 0);
        while (true) {
            idxs.push_back(cur);
            int u = L - 1;
            while (u >= 0 && ++cur[u] == n) cur[u--] = 0;
            if (u < 0) break;
        }
    }
    auto flat = [&](const std::vector<int>& v) {
        size_t f = 0;
        for (int x : v) f = f * static_cast<size_t>(n) + static_cast<size_t>(x);
        return f;
    };

    for (int i = 0; i < n; ++i)
        for (const auto& out : idxs) {
            std::vector<int> in = out;
            for (int u = 0; u < L; ++u) {
                const int o = out[u];
                for (int b = 0; b < n; ++b) {
                    in[u] = b;
                    Rat entry = u < up ? sc.c[o][i][b] : -sc.c[b][i][o];
                    if (entry != 0) rho[static_cast<size_t>(i)].at(flat(out), flat(in)) += entry;
                }
                in[u] = o;
            }
        }
    return rho;
}

/// The coefficient complex of the algebra: spaces Lambda^k dual tensor V for
/// k = 0..n, with basis column index tuple_index * dimV + value_index, and
/// the alternating-sum differential
///   (d w)(x_{j0}..x_{jk}) = sum_p (-1)^p rho(x_{jp}) w(.. no jp ..)
///     + sum_{p<q} (-1)^{p+q} w([x_{jp}, x_{jq}], .. rest ..).
inline Complex algebra_complex(const StructureConstants& sc, const CoefficientModule& mod) {
    const int n = sc.dim;
    const size_t dv = mod.dim_v(n);
    auto rho = module_actions(sc, mod);

    Complex cx;
    for (int k = 0; k <= n; ++k) cx.space_dims.push_back(binom(n, k) * dv);

    for (int k = 0; k < n; ++k) {
        auto rows_t = k_tuples(n, k + 1);
        auto cols_t = k_tuples(n, k);
        auto col_of = tuple_index_map(cols_t);
        QMatrix d(rows_t.size() * dv, cols_t.size() * dv);

        for (size_t R = 0; R < rows_t.size(); ++R) {
            const auto& K = rows_t[R];
            for (size_t p = 0; p < K.size(); ++p) {
                auto J = tuple_without(K, p);
                const size_t cJ = col_of.at(J);
                const QMatrix& M = rho[static_cast<size_t>(K[p])];
                const int sgn = p % 2 == 0 ? 1 : -1;
                for (size_t w = 0; w < dv; ++w)
                    for (size_t v = 0; v < dv; ++v)
                        if (M.at(w, v) != 0) d.at(R * dv + w, cJ * dv + v) += sgn * M.at(w, v);
            }
            for (size_t p = 0; p + 1 < K.size(); ++p)
                for (size_t q = p + 1; q < K.size(); ++q) {
                    const int spq = (p + q) % 2 == 0 ? 1 : -1;
                    for (int a = 0; a < n; ++a) {
                        const Rat& cv = sc.c[a][K[p]][K[q]];
                        if (cv == 0) continue;
                        std::vector<int> rest;
                        for (size_t u = 0; u < K.size(); ++u)
                            if (u != p && u != q) rest.push_back(K[u]);
                        int isgn = sorted_insert_sign(rest, a);
                        if (isgn == 0) continue;
                        const size_t cJ = col_of.at(rest);
                        for (size_t v = 0; v < dv; ++v)
                            d.at(R * dv + v, cJ * dv + v) += spq * isgn * cv;
                    }
                }
        }
        cx.maps.push_back(std::move(d));
    }
    return cx;
}

}  // namespace llg
