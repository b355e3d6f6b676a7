#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ce.hpp"
#include "forms.hpp"
#include "group.hpp"
#include "splitting.hpp"
#include "toml_lite.hpp"

namespace llg {

/// What an input file or builtin name resolves to.  Exactly one of the three
/// members is set for algebra inputs and splitting-only inputs; group inputs
/// may carry nothing else (splittings are then derived from the law).
struct LoadedInput {
    std::string source;
    std::optional<GroupLaw> group;
    std::optional<Splitting> splitting;
    std::optional<StructureConstants> algebra;
};

namespace io_detail {

inline std::string strip_nonzero_suffix(const std::string& raw) {
    std::string s = toml::detail::strip(raw);
    std::size_t pos = s.rfind("!=");
    if (pos != std::string::npos) {
        std::string rhs = toml::detail::strip(s.substr(pos + 2));
        if (rhs != "0") throw ParseError("constraints must have the form 'expr != 0': " + raw);
        s = toml::detail::strip(s.substr(0, pos));
    }
    if (s.empty()) throw ParseError("empty constraint");
    return s;
}

inline std::vector<Expr> parse_all(const std::vector<std::string>& src, int dim) {
    std::vector<Expr> out;
    out.reserve(src.size());
    for (const auto& s : src) out.push_back(parse(s, dim));
    return out;
}

inline int need_dim(const toml::Table& t, const char* what) {
    const toml::Value& v = t.need("dim", what);
    if (v.kind != toml::Value::Kind::Int || v.num < 1 || v.num > 16)
        throw ParseError(std::string(what) + ": dim must be a small positive integer");
    return static_cast<int>(v.num);
}

inline std::vector<std::string> need_strings(const toml::Table& t, const std::string& key,
                                             const char* what, std::size_t count) {
    const toml::Value& v = t.need(key, what);
    if (v.kind != toml::Value::Kind::Array)
        throw ParseError(std::string(what) + ": '" + key + "' must be an array");
    if (count != 0 && v.arr.size() != count) {
        std::ostringstream msg;
        msg << what << ": '" << key << "' needs " << count << " entries, got " << v.arr.size();
        throw ParseError(msg.str());
    }
    return v.arr;
}

}  // namespace io_detail

inline GroupLaw group_from_toml(const toml::Document& doc) {
    const toml::Table* t = doc.section("group");
    if (!t) throw ParseError("input file has no [group] section");
    GroupLaw g;
    g.dim = io_detail::need_dim(*t, "[group]");
    if (const toml::Value* v = t->find("name"); v && v->kind == toml::Value::Kind::Str)
        g.name = v->str;
    else
        g.name = "group";
    std::size_t n = static_cast<std::size_t>(g.dim);
    if (const toml::Value* v = t->find("variables")) {
        if (v->kind != toml::Value::Kind::Array || v->arr.size() != n)
            throw ParseError("[group]: 'variables' must list one name per dimension");
    }
    g.mult = io_detail::parse_all(io_detail::need_strings(*t, "multiplication", "[group]", n), g.dim);
    g.inverse = io_detail::parse_all(io_detail::need_strings(*t, "inverse", "[group]", n), g.dim);
    for (const auto& s : io_detail::need_strings(*t, "identity", "[group]", n)) {
        Expr e = parse(s, g.dim);
        std::set<VarRef> used;
        collect_vars(e, used);
        if (!used.empty()) throw ParseError("[group]: identity entries must be constant");
        g.identity.push_back(eval_exact(e, {}));
    }
    if (t->find("constraints"))
        for (const auto& s : io_detail::need_strings(*t, "constraints", "[group]", 0))
            g.constraints.push_back(parse(io_detail::strip_nonzero_suffix(s), g.dim));
    return g;
}

inline Splitting splitting_from_toml(const toml::Document& doc) {
    const toml::Table* t = doc.section("splitting");
    if (!t) throw ParseError("input file has no [splitting] section");
    Splitting s;
    s.variant = Variant::Tilde;
    s.dim = io_detail::need_dim(*t, "[splitting]");
    std::size_t n = static_cast<std::size_t>(s.dim);
    auto flat = io_detail::need_strings(*t, "epsilon", "[splitting]", n * n);
    s.eps.assign(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.eps[i][j] = parse(flat[i * n + j], s.dim);
    if (t->find("constraints"))
        for (const auto& c : io_detail::need_strings(*t, "constraints", "[splitting]", 0))
            s.chart_constraints.push_back(parse(io_detail::strip_nonzero_suffix(c), s.dim));
    return s;
}

inline StructureConstants algebra_from_toml(const toml::Document& doc) {
    const toml::Table* t = doc.section("algebra");
    if (!t) throw ParseError("input file has no [algebra] section");
    int dim = io_detail::need_dim(*t, "[algebra]");
    std::string name = "algebra";
    if (const toml::Value* v = t->find("name"); v && v->kind == toml::Value::Kind::Str)
        name = v->str;
    auto sc = StructureConstants::zeros(name, dim);
    for (const auto& line : io_detail::need_strings(*t, "brackets", "[algebra]", 0)) {
        std::istringstream in(line);
        int i = 0, j = 0, k = 0;
        std::string coeff;
        if (!(in >> i >> j >> k >> coeff))
            throw ParseError("[algebra]: bracket entries are 'i j k coeff': " + line);
        std::string rest;
        if (in >> rest) throw ParseError("[algebra]: trailing text in bracket entry: " + line);
        if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
            throw ParseError("[algebra]: bracket indices out of range: " + line);
        if (i == j) throw ParseError("[algebra]: bracket of a basis field with itself: " + line);
        sc.set(k - 1, i - 1, j - 1, parse_rat(coeff));
    }
    if (!sc.jacobi()) throw ParseError("[algebra]: brackets violate the Jacobi identity");
    return sc;
}

/// Reads a form file.  Components live in a [components] section whose keys
/// are comma-separated ascending 1-based point indices ("" for degree zero);
/// fiber and cofiber slot counts are inferred from the variables used.
inline HorizontalForm form_from_toml(const toml::Document& doc, int dim) {
    const toml::Table* t = doc.section("form");
    if (!t) throw ParseError("form file has no [form] section");
    int copies = 1;
    if (const toml::Value* v = t->find("copies")) {
        if (v->kind != toml::Value::Kind::Int || v->num < 1 || v->num > 4)
            throw ParseError("[form]: copies must be between 1 and 4");
        copies = static_cast<int>(v->num);
    }
    const toml::Value& deg = t->need("degree", "[form]");
    if (deg.kind != toml::Value::Kind::Int || deg.num < 0 || deg.num > dim)
        throw ParseError("[form]: degree must be between 0 and dim");
    int degree = static_cast<int>(deg.num);

    const toml::Table* comps = doc.section("components");
    if (!comps) throw ParseError("form file has no [components] section");

    HorizontalForm f = HorizontalForm::zeros(dim, copies, 0, 0, degree);
    int vslots = 0, cslots = 0;
    for (const auto& [key, val] : comps->items) {
        if (val.kind != toml::Value::Kind::Str)
            throw ParseError("[components]: values must be expression strings");
        std::vector<int> tuple;
        std::istringstream in(key);
        std::string piece;
        while (std::getline(in, piece, ',')) {
            piece = toml::detail::strip(piece);
            if (piece.empty()) continue;
            int idx = 0;
            try {
                idx = std::stoi(piece);
            } catch (const std::exception&) {
                throw ParseError("[components]: bad index tuple '" + key + "'");
            }
            if (idx < 1 || idx > dim)
                throw ParseError("[components]: index out of range in '" + key + "'");
            tuple.push_back(idx - 1);
        }
        if (static_cast<int>(tuple.size()) != degree)
            throw ParseError("[components]: tuple '" + key + "' does not match the degree");
        for (std::size_t u = 1; u < tuple.size(); ++u)
            if (tuple[u - 1] >= tuple[u])
                throw ParseError("[components]: indices must be strictly increasing in '" + key + "'");
        Expr e = parse(val.str, dim);
        std::set<VarRef> used;
        collect_vars(e, used);
        for (const VarRef& v : used) {
            if (v.block == Block::Point && v.copy >= copies)
                throw ParseError("[components]: point copy out of range in '" + key + "'");
            if (v.block == Block::Fiber) vslots = std::max(vslots, v.copy + 1);
            if (v.block == Block::CoFiber) cslots = std::max(cslots, v.copy + 1);
        }
        f.at(tuple) = add(f.at(tuple), e);
    }
    if (vslots || cslots) {
        HorizontalForm g = HorizontalForm::zeros(dim, copies, vslots, cslots, degree);
        g.comp = f.comp;
        return g;
    }
    return f;
}

/// Resolves a builtin name: group laws, or bare structure constants.
inline LoadedInput load_builtin(const std::string& name) {
    LoadedInput in;
    in.source = "builtin:" + name;
    if (name == "sl2-constants") {
        in.algebra = builtin_algebra_sl2();
        return in;
    }
    if (auto g = builtin_group(name)) {
        in.group = *g;
        return in;
    }
    throw ParseError("unknown builtin '" + name +
                     "' (available: abelian:n, heisenberg3, affine2, uppertriangular3, sl2-constants)");
}

inline LoadedInput load_input_file(const std::string& path) {
    toml::Document doc = toml::load_toml_file(path);
    LoadedInput in;
    in.source = "file:" + path;
    if (doc.section("group")) in.group = group_from_toml(doc);
    if (doc.section("splitting")) in.splitting = splitting_from_toml(doc);
    if (doc.section("algebra")) in.algebra = algebra_from_toml(doc);
    if (!in.group && !in.splitting && !in.algebra)
        throw ParseError("input file needs a [group], [splitting] or [algebra] section");
    return in;
}

/// Parses a coefficient module name: trivial, adjoint, coadjoint,
/// tensor:R,S or power:M.
inline CoefficientModule module_from_name(const std::string& name) {
    CoefficientModule m;
    if (name == "trivial") return m;
    if (name == "adjoint") {
        m.kind = CoefficientModule::Kind::Adjoint;
        return m;
    }
    if (name == "coadjoint") {
        m.kind = CoefficientModule::Kind::Coadjoint;
        return m;
    }
    auto num_after = [&](std::size_t pos, const char* what) {
        std::string s = name.substr(pos);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ParseError(std::string("bad ") + what + " in module name: " + name);
        }
        if (used != s.size() && s[used] != ',')
            throw ParseError(std::string("bad ") + what + " in module name: " + name);
        return std::pair<int, std::size_t>(v, pos + used);
    };
    if (name.rfind("tensor:", 0) == 0) {
        auto [up, next] = num_after(7, "tensor rank");
        if (next >= name.size() || name[next] != ',')
            throw ParseError("tensor modules are 'tensor:R,S': " + name);
        auto [lo, end] = num_after(next + 1, "tensor rank");
        if (end != name.size() || up < 0 || lo < 0 || up + lo == 0 || up + lo > 3)
            throw ParseError("tensor ranks must be small and not both zero: " + name);
        m.kind = CoefficientModule::Kind::Tensor;
        m.tensor_up = up;
        m.tensor_lo = lo;
        return m;
    }
    if (name.rfind("power:", 0) == 0) {
        auto [p, end] = num_after(6, "power");
        if (end != name.size() || p < 1 || p > 4) throw ParseError("power must be 1..4: " + name);
        m.kind = CoefficientModule::Kind::Power;
        m.power = p;
        return m;
    }
    throw ParseError("unknown coefficient module '" + name +
                     "' (available: trivial, adjoint, coadjoint, tensor:R,S, power:M)");
}

inline std::string module_name(const CoefficientModule& m) {
    switch (m.kind) {
        case CoefficientModule::Kind::Trivial: return "trivial";
        case CoefficientModule::Kind::Adjoint: return "adjoint";
        case CoefficientModule::Kind::Coadjoint: return "coadjoint";
        case CoefficientModule::Kind::Tensor:
            return "tensor:" + std::to_string(m.tensor_up) + "," + std::to_string(m.tensor_lo);
        case CoefficientModule::Kind::Power: return "power:" + std::to_string(m.power);
    }
    return "trivial";
}

/// True when any expression in the input uses a transcendental function.
inline bool input_has_transcendental(const LoadedInput& in) {
    auto any = [](const std::vector<Expr>& es) {
        for (const auto& e : es)
            if (has_transcendental(e)) return true;
        return false;
    };
    if (in.group && (any(in.group->mult) || any(in.group->inverse) || any(in.group->constraints)))
        return true;
    if (in.splitting) {
        for (const auto& row : in.splitting->eps)
            if (any(row)) return true;
        if (any(in.splitting->chart_constraints)) return true;
    }
    return false;
}

}  // namespace llg
